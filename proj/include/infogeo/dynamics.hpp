#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Cholesky>

#include "infogeo/spectral.hpp"

namespace infogeo {

/// L(theta) = 1/2 (theta - target)^T H (theta - target), started at `start`.
struct QuadraticProblem {
  Matrix hessian;
  Vector target;
  Vector start;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(target.size()); }
  double loss(const Vector& theta) const;
  Vector gradient(const Vector& theta) const;
};

/// Preconditioner of a gradient flow: the identity (ordinary gradient) or a
/// symmetric positive-definite matrix applied through its Cholesky factor.
class Metric {
 public:
  static Metric identity() { return Metric(); }
  /// Throws DegeneracyError unless `g` is positive definite.
  explicit Metric(const Matrix& g);

  bool is_identity() const noexcept { return !factor_.has_value(); }
  /// g^{-1} v.
  Vector apply_inverse(const Vector& v) const;

 private:
  Metric() = default;
  std::optional<Eigen::LLT<Matrix>> factor_;
};

/// One explicit-Euler step theta - eta g^{-1} H (theta - target).
Vector gradient_step(const Vector& theta, const QuadraticProblem& problem, const Metric& metric,
                     double eta);

struct FlowOptions {
  double tol = 1e-6;                 // relative to ||start - target||
  std::size_t max_iter = 1'000'000;
  bool keep_iterates = true;
};

struct FlowTrace {
  std::vector<Vector> iterates;  // includes the start; empty unless keep_iterates
  double step_size = 0.0;
  std::size_t iterations_to_tol = 0;
  bool converged = false;
  double final_distance = 0.0;
};

/// Iterates gradient_step until ||theta_t - target|| <= tol ||start - target||.
///
/// Throws InstabilityError when the distance grows for 10 consecutive steps
/// or becomes non-finite.
FlowTrace run_flow(const QuadraticProblem& problem, const Metric& metric, double eta,
                   const FlowOptions& options = {});

struct ReparamDeviation {
  double natural = 0.0;   // max_t ||phi_t - A theta_t|| with metric F
  double ordinary = 0.0;  // same with the identity metric (negative control)
  double ordinary_step = 0.0;
};

/// Runs the flow in theta and in phi = A theta (metric A^{-T} F A^{-1},
/// loss L(A^{-1} phi)) for `steps` steps and reports the largest gap
/// between phi_t and A theta_t.
///
/// The ordinary-gradient control uses min(eta, 1/rho(H), 1/rho(A^{-T} H A^{-1}))
/// so that both coordinate systems stay stable. Throws DegeneracyError for
/// singular A and DomainError when cond(A) > 1e3.
ReparamDeviation reparam_invariance_check(const QuadraticProblem& problem, const Matrix& fisher,
                                          const Matrix& a, std::size_t steps, double eta);

/// Unit vector along (1, ..., 1).
Vector uniform_direction(std::size_t dim);

enum class EtaPolicy { Fixed, Normalized };

struct CurvePoint {
  double alpha = 0.0;
  double c = 0.0;
  double eta = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct EmpiricalAlpha {
  double alpha_at_min = 0.0;
  std::size_t iterations_at_min = 0;
  std::vector<CurvePoint> curve;
};

/// Measures iterations-to-tolerance of the flow with metric g(beta_of_alpha(alpha))
/// and H = I on the Fisher matrix rebuilt from `spectrum`, for each grid alpha.
///
/// Normalized: eta = 1 / rho(g^{-1}) = mu_min(g) per alpha. Fixed: the
/// smallest of those over the grid, shared by every alpha. The start is
/// target + uniform_direction. Throws DomainError on an empty grid or a
/// grid value outside [0, 0.999].
EmpiricalAlpha empirical_alpha(const Spectrum& spectrum, EtaPolicy policy,
                               const std::vector<double>& alpha_grid, const FlowOptions& options = {});

/// Smallest t with (1 - mu_min / mu_max)^t <= tol: the slowest-mode
/// iteration count of the normalized flow.
std::size_t slowest_mode_iterations(double mu_min, double mu_max, double tol);

}  // namespace infogeo
