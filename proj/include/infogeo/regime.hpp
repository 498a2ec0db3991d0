#pragma once

#include <functional>
#include <string>

#include "infogeo/hypergraph.hpp"
#include "infogeo/spectral.hpp"

namespace infogeo {

/// Which loss Hessian the flow sees: H = I or H = F.
enum class HessianMode { Isotropic, Fisher };

/// Convergence-time functional T(c) of the combined metric g(c) = F^2 + cF.
///
/// With mu_k = lambda_k (lambda_k + c):
///   A    (mu_max / mu_min) mu_max
///   B    mu_max / mu_min
///   C    mu_max
///   D    mu_max / sqrt(mu_min)
///   W(w) (mu_max / mu_min)^w mu_max      (A is W(1))
/// Under HessianMode::Fisher every mu_k is replaced by mu_k / lambda_k =
/// lambda_k + c, the inverse rates of g^{-1} F.
struct ConvergenceModel {
  enum class Kind { A, B, C, D, W };

  Kind kind = Kind::A;
  double w = 1.0;
  HessianMode hessian = HessianMode::Isotropic;

  static ConvergenceModel a(HessianMode h = HessianMode::Isotropic) { return {Kind::A, 1.0, h}; }
  static ConvergenceModel b(HessianMode h = HessianMode::Isotropic) { return {Kind::B, 1.0, h}; }
  static ConvergenceModel c(HessianMode h = HessianMode::Isotropic) { return {Kind::C, 1.0, h}; }
  static ConvergenceModel d(HessianMode h = HessianMode::Isotropic) { return {Kind::D, 1.0, h}; }
  /// Throws DomainError unless w > 0.
  static ConvergenceModel weighted(double w, HessianMode h = HessianMode::Isotropic);

  /// Parses "A", "B", "C", "D" or "W" (the latter taking `w`).
  static ConvergenceModel parse(const std::string& name, double w = 1.0,
                                HessianMode h = HessianMode::Isotropic);
  /// "A", "B", "C", "D" or "W(2)".
  std::string name() const;
};

/// Shift c = alpha^2 / (1 - alpha) for alpha in [0, 1).
double beta_of_alpha(double alpha);

/// Inverse of beta_of_alpha: (-c + sqrt(c (c + 4))) / 2.
double alpha_of_c(double c);

/// max(0, w lambda_max - (w + 1) lambda_min); zero iff kappa <= (w + 1) / w.
/// Throws DegeneracyError for a singular spectrum, DomainError for w <= 0.
double c_star(const Spectrum& spectrum, double w = 1.0);

/// lambda_max - 2 lambda_min.
double gap(const Spectrum& spectrum);

/// T(c) for the given model. Throws DomainError for c < 0.
double convergence_time(const Spectrum& spectrum, double c, const ConvergenceModel& model);

/// Closed-form minimiser of T over c >= 0. Models A, W and D share the
/// stationarity condition of their w; B is minimised as c -> infinity
/// whenever kappa > 1 (reported as +inf), C at c = 0.
double predicted_c(const Spectrum& spectrum, const ConvergenceModel& model);

/// Lower and upper end of the alpha search interval.
inline constexpr double kAlphaMin = 0.0;
inline constexpr double kAlphaMax = 0.999;

/// alpha_of_c(predicted_c) clamped to the search interval.
double predicted_alpha(const Spectrum& spectrum, const ConvergenceModel& model);

struct AlphaOptimum {
  double alpha = 0.0;
  double t_min = 0.0;
  bool at_boundary = false;
};

/// Minimises f on [lo, hi] by golden-section search until the bracket is
/// narrower than `tol`. Returns the best point visited.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

/// Minimises T(beta_of_alpha(alpha)) on [0, 0.999]: 1000-point grid, then
/// golden-section refinement around the best grid point to 1e-6 in alpha.
/// If an endpoint is at least as good as the refined point the endpoint is
/// returned and `at_boundary` is set.
AlphaOptimum minimize_alpha_numeric(const Spectrum& spectrum, const ConvergenceModel& model);

/// T_A(0) / T_A(c*) = kappa^2 / (4 (kappa - 1)). Throws DomainError when
/// kappa <= 2 (no interior optimum).
double speedup_at_optimum(const Spectrum& spectrum);

/// Regime analysis of one observer at one uniform coupling.
struct RegimeAnalysis {
  TopologyId topology;
  double coupling = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double cond_f = 0.0;
  double gap = 0.0;
  double c_star = 0.0;
  double alpha_pred = 0.0;
  double alpha_num = 0.0;
  double abs_err = 0.0;
  double speedup = 1.0;  // T(0) / T(c_pred) under the chosen model
  bool boundary_flag = false;

  friend bool operator==(const RegimeAnalysis&, const RegimeAnalysis&) = default;
};

RegimeAnalysis analyze_regime(const TopologyId& topology, double coupling, const Spectrum& spectrum,
                              const ConvergenceModel& model = ConvergenceModel::a());

/// Builds the uniform-coupling model, its Fisher matrix and spectrum.
Spectrum fisher_spectrum(const TopologyId& topology, double coupling);

}  // namespace infogeo
