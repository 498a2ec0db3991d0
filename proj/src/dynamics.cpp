#include "infogeo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "infogeo/errors.hpp"
#include "infogeo/regime.hpp"

namespace infogeo {

double QuadraticProblem::loss(const Vector& theta) const {
  const Vector e = theta - target;
  return 0.5 * e.dot(hessian * e);
}

Vector QuadraticProblem::gradient(const Vector& theta) const { return hessian * (theta - target); }

Metric::Metric(const Matrix& g) {
  if (g.rows() != g.cols()) throw DomainError("metric must be square");
  factor_.emplace(g);
  if (factor_->info() != Eigen::Success) throw DegeneracyError("metric is not positive definite");
}

Vector Metric::apply_inverse(const Vector& v) const { return factor_ ? Vector(factor_->solve(v)) : v; }

Vector gradient_step(const Vector& theta, const QuadraticProblem& problem, const Metric& metric,
                     double eta) {
  if (!(eta > 0.0)) throw DomainError(fmt::format("step size {} must be > 0", eta));
  if (static_cast<std::size_t>(theta.size()) != problem.dim() ||
      static_cast<std::size_t>(problem.hessian.rows()) != problem.dim())
    throw DomainError("gradient step: dimension mismatch");
  return theta - eta * metric.apply_inverse(problem.gradient(theta));
}

FlowTrace run_flow(const QuadraticProblem& problem, const Metric& metric, double eta,
                   const FlowOptions& options) {
  if (!(options.tol > 0.0 && options.tol < 1.0))
    throw DomainError(fmt::format("flow tolerance {} outside (0, 1)", options.tol));
  FlowTrace trace;
  trace.step_size = eta;
  Vector theta = problem.start;
  if (options.keep_iterates) trace.iterates.push_back(theta);

  const double initial = (theta - problem.target).norm();
  const double stop = options.tol * initial;
  double distance = initial;
  int growth = 0;
  while (distance > stop && trace.iterations_to_tol < options.max_iter) {
    theta = gradient_step(theta, problem, metric, eta);
    ++trace.iterations_to_tol;
    const double next = (theta - problem.target).norm();
    if (!std::isfinite(next))
      throw InstabilityError(fmt::format("flow diverged at step {}", trace.iterations_to_tol));
    growth = next > distance ? growth + 1 : 0;
    if (growth >= 10)
      throw InstabilityError(fmt::format("distance grew for 10 consecutive steps (step {}, eta {})",
                                         trace.iterations_to_tol, eta));
    distance = next;
    if (options.keep_iterates) trace.iterates.push_back(theta);
  }
  trace.converged = distance <= stop;
  trace.final_distance = distance;
  return trace;
}

namespace {

double spectral_radius_sym(const Matrix& m) {
  const auto s = eig_sym(m);
  return std::max(std::abs(s.min()), std::abs(s.max()));
}

}  // namespace

ReparamDeviation reparam_invariance_check(const QuadraticProblem& problem, const Matrix& fisher,
                                          const Matrix& a, std::size_t steps, double eta) {
  const auto d = static_cast<Eigen::Index>(problem.dim());
  if (a.rows() != d || a.cols() != d || fisher.rows() != d)
    throw DomainError("reparameterisation check: dimension mismatch");
  const Eigen::JacobiSVD<Matrix> svd(a);
  const auto sv = svd.singularValues();
  if (!(sv(d - 1) > 1e-14 * sv(0))) throw DegeneracyError("reparameterisation matrix is singular");
  const double cond_a = sv(0) / sv(d - 1);
  if (cond_a > 1e3)
    throw DomainError(fmt::format("reparameterisation condition number {} exceeds 1e3", cond_a));

  const Eigen::PartialPivLU<Matrix> lu(a);
  const Eigen::PartialPivLU<Matrix> lu_t(a.transpose());
  // A^{-T} X A^{-1} without forming A^{-1}.
  auto pull_back = [&](const Matrix& x) -> Matrix {
    const Matrix left = lu_t.solve(x);
    return Matrix(lu_t.solve(left.transpose())).transpose();
  };
  const Matrix fisher_phi = pull_back(fisher);
  const Matrix hessian_phi = pull_back(problem.hessian);

  // Same loss expressed in phi: target A theta*, Hessian A^{-T} H A^{-1}.
  const QuadraticProblem phi_problem{hessian_phi, a * problem.target, a * problem.start};

  auto max_gap = [&](const Metric& m_theta, const Metric& m_phi, double step) {
    Vector theta = problem.start;
    Vector phi = phi_problem.start;
    double worst = (phi - a * theta).norm();
    for (std::size_t t = 0; t < steps; ++t) {
      theta = gradient_step(theta, problem, m_theta, step);
      phi = gradient_step(phi, phi_problem, m_phi, step);
      worst = std::max(worst, (phi - a * theta).norm());
    }
    return worst;
  };

  ReparamDeviation out;
  out.natural = max_gap(Metric(fisher), Metric(fisher_phi), eta);
  out.ordinary_step = std::min({eta, 1.0 / spectral_radius_sym(problem.hessian),
                                1.0 / spectral_radius_sym(hessian_phi)});
  out.ordinary = max_gap(Metric::identity(), Metric::identity(), out.ordinary_step);
  return out;
}

Vector uniform_direction(std::size_t dim) {
  return Vector::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(static_cast<double>(dim)));
}

std::size_t slowest_mode_iterations(double mu_min, double mu_max, double tol) {
  const double rate = 1.0 - mu_min / mu_max;
  if (rate <= 0.0) return 1;
  return static_cast<std::size_t>(std::ceil(std::log(tol) / std::log(rate)));
}

EmpiricalAlpha empirical_alpha(const Spectrum& spectrum, EtaPolicy policy,
                               const std::vector<double>& alpha_grid, const FlowOptions& options) {
  if (alpha_grid.empty()) throw DomainError("empirical alpha needs a non-empty grid");
  for (double a : alpha_grid)
    if (!(a >= kAlphaMin && a <= kAlphaMax))
      throw DomainError(fmt::format("grid value {} outside [0, 0.999]", a));
  if (!(spectrum.min() > 0.0)) throw DegeneracyError("empirical alpha needs a positive-definite spectrum");

  const Matrix f = spectrum.reconstruct();
  const auto dim = spectrum.dim();
  const QuadraticProblem problem{Matrix::Identity(f.rows(), f.cols()), Vector::Zero(f.rows()),
                                 uniform_direction(dim)};

  EmpiricalAlpha out;
  double fixed_eta = std::numeric_limits<double>::infinity();
  for (double alpha : alpha_grid) {
    CurvePoint p;
    p.alpha = alpha;
    p.c = beta_of_alpha(alpha);
    // mu_min(g(c)) = lambda_min (lambda_min + c) since c >= 0.
    p.eta = spectrum.min() * (spectrum.min() + p.c);
    fixed_eta = std::min(fixed_eta, p.eta);
    out.curve.push_back(p);
  }

  FlowOptions run = options;
  run.keep_iterates = false;
  for (auto& p : out.curve) {
    if (policy == EtaPolicy::Fixed) p.eta = fixed_eta;
    const auto trace = run_flow(problem, Metric(combined_metric(f, p.c)), p.eta, run);
    p.iterations = trace.iterations_to_tol;
    p.converged = trace.converged;
  }

  const auto best = std::min_element(out.curve.begin(), out.curve.end(),
                                     [](const CurvePoint& x, const CurvePoint& y) {
                                       return x.iterations < y.iterations;
                                     });
  out.alpha_at_min = best->alpha;
  out.iterations_at_min = best->iterations;
  return out;
}

}  // namespace infogeo
