#include "infogeo/directional.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "infogeo/errors.hpp"

namespace infogeo {

std::string_view to_string(DirectionClass c) {
  switch (c) {
    case DirectionClass::UnderMassive: return "under-massive";
    case DirectionClass::Balanced: return "balanced";
    case DirectionClass::OverMassive: return "over-massive";
  }
  return "?";
}

double directional_alpha(double lambda, double beta) {
  if (!(lambda > 0.0) || !(beta > 0.0))
    throw DomainError(fmt::format("directional alpha needs lambda > 0 and beta > 0 (got {}, {})",
                                  lambda, beta));
  return lambda / (lambda + beta);
}

double alpha_spread(const Spectrum& spectrum, double beta) {
  if (!(beta > 0.0)) throw DomainError(fmt::format("beta = {} must be > 0", beta));
  const double lo = spectrum.min(), hi = spectrum.max();
  if (!(lo > 0.0)) throw DegeneracyError("alpha spread needs a positive-definite spectrum");
  return beta * (hi - lo) / ((hi + beta) * (lo + beta));
}

namespace {

DirectionClass sign_class(double x, double tol) {
  if (x > tol) return DirectionClass::OverMassive;
  if (x < -tol) return DirectionClass::UnderMassive;
  return DirectionClass::Balanced;
}

void check_pair(const Matrix& f, const Matrix& m) {
  if (f.rows() != f.cols() || m.rows() != m.cols() || f.rows() != m.rows())
    throw DomainError(fmt::format("deviation tensor: F is {}x{}, M is {}x{}", f.rows(), f.cols(),
                                  m.rows(), m.cols()));
  if (!(f.trace() > 0.0)) throw DomainError("deviation tensor needs tr F > 0");
}

}  // namespace

DeviationResult deviation_tensor(const Matrix& f, const Matrix& m, double beta) {
  check_pair(f, m);
  if (!(beta > 0.0)) throw DomainError(fmt::format("beta = {} must be > 0", beta));

  const Spectrum eig = eig_sym(f);
  if (!(eig.min() > 0.0)) throw DegeneracyError("deviation tensor needs F positive definite");

  DeviationResult out;
  auto& r = out.report;
  r.beta = beta;
  r.lambda = eig.eigenvalues;
  r.trace_ratio = m.trace() / f.trace();
  out.tensor = m - r.trace_ratio * f;

  const auto d = eig.eigenvalues.size();
  r.alpha_dir.resize(d);
  r.deviation_eigs.resize(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    r.alpha_dir(k) = directional_alpha(eig.eigenvalues(k), beta);
    const auto v = eig.eigenvectors.col(k);
    r.deviation_eigs(k) = v.dot(out.tensor * v);
  }
  r.alpha_mean = r.trace_ratio / (r.trace_ratio + beta);
  r.alpha_spread = alpha_spread(eig, beta);
  r.m_norm = frobenius(m);
  r.deviation_fraction = r.m_norm > 0.0 ? frobenius(out.tensor) / r.m_norm : 0.0;
  r.multiplets = multiplets(eig);
  r.classification = classify_directions(r);
  return out;
}

DeviationResult deviation_tensor(const Matrix& f, double beta) { return deviation_tensor(f, f * f, beta); }

std::vector<DirectionClass> classify_directions(const DeviationReport& report) {
  const double largest = report.deviation_eigs.size() ? report.deviation_eigs.cwiseAbs().maxCoeff() : 0.0;
  const double tol = 1e-10 * std::max(largest, report.m_norm);
  std::vector<DirectionClass> out;
  for (Eigen::Index k = 0; k < report.deviation_eigs.size(); ++k)
    out.push_back(sign_class(report.deviation_eigs(k), tol));
  return out;
}

std::vector<DirectionClass> classify_by_alpha(const DeviationReport& report) {
  std::vector<DirectionClass> out;
  for (Eigen::Index k = 0; k < report.alpha_dir.size(); ++k)
    out.push_back(sign_class(report.alpha_dir(k) - report.alpha_mean, 1e-10));
  return out;
}

double deviation_fraction_spectral(const Matrix& f, const Matrix& m) {
  check_pair(f, m);
  const Matrix delta = m - (m.trace() / f.trace()) * f;
  const double m_norm = eig_sym(m).eigenvalues.norm();
  return m_norm > 0.0 ? eig_sym(delta).eigenvalues.norm() / m_norm : 0.0;
}

}  // namespace infogeo
