#pragma once

#include <string_view>
#include <vector>

#include "infogeo/spectral.hpp"

namespace infogeo {

enum class DirectionClass { UnderMassive, Balanced, OverMassive };

std::string_view to_string(DirectionClass c);

/// Per-eigendirection regime structure of an observer.
///
/// All per-direction vectors follow the ascending order of the Fisher
/// eigenvalues. `trace_ratio` is tr(M) / tr(F).
struct DeviationReport {
  double beta = 0.0;
  Vector lambda;
  Vector alpha_dir;
  double alpha_mean = 0.0;
  double alpha_spread = 0.0;
  double trace_ratio = 0.0;
  /// v_k^T (M - trace_ratio F) v_k; for M = F^2 this is lambda_k (lambda_k - trace_ratio).
  Vector deviation_eigs;
  /// ||M - trace_ratio F||_F / ||M||_F.
  double deviation_fraction = 0.0;
  /// Scale used by the balanced band of the classification.
  double m_norm = 0.0;
  std::vector<DirectionClass> classification;
  std::vector<Multiplet> multiplets;
};

struct DeviationResult {
  Matrix tensor;
  DeviationReport report;
};

/// lambda / (lambda + beta). Throws DomainError unless both are > 0.
double directional_alpha(double lambda, double beta);

/// beta (l_max - l_min) / ((l_max + beta)(l_min + beta)).
double alpha_spread(const Spectrum& spectrum, double beta);

/// M - (tr M / tr F) F together with its report.
///
/// Throws DomainError on dimension mismatch, tr F <= 0 or beta <= 0.
DeviationResult deviation_tensor(const Matrix& f, const Matrix& m, double beta);

/// Same with the default mass tensor M = F^2.
DeviationResult deviation_tensor(const Matrix& f, double beta);

/// Sign of deviation_eigs with a balanced band of 1e-10 max(max|delta_k|, ||M||_F).
std::vector<DirectionClass> classify_directions(const DeviationReport& report);

/// The same labels read off sign(alpha_dir_k - alpha_mean), band 1e-10.
std::vector<DirectionClass> classify_by_alpha(const DeviationReport& report);

/// Deviation fraction computed from the eigenvalues of Delta and M.
double deviation_fraction_spectral(const Matrix& f, const Matrix& m);

}  // namespace infogeo
