#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace infogeo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigen-decomposition of a real symmetric matrix.
///
/// Eigenvalues are sorted ascending; column k of `eigenvectors` is the unit
/// eigenvector for `eigenvalues[k]`.
struct Spectrum {
  Vector eigenvalues;
  Matrix eigenvectors;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
  /// V diag(lambda) V^T.
  Matrix reconstruct() const;
};

/// Group of (numerically) equal eigenvalues: indices [first, first + size).
struct Multiplet {
  std::size_t first;
  std::size_t size;
  double value;
};

/// Full spectrum by cyclic Jacobi rotations.
///
/// Throws DomainError when `a` is not square or not symmetric to 1e-10
/// relative, NumericError if 100 sweeps do not bring the off-diagonal mass
/// below 1e-14 ||a||_F.
Spectrum eig_sym(const Matrix& a);

/// Builds a spectrum directly from eigenvalues (eigenvectors = identity).
Spectrum diagonal_spectrum(const std::vector<double>& eigenvalues);

/// lambda_max / lambda_min. Throws DegeneracyError unless
/// lambda_min > 1e-10 lambda_max.
double cond(const Spectrum& s);

/// F F + c F. Throws DomainError for c < 0.
Matrix combined_metric(const Matrix& f, double c);

double frobenius(const Matrix& a);

/// Consecutive eigenvalues within 1e-9 lambda_max of each other.
std::vector<Multiplet> multiplets(const Spectrum& s);

}  // namespace infogeo
