#include "infogeo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "infogeo/errors.hpp"

namespace infogeo {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

Matrix Spectrum::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
}

Spectrum eig_sym(const Matrix& input) {
  if (input.rows() != input.cols()) throw DomainError("eig_sym needs a square matrix");
  const Eigen::Index n = input.rows();
  const double scale = frobenius(input);
  if (frobenius(input - input.transpose()) > 1e-10 * std::max(scale, 1e-300) && scale > 0)
    throw DomainError("eig_sym input is not symmetric");

  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double target = 1e-14 * scale;

  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (++sweep > kMaxSweeps)
      throw NumericError(fmt::format("Jacobi did not converge in {} sweeps", kMaxSweeps));
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that zeroes a(p,q); t is the smaller root of
        // t^2 + 2 theta t - 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  Spectrum out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src);
    out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

Spectrum diagonal_spectrum(const std::vector<double>& eigenvalues) {
  std::vector<double> sorted = eigenvalues;
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<Eigen::Index>(sorted.size());
  Spectrum s{Vector(n), Matrix::Identity(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) s.eigenvalues(k) = sorted[static_cast<std::size_t>(k)];
  return s;
}

double cond(const Spectrum& s) {
  if (s.dim() == 0) throw DegeneracyError("condition number of an empty spectrum");
  if (!(s.min() > 1e-10 * s.max()))
    throw DegeneracyError(
        fmt::format("spectrum is singular (lambda_min {}, lambda_max {})", s.min(), s.max()));
  return s.max() / s.min();
}

Matrix combined_metric(const Matrix& f, double c) {
  if (!(c >= 0.0)) throw DomainError(fmt::format("metric shift c = {} must be >= 0", c));
  return f * f + c * f;
}

double frobenius(const Matrix& a) { return a.norm(); }

std::vector<Multiplet> multiplets(const Spectrum& s) {
  std::vector<Multiplet> out;
  if (s.dim() == 0) return out;
  const double tol = 1e-9 * std::abs(s.max());
  std::size_t first = 0;
  for (std::size_t k = 1; k <= s.dim(); ++k) {
    const auto ik = static_cast<Eigen::Index>(k);
    if (k == s.dim() || s.eigenvalues(ik) - s.eigenvalues(ik - 1) > tol) {
      double sum = 0.0;
      for (std::size_t j = first; j < k; ++j) sum += s.eigenvalues(static_cast<Eigen::Index>(j));
      out.push_back({first, k - first, sum / static_cast<double>(k - first)});
      first = k;
    }
  }
  return out;
}

}  // namespace infogeo
