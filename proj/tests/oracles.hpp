#pragma once

// Test-only reference computations. Nothing here calls into the library's
// enumeration or eigen-solver paths.

#include <cmath>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// |actual - expected| <= tol, for absolute tolerances taken from published tables.
inline bool within(double actual, double expected, double tol) { return std::abs(actual - expected) <= tol; }

using Edge = std::pair<std::size_t, std::size_t>;

/// Covariance of edge products by recursive spin enumeration in long double.
inline Eigen::MatrixXd brute_force_fisher(std::size_t n, const std::vector<Edge>& edges, double coupling) {
  const std::size_t m = edges.size();
  std::vector<int> spins(n, 1);
  long double z = 0;
  std::vector<long double> first(m, 0);
  std::vector<long double> second(m * m, 0);
  auto visit = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      std::vector<long double> s(m);
      long double energy = 0;
      for (std::size_t e = 0; e < m; ++e) {
        s[e] = spins[edges[e].first] * spins[edges[e].second];
        energy += coupling * s[e];
      }
      const long double w = std::exp(energy);
      z += w;
      for (std::size_t a = 0; a < m; ++a) {
        first[a] += w * s[a];
        for (std::size_t b = 0; b < m; ++b) second[a * m + b] += w * s[a] * s[b];
      }
      return;
    }
    for (int v : {1, -1}) {
      spins[i] = v;
      self(self, i + 1);
    }
  };
  visit(visit, 0);
  Eigen::MatrixXd f(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      f(a, b) = static_cast<double>(second[a * m + b] / z - (first[a] / z) * (first[b] / z));
  return f;
}

/// Random symmetric positive-definite matrix with eigenvalues in [lo, hi].
inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, int dim, double lo = 0.1, double hi = 5.0) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd x(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) x(i, j) = g(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd d(dim);
  for (int i = 0; i < dim; ++i) d(i) = u(rng);
  return q * d.asDiagonal() * q.transpose();
}

inline Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd x(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) x(i, j) = g(rng);
  return 0.5 * (x + x.transpose());
}

}  // namespace oracle
