#include <doctest.h>

#include <cmath>
#include <random>

#include "infogeo/errors.hpp"
#include "infogeo/regime.hpp"
#include "oracles.hpp"

using namespace infogeo;

namespace {

const double kGoldenConjugate = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

TEST_CASE("beta_of_alpha / alpha_of_c") {
  CHECK(beta_of_alpha(0.0) == 0.0);
  CHECK(beta_of_alpha(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(beta_of_alpha(kGoldenConjugate) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(beta_of_alpha(1.0), DomainError);
  CHECK_THROWS_AS(beta_of_alpha(-0.01), DomainError);

  CHECK(alpha_of_c(0.0) == 0.0);
  CHECK(alpha_of_c(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(oracle::within(alpha_of_c(1.0), 0.6180, 5e-5));
  CHECK(alpha_of_c(1.0) == doctest::Approx(kGoldenConjugate).epsilon(1e-15));
  CHECK_THROWS_AS(alpha_of_c(-1.0), DomainError);

  for (int i = 0; i <= 990; ++i) {
    const double a = i / 1000.0;
    CHECK(std::abs(alpha_of_c(beta_of_alpha(a)) - a) <= 1e-12);
  }
  double prev = -1;
  for (int i = 0; i < 999; ++i) {
    const double b = beta_of_alpha(i / 1000.0);
    CHECK(b > prev);
    prev = b;
  }
}

TEST_CASE("c_star") {
  CHECK(c_star(diagonal_spectrum({1, 2})) == 0.0);
  CHECK(c_star(diagonal_spectrum({1, 3})) == 1.0);
  CHECK(c_star(diagonal_spectrum({1, 1})) == 0.0);

  const auto k3 = fisher_spectrum(TopologyId::parse("K3"), 0.5);
  CHECK(oracle::within(c_star(k3), 0.3254, 1e-4));
  CHECK(oracle::within(alpha_of_c(c_star(k3)), 0.4305, 1e-4));

  CHECK_THROWS_AS(c_star(diagonal_spectrum({0, 1})), DegeneracyError);
  CHECK_THROWS_AS(c_star(diagonal_spectrum({1, 3}), 0.0), DomainError);
}

TEST_CASE("threshold: c_star = 0 iff kappa <= (w+1)/w") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> kappa_dist(1.0, 6.0), w_dist(0.2, 4.0), scale_dist(0.01, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double kappa = kappa_dist(rng), w = w_dist(rng), s = scale_dist(rng);
    const auto sp = diagonal_spectrum({s, s * 0.5 * (1 + kappa), s * kappa});
    const bool classical = kappa <= (w + 1) / w;
    CHECK((c_star(sp, w) == 0.0) == classical);
  }
}

TEST_CASE("c_star scale covariance") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> lam(0.05, 3.0), sdist(0.1, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sp = diagonal_spectrum({lam(rng), lam(rng), lam(rng)});
    const double s = sdist(rng);
    auto scaled = sp;
    scaled.eigenvalues *= s;
    CHECK(c_star(scaled) == doctest::Approx(s * c_star(sp)).epsilon(1e-12));
    CHECK((cond(scaled) > 2) == (cond(sp) > 2));
  }
}

TEST_CASE("convergence_time") {
  const auto s13 = diagonal_spectrum({1, 3});
  CHECK(convergence_time(s13, 0.0, ConvergenceModel::a()) == doctest::Approx(81.0));
  CHECK(convergence_time(s13, 1.0, ConvergenceModel::a()) == doctest::Approx(72.0));
  CHECK(convergence_time(s13, 1.0, ConvergenceModel::b()) == doctest::Approx(6.0));
  CHECK(convergence_time(s13, 1.0, ConvergenceModel::c()) == doctest::Approx(12.0));
  CHECK(convergence_time(s13, 1.0, ConvergenceModel::d()) == doctest::Approx(12.0 / std::sqrt(2.0)));
  CHECK(convergence_time(s13, 1.0, ConvergenceModel::weighted(2.0)) == doctest::Approx(36.0 * 12.0));
  CHECK(convergence_time(s13, 1.0, ConvergenceModel::a(HessianMode::Fisher)) == doctest::Approx(4.0 / 2.0 * 4.0));
  for (double c : {0.0, 0.3, 7.0})
    CHECK(convergence_time(diagonal_spectrum({1, 1}), c, ConvergenceModel::b()) == doctest::Approx(1.0));
  CHECK(convergence_time(s13, 1.0, ConvergenceModel::a()) ==
        convergence_time(s13, 1.0, ConvergenceModel::weighted(1.0)));
  CHECK_THROWS_AS(convergence_time(s13, -1.0, ConvergenceModel::a()), DomainError);
  CHECK_THROWS_AS(ConvergenceModel::weighted(0.0), DomainError);
  CHECK_THROWS_AS(ConvergenceModel::parse("E"), DomainError);
}

TEST_CASE("golden-section search") {
  const double x = golden_section_minimize([](double t) { return (t - 0.3) * (t - 0.3) + 2; }, 0, 1, 1e-9);
  // Flat to rounding within ~sqrt(eps) of the minimum.
  CHECK(std::abs(x - 0.3) <= 1e-7);
  const double edge = golden_section_minimize([](double t) { return t; }, 0, 1, 1e-9);
  CHECK(edge <= 1e-8);
}

TEST_CASE("minimize_alpha_numeric") {
  const auto k3 = fisher_spectrum(TopologyId::parse("K3"), 0.5);
  const auto opt = minimize_alpha_numeric(k3, ConvergenceModel::a());
  CHECK(oracle::within(opt.alpha, 0.431, 0.002));
  CHECK(std::abs(opt.alpha - alpha_of_c(c_star(k3))) < 0.002);
  CHECK_FALSE(opt.at_boundary);

  const auto p6 = fisher_spectrum(TopologyId::parse("P6"), 0.5);
  const auto chain = minimize_alpha_numeric(p6, ConvergenceModel::a());
  CHECK(chain.alpha <= 0.02);
  CHECK(chain.at_boundary);

  const auto c = minimize_alpha_numeric(diagonal_spectrum({1, 3}), ConvergenceModel::c());
  CHECK(c.alpha == 0.0);
  CHECK(c.at_boundary);

  const auto b = minimize_alpha_numeric(diagonal_spectrum({1, 3}), ConvergenceModel::b());
  CHECK(b.alpha == kAlphaMax);
  CHECK(b.at_boundary);

  // Deterministic.
  CHECK(minimize_alpha_numeric(k3, ConvergenceModel::a()).alpha == opt.alpha);
}

TEST_CASE("argmin identity over catalog spectra") {
  for (const auto& id : catalog()) {
    for (double j : {0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5}) {
      const auto s = fisher_spectrum(id, j);
      if (cond(s) <= 2) continue;
      const double cs = c_star(s);
      const auto opt = minimize_alpha_numeric(s, ConvergenceModel::a());
      CAPTURE(id.name());
      CAPTURE(j);
      CHECK(std::abs(beta_of_alpha(opt.alpha) - cs) <= 1e-4 * (1 + cs));
      CHECK((s.max() + cs) / (s.min() + cs) == doctest::Approx(2.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("generalized w-family optimum") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> w_dist(0.5, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double w = w_dist(rng);
    const auto s = diagonal_spectrum({0.2, 0.5, 1.5});
    const auto opt = minimize_alpha_numeric(s, ConvergenceModel::weighted(w));
    const double cs = c_star(s, w);
    CHECK(std::abs(beta_of_alpha(opt.alpha) - cs) <= 1e-4 * (1 + cs));
  }
}

TEST_CASE("model D shares model A's stationary point") {
  const auto k4 = fisher_spectrum(TopologyId::parse("K4"), 0.5);
  const auto d = minimize_alpha_numeric(k4, ConvergenceModel::d());
  CHECK(d.alpha == doctest::Approx(alpha_of_c(c_star(k4))).epsilon(1e-5));
}

TEST_CASE("fisher Hessian mode: model A keeps the same interior optimum") {
  // (l_max + c)^2 / (l_min + c) is stationary at c = l_max - 2 l_min, like the isotropic case.
  const auto k3 = fisher_spectrum(TopologyId::parse("K3"), 0.5);
  const auto opt = minimize_alpha_numeric(k3, ConvergenceModel::a(HessianMode::Fisher));
  CHECK(opt.alpha == doctest::Approx(alpha_of_c(c_star(k3))).epsilon(1e-5));
  const auto b = minimize_alpha_numeric(k3, ConvergenceModel::b(HessianMode::Fisher));
  CHECK(b.alpha == kAlphaMax);
}

TEST_CASE("speedup at optimum") {
  const auto s13 = diagonal_spectrum({1, 3});
  CHECK(speedup_at_optimum(s13) == doctest::Approx(1.125));
  CHECK(convergence_time(s13, 0, ConvergenceModel::a()) / convergence_time(s13, 1, ConvergenceModel::a()) ==
        doctest::Approx(1.125));
  CHECK(speedup_at_optimum(diagonal_spectrum({1, 100})) == doctest::Approx(10000.0 / 396.0));
  CHECK(speedup_at_optimum(diagonal_spectrum({1, 2 + 1e-9})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(speedup_at_optimum(diagonal_spectrum({1, 2})), DomainError);
}

TEST_CASE("analyze_regime") {
  const auto id = TopologyId::parse("K3");
  const auto r = analyze_regime(id, 0.5, fisher_spectrum(id, 0.5));
  CHECK(oracle::within(r.cond_f, 2.84, 0.01));
  CHECK(oracle::within(r.gap, 0.325, 0.002));
  CHECK(oracle::within(r.alpha_pred, 0.430, 0.002));
  CHECK(r.abs_err <= 0.002);
  CHECK(r.abs_err == doctest::Approx(std::abs(r.alpha_pred - r.alpha_num)));
  CHECK(r.speedup == doctest::Approx(r.cond_f * r.cond_f / (4 * (r.cond_f - 1))).epsilon(1e-12));

  const auto chain = analyze_regime(TopologyId::parse("C4"), 0.5, fisher_spectrum(TopologyId::parse("C4"), 0.5));
  CHECK(chain.cond_f <= 2);
  CHECK(chain.alpha_pred == 0.0);
  CHECK(chain.speedup == 1.0);
  CHECK(chain.boundary_flag);
}
