#include "infogeo/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "infogeo/errors.hpp"
#include "infogeo/expfam.hpp"

namespace infogeo {

namespace {

constexpr std::size_t kGridPoints = 1000;
constexpr double kAlphaTol = 1e-6;

double exponent(const ConvergenceModel& model) {
  return model.kind == ConvergenceModel::Kind::W ? model.w : 1.0;
}

}  // namespace

ConvergenceModel ConvergenceModel::weighted(double w, HessianMode h) {
  if (!(w > 0.0) || !std::isfinite(w)) throw DomainError(fmt::format("model weight w = {} must be > 0", w));
  return {Kind::W, w, h};
}

ConvergenceModel ConvergenceModel::parse(const std::string& name, double w, HessianMode h) {
  if (name == "A") return a(h);
  if (name == "B") return b(h);
  if (name == "C") return c(h);
  if (name == "D") return d(h);
  if (name == "W") return weighted(w, h);
  throw DomainError(fmt::format("unknown convergence model '{}'", name));
}

std::string ConvergenceModel::name() const {
  switch (kind) {
    case Kind::A: return "A";
    case Kind::B: return "B";
    case Kind::C: return "C";
    case Kind::D: return "D";
    case Kind::W: return fmt::format("W({:g})", w);
  }
  return "?";
}

double beta_of_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw DomainError(fmt::format("regime parameter alpha = {} outside [0, 1)", alpha));
  return alpha * alpha / (1.0 - alpha);
}

double alpha_of_c(double c) {
  if (!(c >= 0.0)) throw DomainError(fmt::format("metric shift c = {} must be >= 0", c));
  if (c == 0.0) return 0.0;
  if (std::isinf(c)) return 1.0;
  // 2c / (c + sqrt(c(c+4))) is the same root without cancellation for large c.
  return 2.0 * c / (c + std::sqrt(c * (c + 4.0)));
}

double c_star(const Spectrum& spectrum, double w) {
  if (!(w > 0.0)) throw DomainError(fmt::format("model weight w = {} must be > 0", w));
  cond(spectrum);  // rejects singular spectra
  return std::max(0.0, w * spectrum.max() - (w + 1.0) * spectrum.min());
}

double gap(const Spectrum& spectrum) { return spectrum.max() - 2.0 * spectrum.min(); }

double convergence_time(const Spectrum& spectrum, double c, const ConvergenceModel& model) {
  if (!(c >= 0.0)) throw DomainError(fmt::format("metric shift c = {} must be >= 0", c));
  if (spectrum.dim() == 0 || !(spectrum.min() > 0.0))
    throw DegeneracyError("convergence time needs a positive-definite spectrum");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Eigen::Index k = 0; k < spectrum.eigenvalues.size(); ++k) {
    const double lambda = spectrum.eigenvalues(k);
    const double mu = model.hessian == HessianMode::Fisher ? lambda + c : lambda * (lambda + c);
    lo = std::min(lo, mu);
    hi = std::max(hi, mu);
  }
  switch (model.kind) {
    case ConvergenceModel::Kind::A: return hi / lo * hi;
    case ConvergenceModel::Kind::B: return hi / lo;
    case ConvergenceModel::Kind::C: return hi;
    case ConvergenceModel::Kind::D: return hi / std::sqrt(lo);
    case ConvergenceModel::Kind::W: return std::pow(hi / lo, model.w) * hi;
  }
  return hi;
}

double predicted_c(const Spectrum& spectrum, const ConvergenceModel& model) {
  switch (model.kind) {
    case ConvergenceModel::Kind::A:
    case ConvergenceModel::Kind::W: return c_star(spectrum, exponent(model));
    // d/dc ln T = 1/(l_max + c) - 1/(2 (l_min + c)) in both Hessian modes.
    case ConvergenceModel::Kind::D: return c_star(spectrum, 1.0);
    case ConvergenceModel::Kind::B:
      return spectrum.max() - spectrum.min() > 1e-12 * spectrum.max()
                 ? std::numeric_limits<double>::infinity()
                 : 0.0;
    case ConvergenceModel::Kind::C: return 0.0;
  }
  return 0.0;
}

double predicted_alpha(const Spectrum& spectrum, const ConvergenceModel& model) {
  return std::clamp(alpha_of_c(predicted_c(spectrum, model)), kAlphaMin, kAlphaMax);
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

AlphaOptimum minimize_alpha_numeric(const Spectrum& spectrum, const ConvergenceModel& model) {
  auto t_of_alpha = [&](double alpha) {
    return convergence_time(spectrum, beta_of_alpha(alpha), model);
  };
  const double step = (kAlphaMax - kAlphaMin) / static_cast<double>(kGridPoints - 1);
  auto grid = [&](std::size_t i) {
    return i + 1 == kGridPoints ? kAlphaMax : kAlphaMin + step * static_cast<double>(i);
  };

  std::size_t best = 0;
  double best_t = t_of_alpha(grid(0));
  for (std::size_t i = 1; i < kGridPoints; ++i) {
    const double t = t_of_alpha(grid(i));
    if (t < best_t) {
      best_t = t;
      best = i;
    }
  }

  const double lo = grid(best == 0 ? 0 : best - 1);
  const double hi = grid(std::min(best + 1, kGridPoints - 1));
  AlphaOptimum out;
  out.alpha = golden_section_minimize(t_of_alpha, lo, hi, kAlphaTol);
  out.t_min = t_of_alpha(out.alpha);
  for (double edge : {kAlphaMin, kAlphaMax}) {
    const double t = t_of_alpha(edge);
    if (t <= out.t_min) {
      out = {edge, t, true};
    }
  }
  return out;
}

double speedup_at_optimum(const Spectrum& spectrum) {
  const double kappa = cond(spectrum);
  if (!(kappa > 2.0))
    throw DomainError(fmt::format("no interior optimum for kappa = {} <= 2", kappa));
  return kappa * kappa / (4.0 * (kappa - 1.0));
}

Spectrum fisher_spectrum(const TopologyId& topology, double coupling) {
  return eig_sym(fisher(ExpFamilyModel::uniform(catalog_graph(topology), coupling)));
}

RegimeAnalysis analyze_regime(const TopologyId& topology, double coupling, const Spectrum& spectrum,
                              const ConvergenceModel& model) {
  RegimeAnalysis r;
  r.topology = topology;
  r.coupling = coupling;
  r.lambda_min = spectrum.min();
  r.lambda_max = spectrum.max();
  r.cond_f = cond(spectrum);
  r.gap = gap(spectrum);
  r.c_star = c_star(spectrum, exponent(model));
  r.alpha_pred = predicted_alpha(spectrum, model);

  const auto opt = minimize_alpha_numeric(spectrum, model);
  r.alpha_num = opt.alpha;
  r.abs_err = std::abs(r.alpha_pred - r.alpha_num);
  r.boundary_flag = opt.at_boundary;

  double c_used = predicted_c(spectrum, model);
  if (!std::isfinite(c_used) || alpha_of_c(c_used) > kAlphaMax) c_used = beta_of_alpha(r.alpha_pred);
  r.speedup = convergence_time(spectrum, 0.0, model) / convergence_time(spectrum, c_used, model);
  return r;
}

}  // namespace infogeo
