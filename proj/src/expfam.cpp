#include "infogeo/expfam.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <fmt/format.h>

#include "infogeo/errors.hpp"

namespace infogeo {

ExpFamilyModel::ExpFamilyModel(Hypergraph host, std::vector<double> couplings,
                               std::vector<double> fields, bool fields_as_parameters)
    : host_(std::move(host)),
      couplings_(std::move(couplings)),
      fields_(std::move(fields)),
      fields_as_parameters_(fields_as_parameters) {
  if (couplings_.size() != host_.edge_count())
    throw DomainError(fmt::format("{} couplings for {} edges", couplings_.size(), host_.edge_count()));
  if (fields_.size() != host_.node_count())
    throw DomainError(fmt::format("{} fields for {} nodes", fields_.size(), host_.node_count()));
}

ExpFamilyModel ExpFamilyModel::uniform(Hypergraph host, double coupling) {
  const auto m = host.edge_count();
  const auto n = host.node_count();
  return ExpFamilyModel(std::move(host), std::vector<double>(m, coupling), std::vector<double>(n, 0.0));
}

std::size_t ExpFamilyModel::parameter_count() const noexcept {
  return couplings_.size() + (fields_as_parameters_ ? fields_.size() : 0);
}

std::vector<double> ExpFamilyModel::parameters() const {
  auto theta = couplings_;
  if (fields_as_parameters_) theta.insert(theta.end(), fields_.begin(), fields_.end());
  return theta;
}

ExpFamilyModel ExpFamilyModel::with_parameters(std::span<const double> theta) const {
  if (theta.size() != parameter_count())
    throw DomainError(fmt::format("expected {} parameters, got {}", parameter_count(), theta.size()));
  const auto m = couplings_.size();
  std::vector<double> j(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(m));
  auto h = fields_;
  if (fields_as_parameters_) h.assign(theta.begin() + static_cast<std::ptrdiff_t>(m), theta.end());
  return ExpFamilyModel(host_, std::move(j), std::move(h), fields_as_parameters_);
}

namespace {

void require_enumerable(const ExpFamilyModel& model) {
  if (model.host().node_count() > kMaxEnumerationNodes)
    throw ResourceError(fmt::format("exact enumeration limited to {} nodes, model has {}",
                                    kMaxEnumerationNodes, model.host().node_count()));
}

// State index bit i set <=> spin i = -1.
inline int spin(std::uint32_t state, std::size_t i) { return (state >> i) & 1u ? -1 : 1; }

void fill_statistics(const ExpFamilyModel& model, std::uint32_t state, Vector& s) {
  const auto& edges = model.host().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    int prod = 1;
    for (auto v : edges[e]) prod *= spin(state, v);
    s(static_cast<Eigen::Index>(e)) = prod;
  }
  if (model.fields_as_parameters()) {
    const auto m = edges.size();
    for (std::size_t i = 0; i < model.host().node_count(); ++i)
      s(static_cast<Eigen::Index>(m + i)) = spin(state, i);
  }
}

double energy(const ExpFamilyModel& model, std::uint32_t state) {
  const auto& edges = model.host().edges();
  double sum = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    int prod = 1;
    for (auto v : edges[e]) prod *= spin(state, v);
    sum += model.couplings()[e] * prod;
  }
  for (std::size_t i = 0; i < model.host().node_count(); ++i)
    sum += model.fields()[i] * spin(state, i);
  return sum;
}

// Unnormalised log-weights of every state, enumerated in index order.
std::vector<double> log_weights(const ExpFamilyModel& model) {
  require_enumerable(model);
  const std::uint32_t states = 1u << model.host().node_count();
  std::vector<double> w(states);
  for (std::uint32_t s = 0; s < states; ++s) w[s] = energy(model, s);
  return w;
}

// Normalised probabilities via max-shift; returns ln Z alongside.
std::vector<double> probabilities(const ExpFamilyModel& model, double* log_z) {
  auto w = log_weights(model);
  const double shift = *std::max_element(w.begin(), w.end());
  double total = 0.0;
  for (auto& x : w) {
    x = std::exp(x - shift);
    total += x;
  }
  for (auto& x : w) x /= total;
  if (log_z) *log_z = shift + std::log(total);
  return w;
}

}  // namespace

std::vector<double> sufficient_statistics(const ExpFamilyModel& model, std::span<const int> state) {
  const auto n = model.host().node_count();
  if (state.size() != n)
    throw DomainError(fmt::format("state has {} spins, model has {} nodes", state.size(), n));
  if (n > 32) throw ResourceError("state too large");
  std::uint32_t index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (state[i] == -1)
      index |= 1u << i;
    else if (state[i] != 1)
      throw DomainError(fmt::format("spin {} has value {}, expected ±1", i, state[i]));
  }
  Vector s(static_cast<Eigen::Index>(model.parameter_count()));
  fill_statistics(model, index, s);
  return {s.data(), s.data() + s.size()};
}

double log_partition(const ExpFamilyModel& model) {
  double log_z = 0.0;
  probabilities(model, &log_z);
  return log_z;
}

Vector mean_statistics(const ExpFamilyModel& model) {
  const auto p = probabilities(model, nullptr);
  const auto d = static_cast<Eigen::Index>(model.parameter_count());
  Vector mean = Vector::Zero(d), s(d);
  for (std::uint32_t st = 0; st < p.size(); ++st) {
    fill_statistics(model, st, s);
    mean += p[st] * s;
  }
  return mean;
}

Matrix fisher(const ExpFamilyModel& model) {
  const auto p = probabilities(model, nullptr);
  const auto d = static_cast<Eigen::Index>(model.parameter_count());
  const Vector mean = mean_statistics(model);
  // Two-pass centred covariance; avoids the E[ss] - mm cancellation.
  Matrix f = Matrix::Zero(d, d);
  Vector s(d);
  for (std::uint32_t st = 0; st < p.size(); ++st) {
    fill_statistics(model, st, s);
    s -= mean;
    f.selfadjointView<Eigen::Lower>().rankUpdate(s, p[st]);
  }
  Matrix full = f.selfadjointView<Eigen::Lower>();
  return full;
}

}  // namespace infogeo
