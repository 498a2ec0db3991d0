#include "infogeo/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "infogeo/errors.hpp"

namespace infogeo {

Hypergraph::Hypergraph(std::size_t node_count, std::vector<Hyperedge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ == 0) throw DomainError("hypergraph needs at least one node");
  std::set<Hyperedge> seen;
  for (auto& e : edges_) {
    std::sort(e.begin(), e.end());
    if (e.size() < 2) throw DomainError("hyperedge must contain at least two nodes");
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw DomainError("hyperedge repeats a node");
    if (e.back() >= node_count_)
      throw DomainError(fmt::format("hyperedge node {} out of range (node_count {})", e.back(),
                                    node_count_));
    if (!seen.insert(e).second) throw DomainError("duplicate hyperedge");
  }
}

Hypergraph Hypergraph::with_edge(Hyperedge e) const {
  auto edges = edges_;
  edges.push_back(std::move(e));
  return Hypergraph(node_count_, std::move(edges));
}

Observer::Observer(const Hypergraph& host, std::vector<std::size_t> interior)
    : host_(&host), interior_(std::move(interior)) {
  std::sort(interior_.begin(), interior_.end());
  interior_.erase(std::unique(interior_.begin(), interior_.end()), interior_.end());
  if (!interior_.empty() && interior_.back() >= host.node_count())
    throw DomainError("observer interior references a node outside the host");
}

bool Observer::contains(std::size_t node) const {
  return std::binary_search(interior_.begin(), interior_.end(), node);
}

Observer Observer::complement() const {
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < host_->node_count(); ++v)
    if (!contains(v)) rest.push_back(v);
  return Observer(*host_, std::move(rest));
}

std::vector<Hyperedge> boundary(const Observer& observer) {
  std::vector<Hyperedge> out;
  for (const auto& e : observer.host().edges()) {
    bool inside = false, outside = false;
    for (auto v : e) (observer.contains(v) ? inside : outside) = true;
    if (inside && outside) out.push_back(e);
  }
  return out;
}

namespace {

char family_letter(Family f) {
  switch (f) {
    case Family::Chain: return 'P';
    case Family::Star: return 'S';
    case Family::Cycle: return 'C';
    case Family::Complete: return 'K';
  }
  return '?';
}

}  // namespace

std::string TopologyId::name() const { return fmt::format("{}{}", family_letter(family), size); }

bool TopologyId::in_catalog() const noexcept {
  switch (family) {
    case Family::Chain: return size >= 3 && size <= 6;
    case Family::Star: return size >= 4 && size <= 6;
    case Family::Cycle: return size >= 4 && size <= 6;
    case Family::Complete: return size >= 3 && size <= 5;
  }
  return false;
}

TopologyId TopologyId::parse(std::string_view text) {
  auto fail = [&] { return DomainError(fmt::format("unknown topology '{}'", text)); };
  if (text.size() < 2) throw fail();
  Family family;
  switch (text.front()) {
    case 'P': family = Family::Chain; break;
    case 'S': family = Family::Star; break;
    case 'C': family = Family::Cycle; break;
    case 'K': family = Family::Complete; break;
    default: throw fail();
  }
  std::size_t size = 0;
  for (char ch : text.substr(1)) {
    if (ch < '0' || ch > '9') throw fail();
    size = size * 10 + static_cast<std::size_t>(ch - '0');
    if (size > 1000) throw fail();
  }
  TopologyId id{family, size};
  if (!id.in_catalog()) throw fail();
  return id;
}

const std::vector<TopologyId>& catalog() {
  static const std::vector<TopologyId> entries = [] {
    std::vector<TopologyId> v;
    for (std::size_t n = 3; n <= 6; ++n) v.push_back({Family::Chain, n});
    for (std::size_t n = 4; n <= 6; ++n) v.push_back({Family::Star, n});
    for (std::size_t n = 4; n <= 6; ++n) v.push_back({Family::Cycle, n});
    for (std::size_t n = 3; n <= 5; ++n) v.push_back({Family::Complete, n});
    return v;
  }();
  return entries;
}

Hypergraph catalog_graph(const TopologyId& id) {
  if (!id.in_catalog()) throw DomainError(fmt::format("topology {} is not in the catalog", id.name()));
  const std::size_t n = id.size;
  std::vector<Hyperedge> edges;
  switch (id.family) {
    case Family::Chain:
      for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
      break;
    case Family::Star:
      for (std::size_t i = 1; i < n; ++i) edges.push_back({0, i});
      break;
    case Family::Cycle:
      for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
      edges.push_back({0, n - 1});
      break;
    case Family::Complete:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j});
      break;
  }
  std::sort(edges.begin(), edges.end());
  return Hypergraph(n, std::move(edges));
}

double surprise(double prob) {
  if (!(prob > 0.0 && prob <= 1.0))
    throw DomainError(fmt::format("probability {} outside (0, 1]", prob));
  return -std::log(prob);
}

double persistence_score(std::span<const double> surprise_series) {
  if (surprise_series.empty()) throw DomainError("persistence score of an empty series");
  return std::accumulate(surprise_series.begin(), surprise_series.end(), 0.0) /
         static_cast<double>(surprise_series.size());
}

}  // namespace infogeo
