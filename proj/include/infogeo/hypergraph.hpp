#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infogeo {

/// A hyperedge: sorted, duplicate-free node indices, arity >= 2.
using Hyperedge = std::vector<std::size_t>;

/// Node set {0..node_count-1} plus an ordered list of hyperedges.
///
/// Edges are canonicalised on construction (sorted node lists); the edge
/// order given by the caller is preserved because it fixes the parameter
/// order of any model built on top.
class Hypergraph {
 public:
  /// Throws DomainError on out-of-range nodes, empty/singleton edges,
  /// repeated nodes inside an edge or duplicate edges.
  Hypergraph(std::size_t node_count, std::vector<Hyperedge> edges);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Hyperedge>& edges() const noexcept { return edges_; }
  const Hyperedge& edge(std::size_t i) const { return edges_.at(i); }

  /// Returns a copy with one more edge appended.
  Hypergraph with_edge(Hyperedge e) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t node_count_;
  std::vector<Hyperedge> edges_;
};

/// Subset of nodes of a host hypergraph. The host must outlive the observer.
class Observer {
 public:
  Observer(const Hypergraph& host, std::vector<std::size_t> interior);

  const Hypergraph& host() const noexcept { return *host_; }
  /// Sorted, deduplicated interior node set.
  const std::vector<std::size_t>& interior() const noexcept { return interior_; }
  bool contains(std::size_t node) const;
  /// The observer made of every node not in this one.
  Observer complement() const;

 private:
  const Hypergraph* host_;
  std::vector<std::size_t> interior_;
};

/// Edges with at least one endpoint inside and one outside the observer.
std::vector<Hyperedge> boundary(const Observer& observer);

enum class Family { Chain, Star, Cycle, Complete };

/// Catalog topology: family + node count, written "P4", "S5", "C6", "K3".
struct TopologyId {
  Family family;
  std::size_t size;

  std::string name() const;
  /// Throws DomainError for anything that is not one of the 13 catalog entries.
  static TopologyId parse(std::string_view text);
  bool in_catalog() const noexcept;

  friend bool operator==(const TopologyId&, const TopologyId&) = default;
};

/// The 13 catalog topologies in canonical order:
/// P3..P6, S4..S6, C4..C6, K3..K5.
const std::vector<TopologyId>& catalog();

/// Graph for a catalog entry, edges in lexicographic order.
Hypergraph catalog_graph(const TopologyId& id);

/// -ln(prob) in nats; prob must lie in (0, 1].
double surprise(double prob);

/// Mean surprise over a non-empty series.
double persistence_score(std::span<const double> surprise_series);

}  // namespace infogeo
