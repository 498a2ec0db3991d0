#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "infogeo/errors.hpp"
#include "infogeo/hypergraph.hpp"

using namespace infogeo;

namespace {

bool contains_edge(const std::vector<Hyperedge>& edges, const Hyperedge& e) {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

}  // namespace

TEST_CASE("hypergraph construction validates edges") {
  CHECK_NOTHROW(Hypergraph(4, {{0, 1}, {1, 2, 3}}));
  CHECK_THROWS_AS(Hypergraph(3, {{0, 3}}), DomainError);
  CHECK_THROWS_AS(Hypergraph(3, {{1}}), DomainError);
  CHECK_THROWS_AS(Hypergraph(3, {{}}), DomainError);
  CHECK_THROWS_AS(Hypergraph(3, {{0, 1}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(Hypergraph(3, {{1, 1}}), DomainError);

  const Hypergraph h(4, {{3, 1, 2}});
  CHECK(h.edge(0) == Hyperedge{1, 2, 3});
}

TEST_CASE("boundary") {
  const Hypergraph path(3, {{0, 1}, {1, 2}});

  SUBCASE("empty interior") { CHECK(boundary(Observer(path, {})).empty()); }
  SUBCASE("whole graph") { CHECK(boundary(Observer(path, {0, 1, 2})).empty()); }
  SUBCASE("crossing edge") {
    const auto b = boundary(Observer(path, {0, 1}));
    REQUIRE(b.size() == 1);
    CHECK(b[0] == Hyperedge{1, 2});
  }
  SUBCASE("hyperedge crosses when any member is outside") {
    const Hypergraph h(4, {{0, 1, 2}, {2, 3}});
    const auto b = boundary(Observer(h, {0, 1}));
    REQUIRE(b.size() == 1);
    CHECK(b[0] == Hyperedge{0, 1, 2});
  }
  SUBCASE("interior out of range") { CHECK_THROWS_AS(Observer(path, {3}), DomainError); }
}

TEST_CASE("boundary is symmetric under complement and monotone under edge addition") {
  std::mt19937_64 rng(7);
  for (const auto& id : catalog()) {
    const auto g = catalog_graph(id);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::size_t> interior;
      for (std::size_t v = 0; v < g.node_count(); ++v)
        if (rng() & 1u) interior.push_back(v);
      const Observer o(g, interior);
      CHECK(boundary(o) == boundary(o.complement()));

      // Add an arity-3 hyperedge not already present.
      const Hyperedge extra{0, 1, 2};
      const auto bigger = g.with_edge(extra);
      const Observer o2(bigger, interior);
      const auto before = boundary(o);
      const auto after = boundary(o2);
      for (const auto& e : before) CHECK(contains_edge(after, e));
    }
  }
}

TEST_CASE("catalog") {
  REQUIRE(catalog().size() == 13);
  for (const auto& id : catalog()) {
    const auto g = catalog_graph(id);
    const auto n = id.size;
    CAPTURE(id.name());
    CHECK(g.node_count() == n);
    switch (id.family) {
      case Family::Complete: CHECK(g.edge_count() == n * (n - 1) / 2); break;
      case Family::Chain: CHECK(g.edge_count() == n - 1); break;
      case Family::Cycle: CHECK(g.edge_count() == n); break;
      case Family::Star: CHECK(g.edge_count() == n - 1); break;
    }
    CHECK(std::is_sorted(g.edges().begin(), g.edges().end()));
    CHECK(TopologyId::parse(id.name()) == id);
  }

  CHECK(catalog_graph(TopologyId::parse("K3")).edges() == std::vector<Hyperedge>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(catalog_graph(TopologyId::parse("P3")).edges() == std::vector<Hyperedge>{{0, 1}, {1, 2}});
  CHECK(catalog_graph(TopologyId::parse("S4")).edges() == std::vector<Hyperedge>{{0, 1}, {0, 2}, {0, 3}});
  CHECK(catalog_graph(TopologyId::parse("C4")).edges() ==
        std::vector<Hyperedge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});

  for (const char* bad : {"", "K", "K6", "P2", "X3", "k3", "K3x", "S3"})
    CHECK_THROWS_AS(TopologyId::parse(bad), DomainError);
  CHECK_THROWS_AS(catalog_graph({Family::Complete, 9}), DomainError);
}

TEST_CASE("surprise and persistence") {
  CHECK(surprise(1.0) == 0.0);
  CHECK(surprise(std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  // ln 2 = 0.693147180559945... (mpmath)
  CHECK(std::abs(surprise(0.5) - 0.6931) <= 5e-5);
  CHECK_THROWS_AS(surprise(0.0), DomainError);
  CHECK_THROWS_AS(surprise(-0.1), DomainError);
  CHECK_THROWS_AS(surprise(1.5), DomainError);

  const std::vector<double> zeros{0, 0, 0}, ramp{1, 2, 3}, halves{0.6931, 0.6931};
  CHECK(persistence_score(zeros) == 0.0);
  CHECK(persistence_score(ramp) == 2.0);
  CHECK(persistence_score(halves) == doctest::Approx(0.6931));
  CHECK_THROWS_AS(persistence_score(std::vector<double>{}), DomainError);
}
