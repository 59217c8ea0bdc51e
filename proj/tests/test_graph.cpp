#include <algorithm>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "wcde/errors.hpp"
#include "wcde/graph.hpp"

using namespace wcde;
using wcde_test::chain5_dense_dag;
using wcde_test::random_dag;

TEST_SUITE_BEGIN("graph");

TEST_CASE("two-node build") {
  const Dag g = Dag::build({"A", "Y"}, {{"A", "Y"}});
  CHECK(g.node_count() == 2);
  CHECK(g.edges().size() == 1);
  CHECK(g.has_edge(g.node("A"), g.node("Y")));
  CHECK_FALSE(g.has_edge(g.node("Y"), g.node("A")));
  CHECK(g.name(g.node("A")) == "A");
  CHECK(g.has_node("A"));
  CHECK_FALSE(g.has_node("B"));
  CHECK_THROWS_AS((void)g.node("B"), UnknownNodeError);
}

TEST_CASE("dense-chain graph relations") {
  const Dag g = chain5_dense_dag();
  CHECK(g.node_count() == 5);
  CHECK(g.edges().size() == 8);
  CHECK(g.parents(g.node("Y")).names(g) == std::vector<std::string>{"A", "G1", "G2"});
  CHECK(g.descendants(g.node("A")).names(g) ==
        std::vector<std::string>{"B1", "G1", "Y"});
  CHECK(g.ancestors(g.node("Y")).names(g) ==
        std::vector<std::string>{"A", "B1", "G1", "G2"});
  CHECK(g.children(g.node("G2")).names(g) ==
        std::vector<std::string>{"A", "B1", "G1", "Y"});
  CHECK(g.non_descendants(g.node("A")).names(g) == std::vector<std::string>{"G2"});
}

TEST_CASE("strictness at sources and sinks") {
  const Dag g = Dag::build({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  CHECK(g.ancestors(g.node("A")).empty());
  CHECK(g.descendants(g.node("C")).empty());
  CHECK_FALSE(g.ancestors(g.node("B")).contains(g.node("B")));
  CHECK_FALSE(g.descendants(g.node("B")).contains(g.node("B")));
}

TEST_CASE("build rejections") {
  CHECK_THROWS_AS(Dag::build({"A", "Y"}, {{"A", "Y"}, {"Y", "A"}}), CycleError);
  CHECK_THROWS_AS(Dag::build({"A"}, {{"A", "A"}}), CycleError);
  CHECK_THROWS_AS(Dag::build({"A", "Y"}, {{"A", "Y"}, {"A", "Y"}}), DuplicateEdgeError);
  CHECK_THROWS_AS(Dag::build({"A"}, {{"A", "B"}}), UnknownNodeError);
  CHECK_THROWS_AS(Dag::build({"A", "A"}, {}), Error);
  CHECK_THROWS_AS(Dag::build({""}, {}), Error);
  CHECK_THROWS_AS(Dag::build({"a b"}, {}), Error);
  CHECK_THROWS_AS(Dag::build({"a,b"}, {}), Error);
  CHECK_THROWS_AS(Dag::build({"a;b"}, {}), Error);
  CHECK_THROWS_AS(Dag::build({"a->b"}, {}), Error);
}

TEST_CASE("cycle error names the cycle") {
  try {
    Dag::build({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}, {"C", "A"}});
    FAIL("expected CycleError");
  } catch (const CycleError& e) {
    const std::vector<std::string>& cycle = e.cycle();
    REQUIRE(cycle.size() >= 3);
    // Every consecutive pair is one of the edges, wrapping around.
    for (const std::string& name : cycle) {
      CHECK((name == "A" || name == "B" || name == "C"));
    }
  }
}

TEST_CASE("topological order") {
  const Dag g = chain5_dense_dag();
  const std::vector<NodeId>& topo = g.topological_order();
  REQUIRE(topo.size() == 5);
  CHECK(g.name(topo.front()) == "G2");
  CHECK(g.name(topo.back()) == "Y");
  for (const auto& [p, c] : g.edges()) {
    CHECK(g.topo_rank(p) < g.topo_rank(c));
  }

  const Dag isolated = Dag::build({"X"}, {});
  CHECK(isolated.topological_order().size() == 1);
}

TEST_CASE("vertex set algebra") {
  const Dag g = chain5_dense_dag();
  const VertexSet s1 = VertexSet::of_names(g, {"G1", "A"});
  const VertexSet s2 = VertexSet::of_names(g, {"G1", "G2"});
  CHECK(s1.names(g) == std::vector<std::string>{"A", "G1"});
  CHECK(s1.set_union(s2).names(g) == std::vector<std::string>{"A", "G1", "G2"});
  CHECK(s1.intersect(s2).names(g) == std::vector<std::string>{"G1"});
  CHECK(s1.minus(s2).names(g) == std::vector<std::string>{"A"});
  CHECK(s1.with(g.node("Y")).names(g) == std::vector<std::string>{"A", "G1", "Y"});
  CHECK(s1.with(g.node("A")) == s1);
  CHECK(s1.without(g.node("A")).names(g) == std::vector<std::string>{"G1"});
  CHECK(s1.intersects(s2));
  CHECK_FALSE(s1.minus(s2).intersects(s2));
  CHECK(s1.intersect(s2).subset_of(s2));
  CHECK_FALSE(s1.subset_of(s2));
  CHECK(VertexSet().empty());
  CHECK(VertexSet().subset_of(s1));
  CHECK_THROWS_AS(VertexSet::of_names(g, {"nope"}), UnknownNodeError);

  // Duplicates collapse.
  const VertexSet dup(std::vector<NodeId>{g.node("G1"), g.node("G1")});
  CHECK(dup.size() == 1);
}

TEST_CASE("ancestral closure") {
  const Dag g = chain5_dense_dag();
  const VertexSet closure = g.ancestral_closure(VertexSet::of_names(g, {"G1"}));
  CHECK(closure.names(g) == std::vector<std::string>{"A", "B1", "G1", "G2"});
  CHECK(g.ancestral_closure(VertexSet()).empty());
}

TEST_CASE("random dags satisfy the relation dualities") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed, 17);
    const Dag g = random_dag(rng, 2 + static_cast<int>(rng.next_below(11)), 0.35);
    const int d = g.node_count();
    for (int i = 0; i < d; ++i) {
      const NodeId v{i};
      const VertexSet anc = g.ancestors(v);
      const VertexSet desc = g.descendants(v);
      CHECK_FALSE(anc.contains(v));
      CHECK_FALSE(desc.contains(v));
      CHECK(g.parents(v).subset_of(anc));
      CHECK(g.children(v).subset_of(desc));
      CHECK(g.non_descendants(v).size() == d - desc.size() - 1);
      for (int j = 0; j < d; ++j) {
        const NodeId u{j};
        CHECK(anc.contains(u) == g.descendants(u).contains(v));
      }
    }
    // Topological order is a permutation respecting every edge.
    const std::vector<NodeId>& topo = g.topological_order();
    REQUIRE(static_cast<int>(topo.size()) == d);
    std::vector<NodeId> sorted = topo;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < d; ++i) CHECK(sorted[i].index == i);
    for (const auto& [p, c] : g.edges()) CHECK(g.topo_rank(p) < g.topo_rank(c));
  }
}

TEST_SUITE_END();
