#pragma once

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wcde/graph.hpp"
#include "wcde/io.hpp"
#include "wcde/rng.hpp"
#include "wcde/scm.hpp"

namespace wcde_test {

using namespace wcde;

inline Dag chain5_dense_dag() {
  return Dag::build({"A", "B1", "G1", "G2", "Y"},
                    {{"A", "B1"},
                     {"B1", "G1"},
                     {"G1", "Y"},
                     {"G2", "B1"},
                     {"G2", "A"},
                     {"G2", "Y"},
                     {"G2", "G1"},
                     {"A", "Y"}});
}

inline Dag fork5_dag() {
  return Dag::build({"A", "B2", "G1", "G2", "Y"},
                    {{"A", "G1"},
                     {"G1", "Y"},
                     {"B2", "A"},
                     {"B2", "G1"},
                     {"B2", "G2"},
                     {"G2", "Y"},
                     {"A", "Y"}});
}

inline Dag chain5_dag() {
  return Dag::build({"A", "B1", "G1", "G2", "Y"},
                    {{"A", "B1"},
                     {"B1", "G1"},
                     {"G1", "Y"},
                     {"G2", "B1"},
                     {"G2", "A"},
                     {"G2", "Y"},
                     {"A", "Y"}});
}

inline std::string fixture_path(const std::string& name) {
  return std::string(WCDE_FIXTURE_DIR) + "/" + name;
}

inline DiscreteScm load_discrete_fixture(const std::string& name) {
  return std::get<DiscreteScm>(load_scm(fixture_path(name)));
}

inline LinearScm load_linear_fixture(const std::string& name) {
  return std::get<LinearScm>(load_scm(fixture_path(name)));
}

// Random DAG over N0..N{d-1}: each forward pair is an edge independently.
inline Dag random_dag(Rng& rng, int d, double edge_prob) {
  std::vector<std::string> names;
  names.reserve(d);
  for (int i = 0; i < d; ++i) names.push_back("N" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (rng.next_unit() < edge_prob) edges.emplace_back(names[i], names[j]);
    }
  }
  return Dag::build(names, edges);
}

inline VertexSet random_subset(Rng& rng, const std::vector<NodeId>& pool, double p) {
  std::vector<NodeId> members;
  for (NodeId v : pool) {
    if (rng.next_unit() < p) members.push_back(v);
  }
  return VertexSet(std::move(members));
}

// All-binary CPTs with success probabilities uniform in [lo, hi].
inline DiscreteScm random_binary_scm(const Dag& g, std::uint64_t seed, double lo,
                                     double hi) {
  Rng rng(seed, 0);
  const int d = g.node_count();
  std::vector<int> cards(d, 2);
  std::vector<std::vector<double>> cpts(d);
  for (int v = 0; v < d; ++v) {
    std::size_t rows = 1;
    for (std::size_t k = 0; k < g.parents_of(NodeId{v}).size(); ++k) rows *= 2;
    cpts[v].resize(rows * 2);
    for (std::size_t r = 0; r < rows; ++r) {
      const double p1 = lo + (hi - lo) * rng.next_unit();
      cpts[v][r * 2] = 1.0 - p1;
      cpts[v][r * 2 + 1] = p1;
    }
  }
  return DiscreteScm::create(g, std::move(cards), std::move(cpts));
}

// Independent oracle: counts simple paths in the skeleton by plain DFS
// over an adjacency structure rebuilt from the edge list.
inline long count_paths_oracle(const Dag& g, NodeId x, NodeId y) {
  const int d = g.node_count();
  std::vector<std::vector<int>> adj(d);
  for (const auto& [p, c] : g.edges()) {
    adj[p.index].push_back(c.index);
    adj[c.index].push_back(p.index);
  }
  std::vector<char> used(d, 0);
  long count = 0;
  std::function<void(int)> dfs = [&](int v) {
    if (v == y.index) {
      ++count;
      return;
    }
    used[v] = 1;
    for (int w : adj[v]) {
      if (!used[w]) dfs(w);
    }
    used[v] = 0;
  };
  dfs(x.index);
  return count;
}

}  // namespace wcde_test
