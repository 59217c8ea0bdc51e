#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wcde/errors.hpp"

namespace wcde {

class Dag;

// Dense handle for a vertex of a Dag. Cheap to copy; resolves to a name
// through the owning graph.
struct NodeId {
  int index = -1;

  friend bool operator==(NodeId a, NodeId b) { return a.index == b.index; }
  friend auto operator<=>(NodeId a, NodeId b) { return a.index <=> b.index; }
};

// Immutable sorted set of vertices. All operations preserve the ascending
// index order, so iteration and serialization are deterministic.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<NodeId> members);

  static VertexSet of_names(const Dag& g, const std::vector<std::string>& names);

  bool contains(NodeId v) const;
  bool empty() const { return members_.empty(); }
  int size() const { return static_cast<int>(members_.size()); }

  VertexSet set_union(const VertexSet& other) const;
  VertexSet intersect(const VertexSet& other) const;
  VertexSet minus(const VertexSet& other) const;
  VertexSet with(NodeId v) const;
  VertexSet without(NodeId v) const;
  bool intersects(const VertexSet& other) const;
  bool subset_of(const VertexSet& other) const;

  std::vector<std::string> names(const Dag& g) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<NodeId>& members() const { return members_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<NodeId> members_;
};

// Immutable directed acyclic graph over named vertices. Vertex identity is
// the name at the API surface and a dense index internally; indices follow
// declaration order. All accessors are const and safe to share across
// threads once built.
class Dag {
 public:
  // Validates names, rejects duplicate edges, self loops, unknown
  // endpoints, and cycles. Names must be nonempty and must not contain
  // whitespace, ',', ';', or "->".
  static Dag build(const std::vector<std::string>& nodes,
                   const std::vector<std::pair<std::string, std::string>>& edges);

  int node_count() const { return static_cast<int>(names_.size()); }
  bool has_node(std::string_view name) const;
  NodeId node(std::string_view name) const;  // throws UnknownNodeError
  const std::string& name(NodeId v) const;
  const std::vector<std::string>& names() const { return names_; }

  bool has_edge(NodeId parent, NodeId child) const;
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }
  const std::vector<NodeId>& parents_of(NodeId v) const;
  const std::vector<NodeId>& children_of(NodeId v) const;

  VertexSet parents(NodeId v) const;
  VertexSet children(NodeId v) const;
  VertexSet ancestors(NodeId v) const;    // strict: excludes v
  VertexSet descendants(NodeId v) const;  // strict: excludes v
  VertexSet non_descendants(NodeId v) const;  // V minus descendants minus v

  // Vertices of the set plus all their ancestors.
  VertexSet ancestral_closure(const VertexSet& s) const;

  // Deterministic topological order (Kahn's algorithm, smallest index
  // first among ready vertices).
  const std::vector<NodeId>& topological_order() const { return topo_; }
  // Position of each vertex in topological_order().
  int topo_rank(NodeId v) const;

  VertexSet all_vertices() const;

 private:
  Dag() = default;
  void check(NodeId v) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<NodeId> topo_;
  std::vector<int> topo_rank_;
};

}  // namespace wcde
