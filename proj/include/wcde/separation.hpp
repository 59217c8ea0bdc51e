#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wcde/graph.hpp"

namespace wcde {

enum class EdgeDir {
  Forward,   // traversed parent -> child
  Backward,  // traversed child -> parent
};

// Simple path in the skeleton of a Dag, with the orientation of each step
// recorded relative to the walk. vertices.size() == directions.size() + 1.
struct Path {
  std::vector<NodeId> vertices;
  std::vector<EdgeDir> directions;

  friend bool operator==(const Path&, const Path&) = default;
};

enum class PathKind {
  Backdoor,  // first edge points into the walk's source
  Mediator,  // fully directed source -> ... -> target with >= 1 intermediate
  Other,
};

PathKind classify_path(const Path& p);

// Rendering like "A <- G2 -> Y".
std::string format_path(const Dag& g, const Path& p);

struct PathOptions {
  // Enumeration aborts with PathBudgetExceededError past this many paths.
  std::size_t max_paths = 100000;
  // Maximum number of edges per path; 0 means unbounded.
  int max_len = 0;
};

// All simple paths between x and y in deterministic (lexicographic by
// vertex index sequence) order.
std::vector<Path> enumerate_paths(const Dag& g, NodeId x, NodeId y,
                                  const PathOptions& opts = {});

std::vector<Path> backdoor_paths(const Dag& g, NodeId x, NodeId y,
                                 const PathOptions& opts = {});

// Directed paths x -> ... -> y with at least one intermediate vertex.
std::vector<Path> mediator_paths(const Dag& g, NodeId x, NodeId y,
                                 const PathOptions& opts = {});

// d-separation blocking rule for a single path. A non-collider blocks when
// it lies in z; a collider blocks when neither it nor any descendant lies
// in z. Endpoints must not be in z.
bool is_path_blocked(const Dag& g, const Path& p, const VertexSet& z);

// Linear-time set d-separation via reachability over (vertex, direction)
// states. xs, ys, z must be pairwise disjoint. Empty xs or ys is vacuously
// separated.
bool is_d_separated(const Dag& g, const VertexSet& xs, const VertexSet& ys,
                    const VertexSet& z);

// Same relation decided by exhaustive path enumeration. Exponential in the
// worst case; kept as an independent cross-check of is_d_separated.
bool is_d_separated_paths(const Dag& g, const VertexSet& xs, const VertexSet& ys,
                          const VertexSet& z, const PathOptions& opts = {});

// First unblocked path between xs and ys given z, if any, in deterministic
// order (by source index, then target index, then path order). Used for
// witness reporting.
bool find_open_path(const Dag& g, const VertexSet& xs, const VertexSet& ys,
                    const VertexSet& z, Path* out, const PathOptions& opts = {});

}  // namespace wcde
