#include "wcde/separation.hpp"

#include <algorithm>
#include <deque>

namespace wcde {

namespace {

void require_disjoint(const Dag& g, const VertexSet& xs, const VertexSet& ys,
                      const VertexSet& z) {
  auto complain = [&](const VertexSet& a, const VertexSet& b, const char* what) {
    if (a.intersects(b)) {
      const VertexSet common = a.intersect(b);
      std::string names;
      for (const auto& n : common.names(g)) names += " " + n;
      throw SetsOverlapError(std::string(what) + " overlap:" + names);
    }
  };
  complain(xs, ys, "query sets");
  complain(xs, z, "source set and conditioning set");
  complain(ys, z, "target set and conditioning set");
}

// Depth-first enumeration of simple paths with a hard budget.
class PathWalker {
 public:
  PathWalker(const Dag& g, NodeId target, const PathOptions& opts,
             std::vector<Path>* out)
      : g_(g), target_(target), opts_(opts), out_(out), on_path_(g.node_count(), false) {}

  void run(NodeId start) {
    vertices_.push_back(start);
    on_path_[start.index] = true;
    extend();
    on_path_[start.index] = false;
    vertices_.pop_back();
  }

 private:
  void extend() {
    const NodeId cur = vertices_.back();
    if (cur == target_) {
      if (out_->size() >= opts_.max_paths) {
        throw PathBudgetExceededError("path enumeration exceeded budget of " +
                                      std::to_string(opts_.max_paths) + " paths");
      }
      out_->push_back(Path{vertices_, directions_});
      return;
    }
    if (opts_.max_len > 0 && static_cast<int>(directions_.size()) >= opts_.max_len) {
      return;
    }
    // Merge parents and children in ascending index order so the emitted
    // path list is a pure function of the graph.
    const auto& ps = g_.parents_of(cur);
    const auto& cs = g_.children_of(cur);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ps.size() || j < cs.size()) {
      NodeId next;
      EdgeDir dir;
      if (j >= cs.size() || (i < ps.size() && ps[i] < cs[j])) {
        next = ps[i++];
        dir = EdgeDir::Backward;
      } else {
        next = cs[j++];
        dir = EdgeDir::Forward;
      }
      if (on_path_[next.index]) continue;
      vertices_.push_back(next);
      directions_.push_back(dir);
      on_path_[next.index] = true;
      extend();
      on_path_[next.index] = false;
      directions_.pop_back();
      vertices_.pop_back();
    }
  }

  const Dag& g_;
  NodeId target_;
  const PathOptions& opts_;
  std::vector<Path>* out_;
  std::vector<bool> on_path_;
  std::vector<NodeId> vertices_;
  std::vector<EdgeDir> directions_;
};

}  // namespace

PathKind classify_path(const Path& p) {
  if (p.directions.empty()) return PathKind::Other;
  if (p.directions.front() == EdgeDir::Backward) return PathKind::Backdoor;
  const bool directed = std::all_of(p.directions.begin(), p.directions.end(),
                                    [](EdgeDir d) { return d == EdgeDir::Forward; });
  if (directed && p.vertices.size() >= 3) return PathKind::Mediator;
  return PathKind::Other;
}

std::string format_path(const Dag& g, const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    if (i > 0) {
      out += p.directions[i - 1] == EdgeDir::Forward ? " -> " : " <- ";
    }
    out += g.name(p.vertices[i]);
  }
  return out;
}

std::vector<Path> enumerate_paths(const Dag& g, NodeId x, NodeId y,
                                  const PathOptions& opts) {
  if (x == y) {
    throw SetsOverlapError("path endpoints coincide: " + g.name(x));
  }
  std::vector<Path> out;
  PathWalker walker(g, y, opts, &out);
  walker.run(x);
  return out;
}

std::vector<Path> backdoor_paths(const Dag& g, NodeId x, NodeId y,
                                 const PathOptions& opts) {
  std::vector<Path> out;
  for (auto& p : enumerate_paths(g, x, y, opts)) {
    if (classify_path(p) == PathKind::Backdoor) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Path> mediator_paths(const Dag& g, NodeId x, NodeId y,
                                 const PathOptions& opts) {
  std::vector<Path> out;
  for (auto& p : enumerate_paths(g, x, y, opts)) {
    if (classify_path(p) == PathKind::Mediator) out.push_back(std::move(p));
  }
  return out;
}

bool is_path_blocked(const Dag& g, const Path& p, const VertexSet& z) {
  if (p.vertices.size() < 2 || p.directions.size() + 1 != p.vertices.size()) {
    throw PreconditionError("malformed path");
  }
  if (z.contains(p.vertices.front()) || z.contains(p.vertices.back())) {
    throw EndpointInConditioningSetError(
        "path endpoint lies in the conditioning set: " + format_path(g, p));
  }
  for (std::size_t k = 1; k + 1 < p.vertices.size(); ++k) {
    const NodeId v = p.vertices[k];
    const bool collider = p.directions[k - 1] == EdgeDir::Forward &&
                          p.directions[k] == EdgeDir::Backward;
    if (collider) {
      if (!z.contains(v) && !g.descendants(v).intersects(z)) return true;
    } else {
      if (z.contains(v)) return true;
    }
  }
  return false;
}

bool is_d_separated(const Dag& g, const VertexSet& xs, const VertexSet& ys,
                    const VertexSet& z) {
  require_disjoint(g, xs, ys, z);
  if (xs.empty() || ys.empty()) return true;

  // Reachability over (vertex, arrival direction) states. "Up" means the
  // walk arrived against an edge (from a child) or started here; "down"
  // means it arrived along an edge (from a parent). A collider may only be
  // crossed when it has a conditioned descendant, a non-collider only when
  // it is unconditioned.
  const int d = g.node_count();
  std::vector<bool> in_z(d, false);
  for (NodeId v : z) in_z[v.index] = true;
  std::vector<bool> in_y(d, false);
  for (NodeId v : ys) in_y[v.index] = true;
  std::vector<bool> has_conditioned_desc(d, false);
  for (NodeId v : g.ancestral_closure(z)) has_conditioned_desc[v.index] = true;

  std::vector<bool> seen_up(d, false);
  std::vector<bool> seen_down(d, false);
  std::deque<std::pair<int, bool>> queue;  // (vertex, arrived_down)
  for (NodeId v : xs) queue.emplace_back(v.index, false);

  while (!queue.empty()) {
    const auto [v, down] = queue.front();
    queue.pop_front();
    auto& seen = down ? seen_down : seen_up;
    if (seen[v]) continue;
    seen[v] = true;
    if (in_y[v]) return false;
    if (!down) {
      if (!in_z[v]) {
        for (NodeId p : g.parents_of(NodeId{v})) queue.emplace_back(p.index, false);
        for (NodeId c : g.children_of(NodeId{v})) queue.emplace_back(c.index, true);
      }
    } else {
      if (!in_z[v]) {
        for (NodeId c : g.children_of(NodeId{v})) queue.emplace_back(c.index, true);
      }
      if (has_conditioned_desc[v]) {
        for (NodeId p : g.parents_of(NodeId{v})) queue.emplace_back(p.index, false);
      }
    }
  }
  return true;
}

bool is_d_separated_paths(const Dag& g, const VertexSet& xs, const VertexSet& ys,
                          const VertexSet& z, const PathOptions& opts) {
  Path ignored;
  require_disjoint(g, xs, ys, z);
  return !find_open_path(g, xs, ys, z, &ignored, opts);
}

bool find_open_path(const Dag& g, const VertexSet& xs, const VertexSet& ys,
                    const VertexSet& z, Path* out, const PathOptions& opts) {
  for (NodeId x : xs) {
    for (NodeId y : ys) {
      for (const Path& p : enumerate_paths(g, x, y, opts)) {
        if (!is_path_blocked(g, p, z)) {
          if (out != nullptr) *out = p;
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace wcde
