#include "wcde/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

namespace wcde {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return s.find("->") == std::string::npos;
}

}  // namespace

VertexSet::VertexSet(std::vector<NodeId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::of_names(const Dag& g, const std::vector<std::string>& names) {
  std::vector<NodeId> ids;
  ids.reserve(names.size());
  for (const auto& n : names) ids.push_back(g.node(n));
  return VertexSet(std::move(ids));
}

bool VertexSet::contains(NodeId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::set_union(const VertexSet& other) const {
  std::vector<NodeId> out;
  out.reserve(members_.size() + other.members_.size());
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  VertexSet r;
  r.members_ = std::move(out);
  return r;
}

VertexSet VertexSet::intersect(const VertexSet& other) const {
  std::vector<NodeId> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out));
  VertexSet r;
  r.members_ = std::move(out);
  return r;
}

VertexSet VertexSet::minus(const VertexSet& other) const {
  std::vector<NodeId> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  VertexSet r;
  r.members_ = std::move(out);
  return r;
}

VertexSet VertexSet::with(NodeId v) const {
  if (contains(v)) return *this;
  std::vector<NodeId> out = members_;
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  VertexSet r;
  r.members_ = std::move(out);
  return r;
}

VertexSet VertexSet::without(NodeId v) const {
  if (!contains(v)) return *this;
  std::vector<NodeId> out;
  out.reserve(members_.size() - 1);
  for (NodeId m : members_) {
    if (!(m == v)) out.push_back(m);
  }
  VertexSet r;
  r.members_ = std::move(out);
  return r;
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

bool VertexSet::subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

std::vector<std::string> VertexSet::names(const Dag& g) const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (NodeId v : members_) out.push_back(g.name(v));
  return out;
}

Dag Dag::build(const std::vector<std::string>& nodes,
               const std::vector<std::pair<std::string, std::string>>& edges) {
  Dag g;
  g.names_ = nodes;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    const std::string& n = nodes[i];
    if (!valid_name(n)) {
      throw Error("invalid node name '" + n +
                  "': names must be nonempty and free of whitespace, ',', ';', \"->\"");
    }
    if (!g.index_.emplace(n, i).second) {
      throw Error("duplicate node name '" + n + "'");
    }
  }
  const int d = g.node_count();
  g.parents_.resize(d);
  g.children_.resize(d);
  std::set<std::pair<int, int>> seen;
  for (const auto& [pn, cn] : edges) {
    const NodeId p = g.node(pn);
    const NodeId c = g.node(cn);
    if (p == c) {
      throw CycleError("self loop on node '" + pn + "'", {pn});
    }
    if (!seen.emplace(p.index, c.index).second) {
      throw DuplicateEdgeError("duplicate edge " + pn + " -> " + cn);
    }
    g.parents_[c.index].push_back(p);
    g.children_[p.index].push_back(c);
    g.edges_.emplace_back(p, c);
  }
  for (auto& v : g.parents_) std::sort(v.begin(), v.end());
  for (auto& v : g.children_) std::sort(v.begin(), v.end());
  std::sort(g.edges_.begin(), g.edges_.end());

  // Kahn's algorithm with a min-index frontier: the order is a pure
  // function of the graph, independent of edge insertion order.
  std::vector<int> indegree(d);
  for (int v = 0; v < d; ++v) indegree[v] = static_cast<int>(g.parents_[v].size());
  std::set<int> ready;
  for (int v = 0; v < d; ++v) {
    if (indegree[v] == 0) ready.insert(v);
  }
  g.topo_.reserve(d);
  while (!ready.empty()) {
    const int v = *ready.begin();
    ready.erase(ready.begin());
    g.topo_.push_back(NodeId{v});
    for (NodeId c : g.children_[v]) {
      if (--indegree[c.index] == 0) ready.insert(c.index);
    }
  }
  if (static_cast<int>(g.topo_.size()) != d) {
    // Extract one cycle from the residual subgraph for the error message.
    std::vector<std::string> cycle;
    int start = -1;
    for (int v = 0; v < d; ++v) {
      if (indegree[v] > 0) {
        start = v;
        break;
      }
    }
    std::vector<int> mark(d, -1);
    std::vector<int> walk;
    int cur = start;
    while (mark[cur] < 0) {
      mark[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      for (NodeId p : g.parents_[cur]) {
        if (indegree[p.index] > 0) {
          cur = p.index;
          break;
        }
      }
    }
    for (int i = mark[cur]; i < static_cast<int>(walk.size()); ++i) {
      cycle.push_back(g.names_[walk[i]]);
    }
    std::reverse(cycle.begin(), cycle.end());
    std::string msg = "graph contains a cycle:";
    for (const auto& n : cycle) msg += " " + n;
    throw CycleError(msg, cycle);
  }
  g.topo_rank_.resize(d);
  for (int r = 0; r < d; ++r) g.topo_rank_[g.topo_[r].index] = r;
  return g;
}

bool Dag::has_node(std::string_view name) const {
  return index_.find(std::string(name)) != index_.end();
}

NodeId Dag::node(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    throw UnknownNodeError("unknown node '" + std::string(name) + "'");
  }
  return NodeId{it->second};
}

const std::string& Dag::name(NodeId v) const {
  check(v);
  return names_[v.index];
}

void Dag::check(NodeId v) const {
  if (v.index < 0 || v.index >= node_count()) {
    throw UnknownNodeError("node handle out of range");
  }
}

bool Dag::has_edge(NodeId parent, NodeId child) const {
  check(parent);
  check(child);
  const auto& ps = parents_[child.index];
  return std::binary_search(ps.begin(), ps.end(), parent);
}

const std::vector<NodeId>& Dag::parents_of(NodeId v) const {
  check(v);
  return parents_[v.index];
}

const std::vector<NodeId>& Dag::children_of(NodeId v) const {
  check(v);
  return children_[v.index];
}

VertexSet Dag::parents(NodeId v) const { return VertexSet(parents_of(v)); }

VertexSet Dag::children(NodeId v) const { return VertexSet(children_of(v)); }

VertexSet Dag::descendants(NodeId v) const {
  check(v);
  std::vector<bool> seen(node_count(), false);
  std::deque<int> queue{v.index};
  std::vector<NodeId> out;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (NodeId c : children_[cur]) {
      if (!seen[c.index]) {
        seen[c.index] = true;
        out.push_back(c);
        queue.push_back(c.index);
      }
    }
  }
  return VertexSet(std::move(out));
}

VertexSet Dag::ancestors(NodeId v) const {
  check(v);
  std::vector<bool> seen(node_count(), false);
  std::deque<int> queue{v.index};
  std::vector<NodeId> out;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (NodeId p : parents_[cur]) {
      if (!seen[p.index]) {
        seen[p.index] = true;
        out.push_back(p);
        queue.push_back(p.index);
      }
    }
  }
  return VertexSet(std::move(out));
}

VertexSet Dag::non_descendants(NodeId v) const {
  return all_vertices().minus(descendants(v)).without(v);
}

VertexSet Dag::ancestral_closure(const VertexSet& s) const {
  std::vector<bool> seen(node_count(), false);
  std::deque<int> queue;
  std::vector<NodeId> out;
  for (NodeId v : s) {
    check(v);
    if (!seen[v.index]) {
      seen[v.index] = true;
      out.push_back(v);
      queue.push_back(v.index);
    }
  }
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (NodeId p : parents_[cur]) {
      if (!seen[p.index]) {
        seen[p.index] = true;
        out.push_back(p);
        queue.push_back(p.index);
      }
    }
  }
  return VertexSet(std::move(out));
}

int Dag::topo_rank(NodeId v) const {
  check(v);
  return topo_rank_[v.index];
}

VertexSet Dag::all_vertices() const {
  std::vector<NodeId> out;
  out.reserve(node_count());
  for (int i = 0; i < node_count(); ++i) out.push_back(NodeId{i});
  return VertexSet(std::move(out));
}

}  // namespace wcde
