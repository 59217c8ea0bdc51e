#include "wcde/scm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wcde/rng.hpp"
#include "wcde/taxonomy.hpp"

namespace wcde {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

void require_sample_size(int n) {
  if (n <= 0) {
    throw InvalidSampleSizeError("sample size must be positive, got " + std::to_string(n));
  }
}

std::map<int, double> intervention_map(const Dag& g, const DoAssignment& intervention) {
  std::map<int, double> fixed;
  for (const auto& [v, value] : intervention) {
    g.name(v);
    if (!fixed.emplace(v.index, value).second) {
      throw PreconditionError("node '" + g.name(v) + "' intervened twice");
    }
  }
  return fixed;
}

int checked_state(const Dag& g, NodeId v, double value, int card) {
  const int s = static_cast<int>(std::llround(value));
  if (static_cast<double>(s) != value || s < 0 || s >= card) {
    throw PreconditionError("value " + std::to_string(value) + " is not a state of node '" +
                            g.name(v) + "'");
  }
  return s;
}

void require_binary_exposure(const DiscreteScm& m, const QuerySpec& q) {
  validate_query(m.dag(), q);
  if (m.cardinality(q.exposure) != 2) {
    throw PreconditionError("exposure '" + m.dag().name(q.exposure) + "' is not binary");
  }
  checked_state(m.dag(), q.exposure, q.a, 2);
  checked_state(m.dag(), q.exposure, q.a_star, 2);
}

}  // namespace

DiscreteScm DiscreteScm::create(Dag dag, std::vector<int> cardinalities,
                                std::vector<std::vector<double>> cpts) {
  const int d = dag.node_count();
  if (static_cast<int>(cardinalities.size()) != d || static_cast<int>(cpts.size()) != d) {
    throw PreconditionError("cardinalities and cpts must cover every node");
  }
  std::vector<std::vector<NodeId>> cpt_parents(d);
  for (int v = 0; v < d; ++v) {
    if (cardinalities[v] < 2) {
      throw PreconditionError("node '" + dag.name(NodeId{v}) +
                              "' must have cardinality >= 2");
    }
    auto parents = dag.parents_of(NodeId{v});
    std::sort(parents.begin(), parents.end(), [&](NodeId a, NodeId b) {
      return dag.topo_rank(a) < dag.topo_rank(b);
    });
    std::size_t rows = 1;
    for (NodeId p : parents) rows *= static_cast<std::size_t>(cardinalities[p.index]);
    const std::size_t want = rows * static_cast<std::size_t>(cardinalities[v]);
    if (cpts[v].size() != want) {
      throw PreconditionError("cpt of node '" + dag.name(NodeId{v}) + "' has " +
                              std::to_string(cpts[v].size()) + " entries, expected " +
                              std::to_string(want));
    }
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (int s = 0; s < cardinalities[v]; ++s) {
        const double p = cpts[v][r * cardinalities[v] + s];
        if (p < 0.0) {
          throw PreconditionError("negative probability in cpt of node '" +
                                  dag.name(NodeId{v}) + "'");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        throw PreconditionError("cpt row " + std::to_string(r) + " of node '" +
                                dag.name(NodeId{v}) + "' sums to " + std::to_string(sum));
      }
    }
    cpt_parents[v] = std::move(parents);
  }
  DiscreteScm m(std::move(dag));
  m.cards_ = std::move(cardinalities);
  m.cpts_ = std::move(cpts);
  m.cpt_parents_ = std::move(cpt_parents);
  return m;
}

double DiscreteScm::conditional(NodeId v, int state,
                                const std::vector<int>& full_config) const {
  std::size_t row = 0;
  for (NodeId p : cpt_parents_[v.index]) {
    row = row * static_cast<std::size_t>(cards_[p.index]) +
          static_cast<std::size_t>(full_config[p.index]);
  }
  return cpts_[v.index][row * static_cast<std::size_t>(cards_[v.index]) +
                        static_cast<std::size_t>(state)];
}

JointTable::JointTable(std::vector<int> cards, std::vector<double> p)
    : cards_(std::move(cards)), p_(std::move(p)) {}

double JointTable::probability(const std::vector<int>& config) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < cards_.size(); ++k) {
    idx = idx * static_cast<std::size_t>(cards_[k]) + static_cast<std::size_t>(config[k]);
  }
  return p_[idx];
}

std::vector<double> JointTable::marginal(const std::vector<NodeId>& nodes) const {
  std::size_t total = 1;
  for (NodeId v : nodes) total *= static_cast<std::size_t>(cards_[v.index]);
  std::vector<double> out(total, 0.0);
  for_each([&](const std::vector<int>& config, double prob) {
    std::size_t idx = 0;
    for (NodeId v : nodes) {
      idx = idx * static_cast<std::size_t>(cards_[v.index]) +
            static_cast<std::size_t>(config[v.index]);
    }
    out[idx] += prob;
  });
  return out;
}

JointTable joint_distribution(const DiscreteScm& m) {
  const auto& cards = m.cardinalities();
  std::uint64_t total = 1;
  for (int c : cards) {
    total *= static_cast<std::uint64_t>(c);
    if (total > kMaxJointStates) {
      throw StateSpaceTooLargeError("joint state space exceeds " +
                                    std::to_string(kMaxJointStates) + " configurations");
    }
  }
  std::vector<double> p(total, 0.0);
  std::vector<int> config(cards.size(), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    double prob = 1.0;
    for (int v = 0; v < static_cast<int>(cards.size()); ++v) {
      prob *= m.conditional(NodeId{v}, config[v], config);
    }
    p[idx] = prob;
    for (int k = static_cast<int>(config.size()) - 1; k >= 0; --k) {
      if (++config[k] < cards[k]) break;
      config[k] = 0;
    }
  }
  return JointTable(m.cardinalities(), std::move(p));
}

LinearScm LinearScm::create(
    Dag dag, std::vector<Node> nodes, const std::string& exposure_name,
    const std::string& outcome_name,
    const std::vector<std::tuple<std::string, std::string, double>>& interactions) {
  const int d = dag.node_count();
  if (static_cast<int>(nodes.size()) != d) {
    throw PreconditionError("node parameters must cover every node");
  }
  const NodeId exposure = dag.node(exposure_name);
  NodeId outcome{-1};
  std::vector<Interaction> terms;
  for (int v = 0; v < d; ++v) {
    const Node& nd = nodes[v];
    if (!(nd.noise_sd > 0.0)) {
      throw PreconditionError("node '" + dag.name(NodeId{v}) +
                              "' must have positive noise_sd");
    }
    const auto& parents = dag.parents_of(NodeId{v});
    if (nd.coeffs.size() != parents.size()) {
      throw PreconditionError("node '" + dag.name(NodeId{v}) +
                              "' must carry exactly one coefficient per parent");
    }
    for (NodeId p : parents) {
      if (nd.coeffs.find(dag.name(p)) == nd.coeffs.end()) {
        throw PreconditionError("node '" + dag.name(NodeId{v}) +
                                "' is missing a coefficient for parent '" + dag.name(p) + "'");
      }
    }
  }
  if (!outcome_name.empty()) {
    outcome = dag.node(outcome_name);
  } else if (!interactions.empty()) {
    throw PreconditionError("interaction terms require a declared outcome");
  }
  if (!interactions.empty()) {
    const QuerySpec q{exposure, outcome, 1.0, 0.0};
    const MediatorSets ms = mediator_sets(dag, q);
    if (!dag.has_edge(exposure, outcome)) {
      throw PreconditionError("interaction terms require the exposure to be a parent "
                              "of the outcome");
    }
    std::set<int> seen;
    for (const auto& [an, mn, gamma] : interactions) {
      const NodeId av = dag.node(an);
      const NodeId mv = dag.node(mn);
      if (!(av == exposure)) {
        throw PreconditionError("interaction factor '" + an + "' is not the exposure");
      }
      if (!ms.m_prime.contains(mv)) {
        throw PreconditionError("interaction mediator '" + mn +
                                "' is not a mediating parent of the outcome");
      }
      if (!seen.insert(mv.index).second) {
        throw PreconditionError("duplicate interaction mediator '" + mn + "'");
      }
      terms.push_back(Interaction{av, mv, gamma});
    }
  }
  LinearScm m(std::move(dag));
  m.nodes_ = std::move(nodes);
  m.exposure_ = exposure;
  m.outcome_ = outcome;
  m.interactions_ = std::move(terms);
  return m;
}

double LinearScm::coefficient(NodeId parent, NodeId child) const {
  const auto& coeffs = nodes_[child.index].coeffs;
  auto it = coeffs.find(dag_.name(parent));
  return it == coeffs.end() ? 0.0 : it->second;
}

const std::vector<double>& Dataset::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == name) return values[c];
  }
  throw Error("dataset has no column '" + name + "'");
}

namespace {

Dataset sample_impl(const DiscreteScm& m, const DoAssignment& intervention, int n,
                    std::uint64_t seed, std::uint64_t stream) {
  require_sample_size(n);
  const Dag& g = m.dag();
  auto fixed = intervention_map(g, intervention);
  for (auto& [v, value] : fixed) {
    value = checked_state(g, NodeId{v}, value, m.cardinality(NodeId{v}));
  }
  Dataset data;
  data.seed = seed;
  const auto& topo = g.topological_order();
  data.columns.reserve(topo.size());
  for (NodeId v : topo) data.columns.push_back(g.name(v));
  data.values.assign(topo.size(), std::vector<double>(n, 0.0));

  Rng rng(seed, stream);
  std::vector<int> config(g.node_count(), 0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < topo.size(); ++k) {
      const NodeId v = topo[k];
      int state = 0;
      if (auto it = fixed.find(v.index); it != fixed.end()) {
        state = static_cast<int>(it->second);
      } else {
        const double u = rng.next_unit();
        double acc = 0.0;
        const int card = m.cardinality(v);
        for (state = 0; state < card - 1; ++state) {
          acc += m.conditional(v, state, config);
          if (u < acc) break;
        }
      }
      config[v.index] = state;
      data.values[k][i] = static_cast<double>(state);
    }
  }
  return data;
}

Dataset sample_impl(const LinearScm& m, const DoAssignment& intervention, int n,
                    std::uint64_t seed, std::uint64_t stream) {
  require_sample_size(n);
  const Dag& g = m.dag();
  const auto fixed = intervention_map(g, intervention);
  Dataset data;
  data.seed = seed;
  const auto& topo = g.topological_order();
  data.columns.reserve(topo.size());
  for (NodeId v : topo) data.columns.push_back(g.name(v));
  data.values.assign(topo.size(), std::vector<double>(n, 0.0));

  Rng rng(seed, stream);
  std::vector<double> value(g.node_count(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < topo.size(); ++k) {
      const NodeId v = topo[k];
      double x = 0.0;
      if (auto it = fixed.find(v.index); it != fixed.end()) {
        x = it->second;
      } else {
        const LinearScm::Node& nd = m.node(v);
        x = nd.intercept;
        for (NodeId p : g.parents_of(v)) x += m.coefficient(p, v) * value[p.index];
        if (m.has_outcome() && v == m.outcome()) {
          for (const auto& term : m.interactions()) {
            x += term.gamma * value[term.exposure.index] * value[term.mediator.index];
          }
        }
        x += nd.noise_sd * rng.next_normal();
        if (v == m.exposure()) x = x > 0.0 ? 1.0 : 0.0;
      }
      value[v.index] = x;
      data.values[k][i] = x;
    }
  }
  return data;
}

// Means of target and its ancestors under an intervention. The exposure
// mean is P(latent > 0) with latent moments taken over its Gaussian
// ancestry; descendant means then follow by linearity of expectation.
double propagate_mean(const LinearScm& m, const std::map<int, double>& fixed,
                      NodeId target) {
  const Dag& g = m.dag();
  const VertexSet relevant = g.ancestral_closure(VertexSet(std::vector<NodeId>{target}));
  std::vector<double> mean(g.node_count(), 0.0);
  std::vector<bool> known(g.node_count(), false);

  // Covariances among the exposure's non-intervened Gaussian ancestors,
  // needed only when the exposure itself is relevant and free.
  const NodeId a = m.exposure();
  std::vector<double> cov;
  std::vector<int> cov_index(g.node_count(), -1);
  std::vector<NodeId> gaussians;
  const bool need_latent = relevant.contains(a) && fixed.find(a.index) == fixed.end();
  if (need_latent) {
    for (NodeId v : g.ancestors(a)) {
      if (fixed.find(v.index) == fixed.end()) gaussians.push_back(v);
    }
    std::sort(gaussians.begin(), gaussians.end(), [&](NodeId u, NodeId v) {
      return g.topo_rank(u) < g.topo_rank(v);
    });
    const int gn = static_cast<int>(gaussians.size());
    for (int i = 0; i < gn; ++i) cov_index[gaussians[i].index] = i;
    cov.assign(static_cast<std::size_t>(gn) * gn, 0.0);
    auto at = [&](int i, int j) -> double& { return cov[static_cast<std::size_t>(i) * gn + j]; };
    for (int i = 0; i < gn; ++i) {
      const NodeId v = gaussians[i];
      for (int j = 0; j < i; ++j) {
        double c = 0.0;
        for (NodeId p : g.parents_of(v)) {
          const int pi = cov_index[p.index];
          if (pi >= 0) c += m.coefficient(p, v) * at(pi, j);
        }
        at(i, j) = c;
        at(j, i) = c;
      }
      double var = m.node(v).noise_sd * m.node(v).noise_sd;
      for (NodeId p : g.parents_of(v)) {
        const int pi = cov_index[p.index];
        if (pi < 0) continue;
        for (NodeId r : g.parents_of(v)) {
          const int ri = cov_index[r.index];
          if (ri >= 0) var += m.coefficient(p, v) * m.coefficient(r, v) * at(pi, ri);
        }
      }
      at(i, i) = var;
    }
  }

  for (NodeId v : g.topological_order()) {
    if (!relevant.contains(v)) continue;
    if (auto it = fixed.find(v.index); it != fixed.end()) {
      mean[v.index] = it->second;
      known[v.index] = true;
      continue;
    }
    const LinearScm::Node& nd = m.node(v);
    double mu = nd.intercept;
    for (NodeId p : g.parents_of(v)) mu += m.coefficient(p, v) * mean[p.index];
    if (v == a) {
      double latent_var = nd.noise_sd * nd.noise_sd;
      const int gn = static_cast<int>(gaussians.size());
      auto at = [&](int i, int j) { return cov[static_cast<std::size_t>(i) * gn + j]; };
      for (NodeId p : g.parents_of(v)) {
        const int pi = cov_index[p.index];
        if (pi < 0) continue;
        for (NodeId r : g.parents_of(v)) {
          const int ri = cov_index[r.index];
          if (ri >= 0) latent_var += m.coefficient(p, v) * m.coefficient(r, v) * at(pi, ri);
        }
      }
      mu = normal_cdf(mu / std::sqrt(latent_var));
    } else if (m.has_outcome() && v == m.outcome()) {
      for (const auto& term : m.interactions()) {
        const auto ita = fixed.find(term.exposure.index);
        const auto itm = fixed.find(term.mediator.index);
        if (ita != fixed.end()) {
          mu += term.gamma * ita->second * mean[term.mediator.index];
        } else if (itm != fixed.end()) {
          mu += term.gamma * itm->second * mean[term.exposure.index];
        } else {
          throw PreconditionError(
              "mean of the outcome requires an intervened factor in every "
              "interaction term");
        }
      }
    }
    mean[v.index] = mu;
    known[v.index] = true;
  }
  if (!known[target.index]) {
    throw InternalCheckError("mean propagation missed the target node");
  }
  return mean[target.index];
}

}  // namespace

Dataset sample(const DiscreteScm& m, int n, std::uint64_t seed, std::uint64_t stream) {
  return sample_impl(m, {}, n, seed, stream);
}

Dataset sample(const LinearScm& m, int n, std::uint64_t seed, std::uint64_t stream) {
  return sample_impl(m, {}, n, seed, stream);
}

Dataset sample_do(const DiscreteScm& m, const DoAssignment& intervention, int n,
                  std::uint64_t seed, std::uint64_t stream) {
  return sample_impl(m, intervention, n, seed, stream);
}

Dataset sample_do(const LinearScm& m, const DoAssignment& intervention, int n,
                  std::uint64_t seed, std::uint64_t stream) {
  return sample_impl(m, intervention, n, seed, stream);
}

double do_expectation(const DiscreteScm& m, const DoAssignment& intervention,
                      NodeId target) {
  const Dag& g = m.dag();
  auto fixed = intervention_map(g, intervention);
  if (fixed.count(target.index) > 0) {
    throw TargetIntervenedError("target '" + g.name(target) + "' is intervened");
  }
  for (auto& [v, value] : fixed) {
    value = checked_state(g, NodeId{v}, value, m.cardinality(NodeId{v}));
  }

  // Only the target's ancestors in the truncated graph matter; everything
  // else integrates to one exactly. Intervened nodes are boundary
  // constants whose own ancestry is cut.
  std::vector<bool> relevant(g.node_count(), false);
  std::vector<NodeId> order;
  std::vector<NodeId> stack{target};
  relevant[target.index] = true;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (fixed.count(v.index) > 0) continue;
    for (NodeId p : g.parents_of(v)) {
      if (!relevant[p.index]) {
        relevant[p.index] = true;
        stack.push_back(p);
      }
    }
  }
  std::vector<NodeId> free_nodes;
  for (NodeId v : g.topological_order()) {
    if (relevant[v.index] && fixed.count(v.index) == 0) free_nodes.push_back(v);
  }
  std::uint64_t total = 1;
  for (NodeId v : free_nodes) {
    total *= static_cast<std::uint64_t>(m.cardinality(v));
    if (total > kMaxJointStates) {
      throw StateSpaceTooLargeError("truncated state space exceeds " +
                                    std::to_string(kMaxJointStates) + " configurations");
    }
  }

  std::vector<int> config(g.node_count(), 0);
  for (const auto& [v, value] : fixed) config[v] = static_cast<int>(value);
  double expectation = 0.0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (auto it = free_nodes.rbegin(); it != free_nodes.rend(); ++it) {
      const auto card = static_cast<std::uint64_t>(m.cardinality(*it));
      config[it->index] = static_cast<int>(rest % card);
      rest /= card;
    }
    double w = 1.0;
    for (NodeId v : free_nodes) w *= m.conditional(v, config[v.index], config);
    expectation += w * static_cast<double>(config[target.index]);
  }
  return expectation;
}

double do_expectation(const LinearScm& m, const DoAssignment& intervention,
                      NodeId target) {
  const Dag& g = m.dag();
  const auto fixed = intervention_map(g, intervention);
  if (fixed.count(target.index) > 0) {
    throw TargetIntervenedError("target '" + g.name(target) + "' is intervened");
  }
  if (auto it = fixed.find(m.exposure().index); it != fixed.end()) {
    if (it->second != 0.0 && it->second != 1.0) {
      throw PreconditionError("exposure interventions must be 0 or 1");
    }
  }
  return propagate_mean(m, fixed, target);
}

double node_mean(const LinearScm& m, NodeId v) { return propagate_mean(m, {}, v); }

double true_wcde(const DiscreteScm& m, const QuerySpec& q) {
  require_binary_exposure(m, q);
  const MediatorSets ms = mediator_sets(m.dag(), q);
  const std::vector<NodeId>& mp = ms.m_prime.members();

  std::vector<double> weights;
  if (mp.empty()) {
    weights = {1.0};
  } else {
    weights = joint_distribution(m).marginal(mp);
  }
  std::vector<int> mp_config(mp.size(), 0);
  double total = 0.0;
  for (std::size_t idx = 0; idx < weights.size(); ++idx) {
    if (weights[idx] > 0.0) {
      DoAssignment base;
      for (std::size_t k = 0; k < mp.size(); ++k) {
        base.emplace_back(mp[k], static_cast<double>(mp_config[k]));
      }
      DoAssignment hi = base;
      hi.emplace_back(q.exposure, q.a);
      DoAssignment lo = base;
      lo.emplace_back(q.exposure, q.a_star);
      total += weights[idx] *
               (do_expectation(m, hi, q.outcome) - do_expectation(m, lo, q.outcome));
    }
    for (int k = static_cast<int>(mp.size()) - 1; k >= 0; --k) {
      if (++mp_config[k] < m.cardinality(mp[k])) break;
      mp_config[k] = 0;
    }
  }
  return total;
}

double true_wcde(const LinearScm& m, const QuerySpec& q) {
  validate_query(m.dag(), q);
  if (!(q.exposure == m.exposure())) {
    throw PreconditionError("query exposure does not match the model exposure");
  }
  if (!m.interactions().empty() && !(q.outcome == m.outcome())) {
    throw PreconditionError("query outcome does not match the model outcome");
  }
  for (double level : {q.a, q.a_star}) {
    if (level != 0.0 && level != 1.0) {
      throw PreconditionError("exposure levels must be 0 or 1");
    }
  }
  double direct = m.coefficient(q.exposure, q.outcome);
  for (const auto& term : m.interactions()) {
    direct += term.gamma * node_mean(m, term.mediator);
  }
  return direct * (q.a - q.a_star);
}

double population_wcde_z(const DiscreteScm& m, const QuerySpec& q,
                         const AdjustmentSet& adj) {
  require_binary_exposure(m, q);
  split_adjustment(m.dag(), q, adj.z);  // revalidates endpoints
  const Dag& g = m.dag();
  const JointTable joint = joint_distribution(m);

  const std::vector<NodeId>& z1 = adj.z1.members();
  const std::vector<NodeId>& z2 = adj.z2.members();
  const std::vector<double> p1 = z1.empty() ? std::vector<double>{1.0} : joint.marginal(z1);
  const std::vector<double> p2 = z2.empty() ? std::vector<double>{1.0} : joint.marginal(z2);

  // Marginal over (A, z1..., z2..., Y) with Y fastest.
  std::vector<NodeId> axes;
  axes.push_back(q.exposure);
  axes.insert(axes.end(), z1.begin(), z1.end());
  axes.insert(axes.end(), z2.begin(), z2.end());
  axes.push_back(q.outcome);
  const std::vector<double> pazy = joint.marginal(axes);
  const int y_card = m.cardinality(q.outcome);

  auto describe = [&](int level, std::size_t u, std::size_t v) {
    std::string out = g.name(q.exposure) + "=" + std::to_string(level);
    std::size_t rest = u;
    for (auto it = z1.rbegin(); it != z1.rend(); ++it) {
      const auto card = static_cast<std::size_t>(m.cardinality(*it));
      out = g.name(*it) + "=" + std::to_string(rest % card) + ", " + out;
      rest /= card;
    }
    rest = v;
    for (auto it = z2.rbegin(); it != z2.rend(); ++it) {
      const auto card = static_cast<std::size_t>(m.cardinality(*it));
      out += ", " + g.name(*it) + "=" + std::to_string(rest % card);
      rest /= card;
    }
    return out;
  };

  const int a_hi = static_cast<int>(q.a);
  const int a_lo = static_cast<int>(q.a_star);
  double t_hi = 0.0;
  double t_lo = 0.0;
  for (std::size_t u = 0; u < p1.size(); ++u) {
    for (std::size_t v = 0; v < p2.size(); ++v) {
      const double w = p1[u] * p2[v];
      if (w == 0.0) continue;
      for (int level : {a_hi, a_lo}) {
        const std::size_t base =
            (static_cast<std::size_t>(level) * p1.size() * p2.size() + u * p2.size() + v) *
            static_cast<std::size_t>(y_card);
        double mass = 0.0;
        double moment = 0.0;
        for (int y = 0; y < y_card; ++y) {
          mass += pazy[base + y];
          moment += pazy[base + y] * static_cast<double>(y);
        }
        if (mass <= 0.0) {
          throw PositivityViolationError(
              "positivity violated at cell " + describe(level, u, v),
              describe(level, u, v));
        }
        const double mu = moment / mass;
        (level == a_hi ? t_hi : t_lo) += w * mu;
      }
    }
  }
  return t_hi - t_lo;
}

}  // namespace wcde
