#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wcde/adjustment.hpp"
#include "wcde/graph.hpp"
#include "wcde/query.hpp"

namespace wcde {

// Hard cap on enumerated joint state spaces.
inline constexpr std::uint64_t kMaxJointStates = 1u << 20;

// Intervention assignment, node -> forced value.
using DoAssignment = std::vector<std::pair<NodeId, double>>;

// Discrete structural causal model. Each node carries a conditional
// probability table over its states given its parents' states. Parent axes
// are ordered by topological rank; the last axis varies fastest. Row r of
// node v is cpt[v][r * card(v) .. (r + 1) * card(v)).
class DiscreteScm {
 public:
  // cardinalities and cpts are indexed by node index. Every row must be
  // nonnegative and sum to 1 within 1e-12.
  static DiscreteScm create(Dag dag, std::vector<int> cardinalities,
                            std::vector<std::vector<double>> cpts);

  const Dag& dag() const { return dag_; }
  int cardinality(NodeId v) const { return cards_[v.index]; }
  const std::vector<int>& cardinalities() const { return cards_; }
  const std::vector<double>& cpt(NodeId v) const { return cpts_[v.index]; }
  // Parents of v in CPT axis order (ascending topological rank).
  const std::vector<NodeId>& cpt_parents(NodeId v) const { return cpt_parents_[v.index]; }

  // P(v = state | parent states), parent states indexed by node.
  double conditional(NodeId v, int state, const std::vector<int>& full_config) const;

 private:
  explicit DiscreteScm(Dag g) : dag_(std::move(g)) {}

  Dag dag_;
  std::vector<int> cards_;
  std::vector<std::vector<double>> cpts_;
  std::vector<std::vector<NodeId>> cpt_parents_;
};

// Exact joint distribution of a DiscreteScm, laid out in mixed radix over
// node index order with the last node varying fastest.
class JointTable {
 public:
  JointTable(std::vector<int> cards, std::vector<double> p);

  const std::vector<int>& cardinalities() const { return cards_; }
  const std::vector<double>& probabilities() const { return p_; }
  double probability(const std::vector<int>& config) const;

  // Marginal over the given nodes, mixed radix in the given node order.
  std::vector<double> marginal(const std::vector<NodeId>& nodes) const;

  // Iterate configurations in table order. f(config, probability).
  template <typename F>
  void for_each(F&& f) const {
    std::vector<int> config(cards_.size(), 0);
    for (double prob : p_) {
      f(config, prob);
      for (int k = static_cast<int>(config.size()) - 1; k >= 0; --k) {
        if (++config[k] < cards_[k]) break;
        config[k] = 0;
      }
    }
  }

 private:
  std::vector<int> cards_;
  std::vector<double> p_;
};

JointTable joint_distribution(const DiscreteScm& m);

// Linear-Gaussian structural causal model with one binary exposure. The
// exposure is an indicator of its latent linear equation exceeding zero.
// Optional exposure-by-mediator interaction terms enter the outcome
// equation only.
class LinearScm {
 public:
  struct Node {
    double intercept = 0.0;
    double noise_sd = 1.0;
    std::map<std::string, double> coeffs;  // parent name -> weight
  };

  struct Interaction {
    NodeId exposure;
    NodeId mediator;
    double gamma = 0.0;
  };

  // outcome_name may be empty when there are no interactions. Every
  // interaction must pair the exposure with one of its mediating parents
  // of the outcome, and the exposure must be a parent of the outcome.
  static LinearScm create(Dag dag, std::vector<Node> nodes, const std::string& exposure_name,
                          const std::string& outcome_name = "",
                          const std::vector<std::tuple<std::string, std::string, double>>&
                              interactions = {});

  const Dag& dag() const { return dag_; }
  NodeId exposure() const { return exposure_; }
  bool has_outcome() const { return outcome_.index >= 0; }
  NodeId outcome() const { return outcome_; }
  const Node& node(NodeId v) const { return nodes_[v.index]; }
  const std::vector<Interaction>& interactions() const { return interactions_; }
  double coefficient(NodeId parent, NodeId child) const;

 private:
  explicit LinearScm(Dag g) : dag_(std::move(g)) {}

  Dag dag_;
  std::vector<Node> nodes_;
  NodeId exposure_{-1};
  NodeId outcome_{-1};
  std::vector<Interaction> interactions_;
};

// Rectangular numeric dataset, column-major. Columns follow the sampled
// graph's topological order.
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  // values[c][row]
  std::uint64_t seed = 0;

  int n() const { return columns.empty() ? 0 : static_cast<int>(values[0].size()); }
  const std::vector<double>& column(const std::string& name) const;
};

// Ancestral sampling. Replicate streams should pass distinct stream ids;
// the draw for (seed, stream) is independent of any other stream.
Dataset sample(const DiscreteScm& m, int n, std::uint64_t seed, std::uint64_t stream = 0);
Dataset sample(const LinearScm& m, int n, std::uint64_t seed, std::uint64_t stream = 0);

// Sampling under an intervention: listed nodes are forced, their equations
// skipped.
Dataset sample_do(const DiscreteScm& m, const DoAssignment& intervention, int n,
                  std::uint64_t seed, std::uint64_t stream = 0);
Dataset sample_do(const LinearScm& m, const DoAssignment& intervention, int n,
                  std::uint64_t seed, std::uint64_t stream = 0);

// E[target | do(intervention)] by truncated factorization. The discrete
// form sums exactly over the ancestors of the target; the linear form
// propagates means in closed form (the exposure mean passes through a
// normal CDF). Interaction terms require at least one factor to be
// intervened when the target is the outcome.
double do_expectation(const DiscreteScm& m, const DoAssignment& intervention, NodeId target);
double do_expectation(const LinearScm& m, const DoAssignment& intervention, NodeId target);

// Weighted controlled direct effect: the controlled contrast at each fixed
// mediating-parent configuration, averaged under the observational law of
// those parents.
double true_wcde(const DiscreteScm& m, const QuerySpec& q);
double true_wcde(const LinearScm& m, const QuerySpec& q);

// Identification functional for an adjustment set: T(level) averages
// E[Y | A, z1, z2] over the product of the marginal laws of z1 and z2,
// and the result is T(a) - T(a_star). Requires positivity of
// p(level, z1, z2) over the product support.
double population_wcde_z(const DiscreteScm& m, const QuerySpec& q, const AdjustmentSet& adj);

// Observational mean of a node (exact; linear form handles the thresholded
// exposure through its latent Gaussian).
double node_mean(const LinearScm& m, NodeId v);

}  // namespace wcde
