#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "wcde/estimators.hpp"
#include "wcde/scm.hpp"

namespace wcde {

// Monte Carlo replication study over a fixed model and a list of candidate
// adjustment sets. Each replication draws one dataset from stream
// (seed, rep) and produces one estimate per adjustment set, so estimates
// are paired across sets and adding a set never perturbs existing columns.
struct ExperimentConfig {
  std::variant<const DiscreteScm*, const LinearScm*> scm;
  QuerySpec q;
  std::vector<VertexSet> adjust_sets;
  int n = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  EstimatorKind method = EstimatorKind::OneStep;
  NuisanceOptions nuisance;
  // Skip adjustment-set validation; required for bias demonstrations that
  // deliberately estimate under a non-valid set.
  bool allow_invalid = false;
  int threads = 0;  // 0 = hardware concurrency
};

struct VarianceRow {
  VertexSet set;
  std::string label;  // comma-joined node names
  double mean_estimate = 0.0;
  double emp_variance = 0.0;   // unbiased variance of estimates across reps
  double mean_asym_var = 0.0;  // mean of per-replication variance estimates
  double mcse = 0.0;           // Monte Carlo SE of emp_variance (jackknife)
};

struct VarianceTable {
  std::vector<VarianceRow> rows;
  int n = 0;
  int reps = 0;
  std::uint64_t seed = 0;

  const VarianceRow& row(const VertexSet& set) const;  // MissingRowError
};

// Runs cfg.reps replications, possibly concurrently. The result is a pure
// function of cfg: replication r samples with stream (seed, r) and moments
// are pairwise-summed in replication order, so the table is bit-identical
// across thread counts. Estimator failures inside a replication are
// rethrown as Error annotated with the replication and set.
VarianceTable run_replications(const ExperimentConfig& cfg);

// One row of an ordering comparison against the reference set.
struct OrderingEntry {
  std::string label;
  double variance = 0.0;
  double tolerance = 0.0;  // 2 * combined MCSE
  bool violation = false;  // variance + tolerance < reference variance
};

struct OrderingReport {
  std::string reference_label;
  double reference_variance = 0.0;
  std::vector<OrderingEntry> entries;
  bool pass = true;
};

// Checks that no set beats the reference set's empirical variance by more
// than twice the combined Monte Carlo standard error. Used with the
// optimal set as reference: any flagged violation contradicts its
// variance-minimality up to MC noise.
OrderingReport ordering_check(const VarianceTable& table, const VertexSet& oset);

// True when emp_variance(lhs) <= emp_variance(rhs) + 2 * combined MCSE.
bool variance_leq(const VarianceTable& table, const VertexSet& lhs, const VertexSet& rhs);

// Bias demonstration on a discrete model: an adjustment set that fails
// only the final projection criterion identifies a different functional,
// so its population value moves away from the true effect while a fully
// valid set stays on it. The fixture must be adversarial enough that the
// gap clears the threshold.
struct BiasReport {
  double truth = 0.0;
  double population_invalid = 0.0;
  double population_valid = 0.0;
  double population_gap = 0.0;  // |population_invalid - truth|
  double estimate_invalid = 0.0;
  double estimate_valid = 0.0;
  double estimator_gap = 0.0;  // |estimate_invalid - truth|
  int n = 0;
  std::uint64_t seed = 0;
};

// Preconditions: invalid_set passes criteria 1-3 and fails criterion 4;
// valid_set passes all four. Throws FixtureNotAdversarialError when the
// population gap does not exceed gap_threshold; otherwise also reports the
// estimator-level gap on one sample of size n.
BiasReport bias_experiment(const DiscreteScm& m, const QuerySpec& q,
                           const VertexSet& invalid_set, const VertexSet& valid_set,
                           std::uint64_t seed = 1, int n = 50000,
                           double gap_threshold = 0.01);

}  // namespace wcde
