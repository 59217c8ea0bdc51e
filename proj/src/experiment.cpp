#include "wcde/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>

#include "wcde/adjustment.hpp"
#include "wcde/errors.hpp"

namespace wcde {

namespace {

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

double pairwise_mean(const std::vector<double>& x) {
  return pairwise_sum(x.data(), x.size()) / static_cast<double>(x.size());
}

// Unbiased variance across replications, summed pairwise around the mean.
double replication_variance(const std::vector<double>& x) {
  const std::size_t r = x.size();
  const double mean = pairwise_mean(x);
  std::vector<double> sq(r);
  for (std::size_t i = 0; i < r; ++i) sq[i] = (x[i] - mean) * (x[i] - mean);
  return pairwise_sum(sq.data(), r) / static_cast<double>(r - 1);
}

// Leave-one-out jackknife standard error of the unbiased variance. With
// exactly two replications the jackknife degenerates, so fall back to the
// normal-theory approximation sd(s^2) ~= s^2 * sqrt(2 / (r - 1)).
double variance_mcse(const std::vector<double>& x) {
  const std::size_t r = x.size();
  const double s2 = replication_variance(x);
  if (r == 2) return s2 * std::sqrt(2.0);
  const double mean = pairwise_mean(x);
  std::vector<double> centered(r), centered_sq(r);
  for (std::size_t i = 0; i < r; ++i) {
    centered[i] = x[i] - mean;
    centered_sq[i] = centered[i] * centered[i];
  }
  const double sum_c = pairwise_sum(centered.data(), r);
  const double sum_c2 = pairwise_sum(centered_sq.data(), r);
  std::vector<double> loo(r);
  for (std::size_t i = 0; i < r; ++i) {
    const double s1 = sum_c - centered[i];
    const double s2i = sum_c2 - centered_sq[i];
    loo[i] = (s2i - s1 * s1 / static_cast<double>(r - 1)) / static_cast<double>(r - 2);
  }
  const double loo_mean = pairwise_mean(loo);
  std::vector<double> dev(r);
  for (std::size_t i = 0; i < r; ++i) dev[i] = (loo[i] - loo_mean) * (loo[i] - loo_mean);
  const double var_jack =
      pairwise_sum(dev.data(), r) * static_cast<double>(r - 1) / static_cast<double>(r);
  return std::sqrt(var_jack);
}

std::string set_label(const VertexSet& set, const Dag& g) {
  std::string out;
  for (const std::string& name : set.names(g)) {
    if (!out.empty()) out += ",";
    out += name;
  }
  return out;
}

}  // namespace

const VarianceRow& VarianceTable::row(const VertexSet& set) const {
  for (const VarianceRow& r : rows) {
    if (r.set == set) return r;
  }
  throw MissingRowError("no variance row for the requested adjustment set");
}

VarianceTable run_replications(const ExperimentConfig& cfg) {
  const Dag& g = std::visit([](auto* m) -> const Dag& { return m->dag(); }, cfg.scm);
  validate_query(g, cfg.q);
  if (cfg.reps < 2) throw PreconditionError("need at least two replications");
  if (cfg.n < 1) throw InvalidSampleSizeError("sample size must be positive");
  if (cfg.adjust_sets.empty()) throw PreconditionError("no adjustment sets given");

  std::vector<AdjustmentSet> splits;
  splits.reserve(cfg.adjust_sets.size());
  for (const VertexSet& z : cfg.adjust_sets) {
    if (!cfg.allow_invalid) {
      const VasReport report = check_vas(g, cfg.q, z);
      if (!report.valid) {
        std::string why;
        for (const CriterionResult& c : report.criteria) {
          if (!c.pass) {
            why = "criterion " + std::to_string(c.id) + ": " + c.witness;
            break;
          }
        }
        throw PreconditionError("adjustment set {" + set_label(z, g) +
                                "} is not valid: " + why);
      }
    }
    splits.push_back(split_adjustment(g, cfg.q, z));
  }

  const std::size_t n_sets = splits.size();
  const std::size_t reps = static_cast<std::size_t>(cfg.reps);
  std::vector<std::vector<double>> estimates(n_sets, std::vector<double>(reps, 0.0));
  std::vector<std::vector<double>> asym_vars(n_sets, std::vector<double>(reps, 0.0));

  unsigned int want = cfg.threads > 0 ? static_cast<unsigned int>(cfg.threads)
                                      : std::thread::hardware_concurrency();
  if (want == 0) want = 1;
  if (want > reps) want = static_cast<unsigned int>(reps);

  std::atomic<std::size_t> next_rep{0};
  std::atomic<bool> failed{false};
  std::string first_error_note;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t rep = next_rep.fetch_add(1, std::memory_order_relaxed);
      if (rep >= reps) return;
      std::size_t set_index = 0;
      try {
        const Dataset data = std::visit(
            [&](auto* m) { return sample(*m, cfg.n, cfg.seed, rep + 1); }, cfg.scm);
        for (set_index = 0; set_index < n_sets; ++set_index) {
          const EstimateReport est =
              cfg.method == EstimatorKind::PlugIn
                  ? plugin_estimate(data, g, cfg.q, splits[set_index], cfg.nuisance)
                  : one_step_estimate(data, g, cfg.q, splits[set_index], cfg.nuisance);
          estimates[set_index][rep] = est.wcde;
          asym_vars[set_index][rep] = est.var_hat;
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) {
          first_error_note = "replication " + std::to_string(rep + 1) + ", set {" +
                             set_label(cfg.adjust_sets[set_index], g) + "}: " + e.what();
        }
        return;
      }
    }
  };

  if (want <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(want);
    for (unsigned int t = 0; t < want; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) {
    throw Error(first_error_note);
  }

  VarianceTable table;
  table.n = cfg.n;
  table.reps = cfg.reps;
  table.seed = cfg.seed;
  table.rows.reserve(n_sets);
  for (std::size_t s = 0; s < n_sets; ++s) {
    VarianceRow row;
    row.set = cfg.adjust_sets[s];
    row.label = set_label(row.set, g);
    row.mean_estimate = pairwise_mean(estimates[s]);
    row.emp_variance = replication_variance(estimates[s]);
    row.mean_asym_var = pairwise_mean(asym_vars[s]);
    row.mcse = variance_mcse(estimates[s]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

OrderingReport ordering_check(const VarianceTable& table, const VertexSet& oset) {
  const VarianceRow& ref = table.row(oset);
  OrderingReport report;
  report.reference_label = ref.label;
  report.reference_variance = ref.emp_variance;
  for (const VarianceRow& r : table.rows) {
    if (r.set == oset) continue;
    OrderingEntry entry;
    entry.label = r.label;
    entry.variance = r.emp_variance;
    entry.tolerance = 2.0 * std::sqrt(r.mcse * r.mcse + ref.mcse * ref.mcse);
    entry.violation = entry.variance + entry.tolerance < ref.emp_variance;
    if (entry.violation) report.pass = false;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

bool variance_leq(const VarianceTable& table, const VertexSet& lhs, const VertexSet& rhs) {
  const VarianceRow& a = table.row(lhs);
  const VarianceRow& b = table.row(rhs);
  const double tol = 2.0 * std::sqrt(a.mcse * a.mcse + b.mcse * b.mcse);
  return a.emp_variance <= b.emp_variance + tol;
}

BiasReport bias_experiment(const DiscreteScm& m, const QuerySpec& q,
                           const VertexSet& invalid_set, const VertexSet& valid_set,
                           std::uint64_t seed, int n, double gap_threshold) {
  const Dag& g = m.dag();
  validate_query(g, q);

  const VasReport invalid_report = check_vas(g, q, invalid_set);
  for (int k = 0; k < 3; ++k) {
    if (!invalid_report.criteria[k].pass) {
      throw PreconditionError("invalid_set must satisfy criteria 1-3; criterion " +
                              std::to_string(k + 1) +
                              " failed: " + invalid_report.criteria[k].witness);
    }
  }
  if (invalid_report.criteria[3].pass) {
    throw PreconditionError("invalid_set must fail criterion 4, but it is valid");
  }
  const VasReport valid_report = check_vas(g, q, valid_set);
  if (!valid_report.valid) {
    throw PreconditionError("valid_set does not satisfy the adjustment condition");
  }

  BiasReport report;
  report.n = n;
  report.seed = seed;
  report.truth = true_wcde(m, q);
  report.population_invalid =
      population_wcde_z(m, q, split_adjustment(g, q, invalid_set));
  report.population_valid = population_wcde_z(m, q, split_adjustment(g, q, valid_set));
  report.population_gap = std::abs(report.population_invalid - report.truth);
  if (!(report.population_gap > gap_threshold)) {
    throw FixtureNotAdversarialError(
        "population gap " + std::to_string(report.population_gap) +
            " does not exceed " + std::to_string(gap_threshold) +
            "; regenerate the fixture",
        report.population_gap);
  }

  const Dataset data = sample(m, n, seed, 0);
  NuisanceOptions opts;
  opts.family = NuisanceFamily::DiscreteCells;
  report.estimate_invalid =
      one_step_estimate(data, g, q, split_adjustment(g, q, invalid_set), opts).wcde;
  report.estimate_valid =
      one_step_estimate(data, g, q, split_adjustment(g, q, valid_set), opts).wcde;
  report.estimator_gap = std::abs(report.estimate_invalid - report.truth);
  return report;
}

}  // namespace wcde
