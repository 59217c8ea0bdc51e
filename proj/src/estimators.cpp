#include "wcde/estimators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace wcde {

namespace {

constexpr int kMaxDiscreteLevels = 64;

struct ColumnCoder {
  // Distinct-value codes, or quantile-bin codes for continuous columns.
  std::vector<double> edges;          // nonempty => binned
  std::map<double, int> levels;       // value -> code when not binned
  std::vector<std::string> describe;  // per code, for messages

  int levels_count() const {
    return edges.empty() ? static_cast<int>(levels.size())
                         : static_cast<int>(edges.size()) + 1;
  }

  int code(double v) const {
    if (edges.empty()) {
      auto it = levels.find(v);
      if (it == levels.end()) {
        throw InternalCheckError("value missing from discrete column dictionary");
      }
      return it->second;
    }
    return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), v) -
                            edges.begin());
  }
};

ColumnCoder make_coder(const std::string& name, const std::vector<double>& col,
                       const NuisanceOptions& opts, bool allow_bins) {
  ColumnCoder coder;
  std::vector<double> sorted = col;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (!allow_bins || static_cast<int>(distinct.size()) <= kMaxDiscreteLevels) {
    if (allow_bins == false && static_cast<int>(distinct.size()) > kMaxDiscreteLevels) {
      throw UnsupportedContinuousWeightsError(
          "column '" + name + "' has " + std::to_string(distinct.size()) +
          " distinct values; saturated cells require discrete data");
    }
    for (double v : distinct) {
      coder.describe.push_back(name + "=" + std::to_string(v));
      coder.levels.emplace(v, static_cast<int>(coder.levels.size()));
    }
    return coder;
  }
  if (opts.bins <= 0) {
    throw UnsupportedContinuousWeightsError(
        "column '" + name + "' looks continuous (" + std::to_string(distinct.size()) +
        " distinct values) and binning is disabled; set bins > 0");
  }
  // Quantile edges over the observed values; duplicate edges collapse.
  const int n = static_cast<int>(sorted.size());
  std::vector<double> edges;
  for (int j = 1; j < opts.bins; ++j) {
    edges.push_back(sorted[static_cast<std::size_t>(j) * n / opts.bins]);
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  coder.edges = std::move(edges);
  for (int b = 0; b <= static_cast<int>(coder.edges.size()); ++b) {
    coder.describe.push_back(name + "#bin" + std::to_string(b));
  }
  return coder;
}

std::string describe_cell(const std::vector<ColumnCoder>& coders, int code) {
  if (coders.empty()) return "()";
  std::string out;
  for (auto it = coders.rbegin(); it != coders.rend(); ++it) {
    const int levels = it->levels_count();
    const int this_code = code % levels;
    code /= levels;
    out = it->describe[this_code] + (out.empty() ? "" : ", " + out);
  }
  return "(" + out + ")";
}

}  // namespace

NuisanceModels::Eval NuisanceModels::evaluate(int which, int row) const {
  Eval e;
  const int c1 = cell1_[row];
  const int c2 = cell2_[row];
  e.weight_numerator = p_z1_[c1] * p_z2_[c2];
  e.p_joint = p_joint_[which][static_cast<std::size_t>(c1) * n_cell2_ + c2];
  if (family_ == NuisanceFamily::DiscreteCells) {
    e.mu = mu_cell_[which][static_cast<std::size_t>(c1) * n_cell2_ + c2];
    e.eta1 = eta1_cell_[which][c1];
    e.eta2 = eta2_cell_[which][c2];
    return e;
  }
  std::vector<double> z1v(raw_z1_.size());
  std::vector<double> z2v(raw_z2_.size());
  for (std::size_t k = 0; k < raw_z1_.size(); ++k) z1v[k] = raw_z1_[k][row];
  for (std::size_t k = 0; k < raw_z2_.size(); ++k) z2v[k] = raw_z2_[k][row];
  e.mu = mu_linear(which, z1v, z2v);
  e.eta1 = mu_linear(which, z1v, z2_mean_);
  e.eta2 = mu_linear(which, z1_mean_, z2v);
  return e;
}

double NuisanceModels::mu_cross(int which, int row_z1, int row_z2) const {
  if (family_ == NuisanceFamily::DiscreteCells) {
    return mu_cell_[which][static_cast<std::size_t>(cell1_[row_z1]) * n_cell2_ +
                           cell2_[row_z2]];
  }
  std::vector<double> z1v(raw_z1_.size());
  std::vector<double> z2v(raw_z2_.size());
  for (std::size_t k = 0; k < raw_z1_.size(); ++k) z1v[k] = raw_z1_[k][row_z1];
  for (std::size_t k = 0; k < raw_z2_.size(); ++k) z2v[k] = raw_z2_[k][row_z2];
  return mu_linear(which, z1v, z2v);
}

double NuisanceModels::mu_linear(int which, const std::vector<double>& z1v,
                                 const std::vector<double>& z2v) const {
  const double level = level_value(which);
  std::size_t k = 0;
  double out = beta_[k++];
  out += beta_[k++] * level;
  for (double z : z1v) out += beta_[k++] * z;
  for (double z : z2v) out += beta_[k++] * z;
  if (interaction_terms_) {
    for (double z : z1v) out += beta_[k++] * level * z;
  }
  return out;
}

NuisanceModels fit_nuisances(const Dataset& data, const Dag& g, const QuerySpec& q,
                             const AdjustmentSet& adj, const NuisanceOptions& opts) {
  validate_query(g, q);
  split_adjustment(g, q, adj.z);
  const int n = data.n();
  if (n < 2) {
    throw PreconditionError("need at least two observations");
  }
  const std::vector<double>& a_col = data.column(g.name(q.exposure));
  const std::vector<double>& y_col = data.column(g.name(q.outcome));

  NuisanceModels mm;
  mm.family_ = opts.family;
  mm.interaction_terms_ = opts.interaction_terms;
  mm.n_ = n;
  mm.a_ = q.a;
  mm.a_star_ = q.a_star;
  mm.a_name_ = g.name(q.exposure);
  mm.y_name_ = g.name(q.outcome);
  for (double v : a_col) {
    if (v != q.a && v != q.a_star) {
      throw PreconditionError("treatment column contains level " + std::to_string(v) +
                              " outside {a, a_star}");
    }
  }

  const bool allow_bins = opts.family == NuisanceFamily::LinearBasis;
  std::vector<ColumnCoder> coders1;
  std::vector<ColumnCoder> coders2;
  for (NodeId v : adj.z1) {
    mm.raw_z1_.push_back(data.column(g.name(v)));
    coders1.push_back(make_coder(g.name(v), mm.raw_z1_.back(), opts, allow_bins));
  }
  for (NodeId v : adj.z2) {
    mm.raw_z2_.push_back(data.column(g.name(v)));
    coders2.push_back(make_coder(g.name(v), mm.raw_z2_.back(), opts, allow_bins));
  }
  mm.n_cell1_ = 1;
  for (const auto& c : coders1) mm.n_cell1_ *= c.levels_count();
  mm.n_cell2_ = 1;
  for (const auto& c : coders2) mm.n_cell2_ *= c.levels_count();

  mm.cell1_.resize(n);
  mm.cell2_.resize(n);
  for (int i = 0; i < n; ++i) {
    int c1 = 0;
    for (std::size_t k = 0; k < coders1.size(); ++k) {
      c1 = c1 * coders1[k].levels_count() + coders1[k].code(mm.raw_z1_[k][i]);
    }
    int c2 = 0;
    for (std::size_t k = 0; k < coders2.size(); ++k) {
      c2 = c2 * coders2[k].levels_count() + coders2[k].code(mm.raw_z2_[k][i]);
    }
    mm.cell1_[i] = c1;
    mm.cell2_[i] = c2;
  }

  // Cell frequencies.
  std::vector<double> count1(mm.n_cell1_, 0.0);
  std::vector<double> count2(mm.n_cell2_, 0.0);
  const std::size_t cells = static_cast<std::size_t>(mm.n_cell1_) * mm.n_cell2_;
  std::vector<double> count_joint[2] = {std::vector<double>(cells, 0.0),
                                        std::vector<double>(cells, 0.0)};
  std::vector<double> sum_joint[2] = {std::vector<double>(cells, 0.0),
                                      std::vector<double>(cells, 0.0)};
  for (int i = 0; i < n; ++i) {
    const int which = a_col[i] == q.a ? 0 : 1;
    const std::size_t cell = static_cast<std::size_t>(mm.cell1_[i]) * mm.n_cell2_ +
                             mm.cell2_[i];
    count1[mm.cell1_[i]] += 1.0;
    count2[mm.cell2_[i]] += 1.0;
    count_joint[which][cell] += 1.0;
    sum_joint[which][cell] += y_col[i];
  }
  mm.p_z1_.resize(mm.n_cell1_);
  for (int u = 0; u < mm.n_cell1_; ++u) mm.p_z1_[u] = count1[u] / n;
  mm.p_z2_.resize(mm.n_cell2_);
  for (int v = 0; v < mm.n_cell2_; ++v) mm.p_z2_[v] = count2[v] / n;
  for (int w = 0; w < 2; ++w) {
    mm.p_joint_[w].resize(cells);
    for (std::size_t c = 0; c < cells; ++c) mm.p_joint_[w][c] = count_joint[w][c] / n;
  }

  if (opts.family == NuisanceFamily::DiscreteCells) {
    for (int w = 0; w < 2; ++w) {
      mm.mu_cell_[w].assign(cells, 0.0);
      for (int u = 0; u < mm.n_cell1_; ++u) {
        for (int v = 0; v < mm.n_cell2_; ++v) {
          const std::size_t cell = static_cast<std::size_t>(u) * mm.n_cell2_ + v;
          if (count_joint[w][cell] > 0.0) {
            mm.mu_cell_[w][cell] = sum_joint[w][cell] / count_joint[w][cell];
          } else if (count1[u] > 0.0 && count2[v] > 0.0) {
            throw EmptyCellError(
                "no observations with treatment level " +
                    std::to_string(mm.level_value(w)) + " in cell z1=" +
                    describe_cell(coders1, u) + ", z2=" + describe_cell(coders2, v),
                describe_cell(coders1, u) + "x" + describe_cell(coders2, v));
          }
        }
      }
      mm.eta1_cell_[w].assign(mm.n_cell1_, 0.0);
      mm.eta2_cell_[w].assign(mm.n_cell2_, 0.0);
      double t = 0.0;
      for (int u = 0; u < mm.n_cell1_; ++u) {
        for (int v = 0; v < mm.n_cell2_; ++v) {
          const double mu = mm.mu_cell_[w][static_cast<std::size_t>(u) * mm.n_cell2_ + v];
          mm.eta1_cell_[w][u] += mm.p_z2_[v] * mu;
          mm.eta2_cell_[w][v] += mm.p_z1_[u] * mu;
        }
        t += mm.p_z1_[u] * mm.eta1_cell_[w][u];
      }
      mm.t_plug_[w] = t;
    }
    return mm;
  }

  // LinearBasis: least squares of Y on [1, A, z1, z2, A*z1].
  const int d1 = static_cast<int>(mm.raw_z1_.size());
  const int d2 = static_cast<int>(mm.raw_z2_.size());
  const int cols = 2 + d1 + d2 + (opts.interaction_terms ? d1 : 0);
  Eigen::MatrixXd design(n, cols);
  Eigen::VectorXd response(n);
  for (int i = 0; i < n; ++i) {
    int k = 0;
    design(i, k++) = 1.0;
    design(i, k++) = a_col[i];
    for (int c = 0; c < d1; ++c) design(i, k++) = mm.raw_z1_[c][i];
    for (int c = 0; c < d2; ++c) design(i, k++) = mm.raw_z2_[c][i];
    if (opts.interaction_terms) {
      for (int c = 0; c < d1; ++c) design(i, k++) = a_col[i] * mm.raw_z1_[c][i];
    }
    response(i) = y_col[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols) {
    throw SingularDesignError("outcome design matrix is rank deficient (rank " +
                              std::to_string(qr.rank()) + " of " + std::to_string(cols) +
                              ")");
  }
  const Eigen::VectorXd beta = qr.solve(response);
  mm.beta_.assign(beta.data(), beta.data() + cols);

  mm.z1_mean_.assign(d1, 0.0);
  for (int c = 0; c < d1; ++c) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += mm.raw_z1_[c][i];
    mm.z1_mean_[c] = s / n;
  }
  mm.z2_mean_.assign(d2, 0.0);
  for (int c = 0; c < d2; ++c) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += mm.raw_z2_[c][i];
    mm.z2_mean_[c] = s / n;
  }
  // The fitted surface is affine in (z1, z2) at fixed treatment, so the
  // product-marginal average collapses to evaluation at the means.
  for (int w = 0; w < 2; ++w) {
    mm.t_plug_[w] = mm.mu_linear(w, mm.z1_mean_, mm.z2_mean_);
  }
  return mm;
}

IfSample if_values(const Dataset& data, const QuerySpec& q, const AdjustmentSet& adj,
                   const NuisanceModels& models, double propensity_floor) {
  const int n = models.n();
  if (data.n() != n) {
    throw PreconditionError("dataset does not match the fitted nuisances");
  }
  if (q.a != models.level_value(0) || q.a_star != models.level_value(1)) {
    throw PreconditionError("query levels differ from the fitted nuisances");
  }
  if (static_cast<int>(adj.z1.size()) + static_cast<int>(adj.z2.size()) !=
      static_cast<int>(adj.z.size())) {
    throw PreconditionError("adjustment split is inconsistent");
  }
  const std::vector<double>& a_col = data.column(models.exposure_column());
  const std::vector<double>& y_col = data.column(models.outcome_column());

  IfSample ifs;
  ifs.psi_a.resize(n);
  ifs.psi_a_star.resize(n);
  ifs.psi_diff.resize(n);
  for (int i = 0; i < n; ++i) {
    double psi[2] = {0.0, 0.0};
    for (int w = 0; w < 2; ++w) {
      const NuisanceModels::Eval e = models.evaluate(w, i);
      double value = e.eta1 + e.eta2 - 2.0 * models.t_plug(w);
      if (a_col[i] == models.level_value(w)) {
        if (!(e.p_joint > propensity_floor)) {
          throw PropensityUnderflowError(
              "treatment cell probability " + std::to_string(e.p_joint) +
                  " at or below floor " + std::to_string(propensity_floor),
              e.p_joint);
        }
        value += e.weight_numerator / e.p_joint * (y_col[i] - e.mu);
      }
      psi[w] = value;
    }
    ifs.psi_a[i] = psi[0];
    ifs.psi_a_star[i] = psi[1];
    ifs.psi_diff[i] = psi[0] - psi[1];
  }
  return ifs;
}

double asymptotic_variance(const IfSample& ifs) {
  const int n = ifs.n();
  if (n < 2) {
    throw PreconditionError("variance needs at least two observations");
  }
  double mean = 0.0;
  for (double v : ifs.psi_diff) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : ifs.psi_diff) ss += (v - mean) * (v - mean);
  return ss / (n - 1);
}

namespace {

EstimateReport estimate_impl(const Dataset& data, const Dag& g, const QuerySpec& q,
                             const AdjustmentSet& adj, const NuisanceOptions& opts,
                             EstimatorKind kind) {
  const NuisanceModels models = fit_nuisances(data, g, q, adj, opts);
  const IfSample ifs = if_values(data, q, adj, models, opts.propensity_floor);
  EstimateReport report;
  report.method = kind;
  report.adjustment = adj;
  report.n = models.n();
  report.seed = data.seed;
  if (kind == EstimatorKind::PlugIn) {
    report.t_a = models.t_plug(0);
    report.t_a_star = models.t_plug(1);
  } else {
    double mean[2] = {0.0, 0.0};
    for (double v : ifs.psi_a) mean[0] += v;
    for (double v : ifs.psi_a_star) mean[1] += v;
    report.t_a = models.t_plug(0) + mean[0] / models.n();
    report.t_a_star = models.t_plug(1) + mean[1] / models.n();
  }
  report.wcde = report.t_a - report.t_a_star;
  report.var_hat = asymptotic_variance(ifs);
  report.se = std::sqrt(report.var_hat / models.n());
  return report;
}

}  // namespace

EstimateReport plugin_estimate(const Dataset& data, const Dag& g, const QuerySpec& q,
                               const AdjustmentSet& adj, const NuisanceOptions& opts) {
  return estimate_impl(data, g, q, adj, opts, EstimatorKind::PlugIn);
}

EstimateReport one_step_estimate(const Dataset& data, const Dag& g, const QuerySpec& q,
                                 const AdjustmentSet& adj, const NuisanceOptions& opts) {
  return estimate_impl(data, g, q, adj, opts, EstimatorKind::OneStep);
}

PopulationIfMoments population_if_moments(const DiscreteScm& m, const QuerySpec& q,
                                          const AdjustmentSet& adj) {
  validate_query(m.dag(), q);
  split_adjustment(m.dag(), q, adj.z);
  if (m.cardinality(q.exposure) != 2) {
    throw PreconditionError("exposure must be binary");
  }
  for (double level : {q.a, q.a_star}) {
    if (level != 0.0 && level != 1.0) {
      throw PreconditionError("exposure levels must be 0 or 1");
    }
  }
  const JointTable joint = joint_distribution(m);
  const std::vector<NodeId>& z1 = adj.z1.members();
  const std::vector<NodeId>& z2 = adj.z2.members();
  const std::vector<double> p1 = z1.empty() ? std::vector<double>{1.0} : joint.marginal(z1);
  const std::vector<double> p2 = z2.empty() ? std::vector<double>{1.0} : joint.marginal(z2);
  const std::size_t n1 = p1.size();
  const std::size_t n2 = p2.size();

  std::vector<NodeId> axes;
  axes.push_back(q.exposure);
  axes.insert(axes.end(), z1.begin(), z1.end());
  axes.insert(axes.end(), z2.begin(), z2.end());
  axes.push_back(q.outcome);
  const std::vector<double> pazy = joint.marginal(axes);
  const int y_card = m.cardinality(q.outcome);

  const int levels[2] = {static_cast<int>(q.a), static_cast<int>(q.a_star)};
  std::vector<double> mu[2];
  std::vector<double> pj[2];
  std::vector<double> eta1[2];
  std::vector<double> eta2[2];
  double t[2] = {0.0, 0.0};
  for (int w = 0; w < 2; ++w) {
    mu[w].assign(n1 * n2, 0.0);
    pj[w].assign(n1 * n2, 0.0);
    eta1[w].assign(n1, 0.0);
    eta2[w].assign(n2, 0.0);
    for (std::size_t u = 0; u < n1; ++u) {
      for (std::size_t v = 0; v < n2; ++v) {
        const std::size_t base =
            (static_cast<std::size_t>(levels[w]) * n1 * n2 + u * n2 + v) *
            static_cast<std::size_t>(y_card);
        double mass = 0.0;
        double moment = 0.0;
        for (int y = 0; y < y_card; ++y) {
          mass += pazy[base + y];
          moment += pazy[base + y] * static_cast<double>(y);
        }
        pj[w][u * n2 + v] = mass;
        if (p1[u] * p2[v] > 0.0) {
          if (mass <= 0.0) {
            throw PositivityViolationError("positivity violated in influence function",
                                           "cell (" + std::to_string(u) + "," +
                                               std::to_string(v) + ")");
          }
          mu[w][u * n2 + v] = moment / mass;
        }
      }
    }
    for (std::size_t u = 0; u < n1; ++u) {
      for (std::size_t v = 0; v < n2; ++v) {
        eta1[w][u] += p2[v] * mu[w][u * n2 + v];
        eta2[w][v] += p1[u] * mu[w][u * n2 + v];
      }
      t[w] += p1[u] * eta1[w][u];
    }
  }

  PopulationIfMoments out;
  double sum[2] = {0.0, 0.0};
  double sum_diff = 0.0;
  double sum_diff2 = 0.0;
  joint.for_each([&](const std::vector<int>& config, double prob) {
    if (prob <= 0.0) return;
    std::size_t u = 0;
    for (NodeId v : z1) {
      u = u * static_cast<std::size_t>(m.cardinality(v)) +
          static_cast<std::size_t>(config[v.index]);
    }
    std::size_t v2 = 0;
    for (NodeId v : z2) {
      v2 = v2 * static_cast<std::size_t>(m.cardinality(v)) +
           static_cast<std::size_t>(config[v.index]);
    }
    const int a_val = config[q.exposure.index];
    const double y_val = static_cast<double>(config[q.outcome.index]);
    double psi[2];
    for (int w = 0; w < 2; ++w) {
      double value = eta1[w][u] + eta2[w][v2] - 2.0 * t[w];
      if (a_val == levels[w]) {
        value += p1[u] * p2[v2] / pj[w][u * n2 + v2] * (y_val - mu[w][u * n2 + v2]);
      }
      psi[w] = value;
    }
    sum[0] += prob * psi[0];
    sum[1] += prob * psi[1];
    const double diff = psi[0] - psi[1];
    sum_diff += prob * diff;
    sum_diff2 += prob * diff * diff;
  });
  out.mean_a = sum[0];
  out.mean_a_star = sum[1];
  out.var_diff = sum_diff2 - sum_diff * sum_diff;
  return out;
}

}  // namespace wcde
