#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wcde/adjustment.hpp"
#include "wcde/scm.hpp"

namespace wcde {

enum class NuisanceFamily {
  DiscreteCells,  // saturated cell means and frequencies
  LinearBasis,    // least squares on [1, A, z, A*z1]
};

struct NuisanceOptions {
  NuisanceFamily family = NuisanceFamily::DiscreteCells;
  // LinearBasis weight terms need discrete adjustment values. Columns with
  // more than 64 distinct values are quantile-binned into this many bins;
  // 0 disables binning and raises UnsupportedContinuousWeightsError
  // instead.
  int bins = 5;
  // Interaction columns A*z1 in the LinearBasis design. Disabling them
  // deliberately misspecifies the outcome model (used in tests).
  bool interaction_terms = true;
  // Hard floor for the empirical treatment-cell probability.
  double propensity_floor = 1e-8;
};

// Fitted nuisance components for one dataset and adjustment set:
// outcome means mu_level(z1, z2), marginal cell frequencies of z1 and z2,
// joint cell frequencies of (level, z1, z2), and the profile functions
// eta1_level(z1) = E_hat_{Z2} mu_level(z1, .) and eta2_level(z2) =
// E_hat_{Z1} mu_level(., z2). Level index 0 is a, index 1 is a_star.
class NuisanceModels {
 public:
  struct Eval {
    double mu = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double weight_numerator = 0.0;  // p_hat(z1) * p_hat(z2)
    double p_joint = 0.0;           // p_hat(level, z1, z2)
  };

  int n() const { return n_; }
  double level_value(int which) const { return which == 0 ? a_ : a_star_; }
  NuisanceFamily family() const { return family_; }
  const std::string& exposure_column() const { return a_name_; }
  const std::string& outcome_column() const { return y_name_; }

  Eval evaluate(int which, int row) const;
  // Plug-in functional: average of mu over the product of empirical
  // marginals.
  double t_plug(int which) const { return t_plug_[which]; }

  // Cell-level views (weight cells; for DiscreteCells these are the exact
  // value combinations).
  const std::vector<double>& marg_z1() const { return p_z1_; }
  const std::vector<double>& marg_z2() const { return p_z2_; }
  const std::vector<double>& joint_az(int which) const { return p_joint_[which]; }
  const std::vector<double>& profile_z1(int which) const { return eta1_cell_[which]; }
  const std::vector<double>& profile_z2(int which) const { return eta2_cell_[which]; }

  // Outcome-mean evaluation mixing the z1 values of one row with the z2
  // values of another; mu_cross(w, i, i) == evaluate(w, i).mu.
  double mu_cross(int which, int row_z1, int row_z2) const;

 private:
  friend NuisanceModels fit_nuisances(const Dataset&, const Dag&, const QuerySpec&,
                                      const AdjustmentSet&, const NuisanceOptions&);

  NuisanceFamily family_ = NuisanceFamily::DiscreteCells;
  int n_ = 0;
  double a_ = 1.0;
  double a_star_ = 0.0;
  std::string a_name_;
  std::string y_name_;

  // Per-row cell codes and raw adjustment values.
  std::vector<int> cell1_;
  std::vector<int> cell2_;
  int n_cell1_ = 1;
  int n_cell2_ = 1;
  std::vector<std::vector<double>> raw_z1_;  // [col][row]
  std::vector<std::vector<double>> raw_z2_;

  std::vector<double> p_z1_;
  std::vector<double> p_z2_;
  std::vector<double> p_joint_[2];    // [cell1 * n_cell2 + cell2]
  std::vector<double> mu_cell_[2];    // DiscreteCells only
  std::vector<double> eta1_cell_[2];
  std::vector<double> eta2_cell_[2];
  double t_plug_[2] = {0.0, 0.0};

  // LinearBasis regression: intercept, A, z1 cols, z2 cols, A*z1 cols.
  std::vector<double> beta_;
  bool interaction_terms_ = true;
  std::vector<double> z1_mean_;
  std::vector<double> z2_mean_;

  double mu_linear(int which, const std::vector<double>& z1v,
                   const std::vector<double>& z2v) const;
};

// Fits the requested family on the dataset. DiscreteCells requires every
// (level, z1, z2) cell with positive product support to be populated
// (EmptyCellError names the first hole). LinearBasis requires a
// full-column-rank design (SingularDesignError).
NuisanceModels fit_nuisances(const Dataset& data, const Dag& g, const QuerySpec& q,
                             const AdjustmentSet& adj, const NuisanceOptions& opts = {});

// Influence-function evaluations per observation:
//   psi_level(o) = 1{A=level} w(z1,z2) (Y - mu_level(z1,z2))
//                  + eta1_level(z1) + eta2_level(z2) - 2 T_level
// with w = p(z1) p(z2) / p(level, z1, z2). psi_diff = psi_a - psi_a_star.
struct IfSample {
  std::vector<double> psi_a;
  std::vector<double> psi_a_star;
  std::vector<double> psi_diff;

  int n() const { return static_cast<int>(psi_diff.size()); }
};

IfSample if_values(const Dataset& data, const QuerySpec& q, const AdjustmentSet& adj,
                   const NuisanceModels& models, double propensity_floor = 1e-8);

// Unbiased sample variance of psi_diff. Requires n >= 2.
double asymptotic_variance(const IfSample& ifs);

enum class EstimatorKind { PlugIn, OneStep };

struct EstimateReport {
  EstimatorKind method = EstimatorKind::PlugIn;
  AdjustmentSet adjustment;
  double t_a = 0.0;
  double t_a_star = 0.0;
  double wcde = 0.0;
  double var_hat = 0.0;  // estimated Var[psi_diff]
  double se = 0.0;       // sqrt(var_hat / n)
  int n = 0;
  std::uint64_t seed = 0;
};

EstimateReport plugin_estimate(const Dataset& data, const Dag& g, const QuerySpec& q,
                               const AdjustmentSet& adj, const NuisanceOptions& opts = {});

// One-step correction: T_plug(level) + mean(psi_level). For saturated
// DiscreteCells nuisances this coincides with the plug-in exactly.
EstimateReport one_step_estimate(const Dataset& data, const Dag& g, const QuerySpec& q,
                                 const AdjustmentSet& adj, const NuisanceOptions& opts = {});

// Exact population moments of the influence function, computed from the
// joint law of a discrete model with population-truth nuisances. mean_a and
// mean_a_star are zero by construction (up to float error); var_diff is the
// asymptotic variance bound of the adjusted estimator.
struct PopulationIfMoments {
  double mean_a = 0.0;
  double mean_a_star = 0.0;
  double var_diff = 0.0;
};

PopulationIfMoments population_if_moments(const DiscreteScm& m, const QuerySpec& q,
                                          const AdjustmentSet& adj);

}  // namespace wcde
