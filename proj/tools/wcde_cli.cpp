#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "wcde/adjustment.hpp"
#include "wcde/errors.hpp"
#include "wcde/estimators.hpp"
#include "wcde/experiment.hpp"
#include "wcde/io.hpp"
#include "wcde/scm.hpp"
#include "wcde/separation.hpp"
#include "wcde/taxonomy.hpp"

namespace {

constexpr int kExitUsage = 64;

std::vector<std::string> split_names(const std::string& csv, char sep) {
  std::vector<std::string> out;
  std::string current;
  for (char c : csv) {
    if (c == sep) {
      if (!current.empty()) out.push_back(current);
      current.clear();
    } else if (c != ' ' && c != '\t') {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

wcde::VertexSet parse_set(const wcde::Dag& g, const std::string& csv) {
  return wcde::VertexSet::of_names(g, split_names(csv, ','));
}

std::vector<wcde::VertexSet> parse_set_list(const wcde::Dag& g, const std::string& arg) {
  std::vector<wcde::VertexSet> out;
  std::string current;
  auto flush = [&]() {
    out.push_back(parse_set(g, current));
    current.clear();
  };
  for (char c : arg) {
    if (c == ';') {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return out;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CommonQueryFlags {
  std::string exposure;
  std::string outcome;
  double a = 1.0;
  double a_star = 0.0;
};

void add_query_flags(CLI::App* cmd, CommonQueryFlags& flags, bool require_names) {
  auto* e = cmd->add_option("--exposure", flags.exposure, "Exposure node name");
  auto* o = cmd->add_option("--outcome", flags.outcome, "Outcome node name");
  if (require_names) {
    e->required();
    o->required();
  }
  cmd->add_option("--a", flags.a, "Treated exposure level");
  cmd->add_option("--astar", flags.a_star, "Reference exposure level");
}

// Resolves exposure/outcome against the model when flags were omitted.
wcde::QuerySpec query_for_model(const wcde::ScmVariant& model, const CommonQueryFlags& flags) {
  const wcde::Dag& g =
      std::visit([](const auto& m) -> const wcde::Dag& { return m.dag(); }, model);
  std::string exposure = flags.exposure;
  std::string outcome = flags.outcome;
  if (const auto* linear = std::get_if<wcde::LinearScm>(&model)) {
    if (exposure.empty()) exposure = g.name(linear->exposure());
    if (outcome.empty() && linear->has_outcome()) outcome = g.name(linear->outcome());
  }
  if (exposure.empty() || outcome.empty()) {
    throw wcde::PreconditionError(
        "this model does not declare the query; pass --exposure and --outcome");
  }
  return wcde::QuerySpec{g.node(exposure), g.node(outcome), flags.a, flags.a_star};
}

int run(int argc, char** argv) {
  CLI::App app{"Weighted controlled direct effect toolkit"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "Validate an adjustment set");
  std::string check_dag, check_adjust;
  CommonQueryFlags check_q;
  bool literal2 = false;
  check->add_option("--dag", check_dag, "DAG file")->required();
  add_query_flags(check, check_q, true);
  check->add_option("--adjust", check_adjust, "Comma-separated adjustment set");
  check->add_flag("--literal-criterion2", literal2,
                  "Evaluate criterion 2 without adding the exposure");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "List all valid adjustment sets");
  std::string enum_dag;
  CommonQueryFlags enum_q;
  std::optional<int> enum_max;
  bool enum_literal2 = false;
  enumerate->add_option("--dag", enum_dag, "DAG file")->required();
  add_query_flags(enumerate, enum_q, true);
  enumerate->add_option("--max-size", enum_max, "Largest set size to report");
  enumerate->add_flag("--literal-criterion2", enum_literal2,
                      "Evaluate criterion 2 without adding the exposure");

  // oset
  auto* oset_cmd = app.add_subcommand("oset", "Print the optimal adjustment set");
  std::string oset_dag;
  CommonQueryFlags oset_q;
  oset_cmd->add_option("--dag", oset_dag, "DAG file")->required();
  add_query_flags(oset_cmd, oset_q, true);

  // truth
  auto* truth = app.add_subcommand("truth", "Print the exact population effect");
  std::string truth_scm;
  CommonQueryFlags truth_q;
  truth->add_option("--scm", truth_scm, "Model spec JSON file")->required();
  add_query_flags(truth, truth_q, false);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate from a dataset");
  std::string est_data, est_dag, est_adjust, est_method = "onestep", est_family = "cells";
  CommonQueryFlags est_q;
  int est_bins = 5;
  bool est_no_interaction = false;
  estimate->add_option("--data", est_data, "Dataset CSV file")->required();
  estimate->add_option("--dag", est_dag, "DAG file")->required();
  add_query_flags(estimate, est_q, true);
  estimate->add_option("--adjust", est_adjust, "Comma-separated adjustment set");
  estimate->add_option("--method", est_method, "Estimator")
      ->check(CLI::IsMember({"plugin", "onestep"}));
  estimate->add_option("--family", est_family, "Nuisance family")
      ->check(CLI::IsMember({"cells", "linear"}));
  estimate->add_option("--bins", est_bins, "Quantile bins for continuous weights");
  estimate->add_flag("--no-interaction", est_no_interaction,
                     "Drop the exposure-by-mediator terms from the linear basis");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Replicate estimates across seeds");
  std::string sim_scm, sim_sets, sim_out, sim_method = "onestep", sim_family = "cells";
  CommonQueryFlags sim_q;
  int sim_n = 0, sim_reps = 0, sim_threads = 0, sim_bins = 5;
  std::uint64_t sim_seed = 1;
  bool sim_allow_invalid = false;
  simulate->add_option("--scm", sim_scm, "Model spec JSON file")->required();
  simulate->add_option("--n", sim_n, "Sample size per replication")->required();
  simulate->add_option("--reps", sim_reps, "Replication count")->required();
  simulate->add_option("--seed", sim_seed, "Base seed");
  simulate->add_option("--adjust-sets", sim_sets,
                       "Semicolon-separated list of comma-separated sets")
      ->required();
  simulate->add_option("--out", sim_out, "Results CSV path")->required();
  simulate->add_option("--method", sim_method, "Estimator")
      ->check(CLI::IsMember({"plugin", "onestep"}));
  simulate->add_option("--family", sim_family, "Nuisance family")
      ->check(CLI::IsMember({"cells", "linear"}));
  simulate->add_option("--bins", sim_bins, "Quantile bins for continuous weights");
  simulate->add_option("--threads", sim_threads, "Worker threads (0 = hardware)");
  simulate->add_flag("--allow-invalid", sim_allow_invalid,
                     "Skip adjustment-set validation");
  add_query_flags(simulate, sim_q, false);

  // dsep
  auto* dsep = app.add_subcommand("dsep", "Test d-separation");
  std::string dsep_dag, dsep_x, dsep_y, dsep_given;
  dsep->add_option("--dag", dsep_dag, "DAG file")->required();
  dsep->add_option("--x", dsep_x, "First set, comma-separated")->required();
  dsep->add_option("--y", dsep_y, "Second set, comma-separated")->required();
  dsep->add_option("--given", dsep_given, "Conditioning set, comma-separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  if (*check) {
    const wcde::Dag g = wcde::parse_dag_file(check_dag);
    const wcde::QuerySpec q{g.node(check_q.exposure), g.node(check_q.outcome), check_q.a,
                            check_q.a_star};
    wcde::validate_query(g, q);
    const wcde::VertexSet z = parse_set(g, check_adjust);
    wcde::VasOptions opts;
    opts.literal_criterion2 = literal2;
    const wcde::VasReport report = wcde::check_vas(g, q, z, opts);
    std::cout << wcde::vas_report_to_json(report, g, q, z);
    return report.valid ? 0 : 2;
  }

  if (*enumerate) {
    const wcde::Dag g = wcde::parse_dag_file(enum_dag);
    const wcde::QuerySpec q{g.node(enum_q.exposure), g.node(enum_q.outcome), enum_q.a,
                            enum_q.a_star};
    wcde::validate_query(g, q);
    wcde::VasOptions opts;
    opts.literal_criterion2 = enum_literal2;
    std::string out = "[";
    bool first = true;
    for (const wcde::AdjustmentSet& adj : wcde::enumerate_vas(g, q, enum_max, opts)) {
      out += first ? "" : ",";
      first = false;
      out += "\n  [";
      bool inner_first = true;
      for (const std::string& name : adj.z.names(g)) {
        out += inner_first ? "" : ", ";
        inner_first = false;
        out += "\"" + name + "\"";
      }
      out += "]";
    }
    out += first ? "]\n" : "\n]\n";
    std::cout << out;
    return 0;
  }

  if (*oset_cmd) {
    const wcde::Dag g = wcde::parse_dag_file(oset_dag);
    const wcde::QuerySpec q{g.node(oset_q.exposure), g.node(oset_q.outcome), oset_q.a,
                            oset_q.a_star};
    wcde::validate_query(g, q);
    const wcde::OsetResult result = wcde::oset(g, q);
    if (!result.exposure_is_ancestor) {
      std::cerr << "note: exposure has no directed path to outcome; effect is zero\n";
    }
    for (const std::string& name : result.set.names(g)) {
      std::cout << name << "\n";
    }
    return 0;
  }

  if (*truth) {
    const wcde::ScmVariant model = wcde::load_scm(truth_scm);
    const wcde::QuerySpec q = query_for_model(model, truth_q);
    const double value = std::visit(
        [&](const auto& m) { return wcde::true_wcde(m, q); }, model);
    std::cout << fmt_double(value) << "\n";
    return 0;
  }

  if (*estimate) {
    const wcde::Dag g = wcde::parse_dag_file(est_dag);
    const wcde::Dataset data = wcde::read_csv(est_data);
    const wcde::QuerySpec q{g.node(est_q.exposure), g.node(est_q.outcome), est_q.a,
                            est_q.a_star};
    wcde::validate_query(g, q);
    const wcde::AdjustmentSet adj =
        wcde::split_adjustment(g, q, parse_set(g, est_adjust));
    wcde::NuisanceOptions opts;
    opts.family = est_family == "cells" ? wcde::NuisanceFamily::DiscreteCells
                                        : wcde::NuisanceFamily::LinearBasis;
    opts.bins = est_bins;
    opts.interaction_terms = !est_no_interaction;
    const wcde::EstimateReport report =
        est_method == "plugin" ? wcde::plugin_estimate(data, g, q, adj, opts)
                               : wcde::one_step_estimate(data, g, q, adj, opts);
    std::cout << wcde::estimate_report_to_json(report, g);
    return 0;
  }

  if (*simulate) {
    const wcde::ScmVariant model = wcde::load_scm(sim_scm);
    const wcde::Dag& g =
        std::visit([](const auto& m) -> const wcde::Dag& { return m.dag(); }, model);
    wcde::ExperimentConfig cfg;
    cfg.q = query_for_model(model, sim_q);
    if (const auto* discrete = std::get_if<wcde::DiscreteScm>(&model)) {
      cfg.scm = discrete;
    } else {
      cfg.scm = &std::get<wcde::LinearScm>(model);
    }
    cfg.adjust_sets = parse_set_list(g, sim_sets);
    cfg.n = sim_n;
    cfg.reps = sim_reps;
    cfg.seed = sim_seed;
    cfg.method = sim_method == "plugin" ? wcde::EstimatorKind::PlugIn
                                        : wcde::EstimatorKind::OneStep;
    cfg.nuisance.family = sim_family == "cells" ? wcde::NuisanceFamily::DiscreteCells
                                                : wcde::NuisanceFamily::LinearBasis;
    cfg.nuisance.bins = sim_bins;
    cfg.allow_invalid = sim_allow_invalid;
    cfg.threads = sim_threads;
    const wcde::VarianceTable table = wcde::run_replications(cfg);
    wcde::write_text_file(sim_out, wcde::results_to_csv(table));
    std::cout << wcde::variance_table_to_json(table);
    return 0;
  }

  if (*dsep) {
    const wcde::Dag g = wcde::parse_dag_file(dsep_dag);
    const bool separated = wcde::is_d_separated(g, parse_set(g, dsep_x),
                                                parse_set(g, dsep_y),
                                                parse_set(g, dsep_given));
    std::cout << (separated ? "{\"separated\": true}\n" : "{\"separated\": false}\n");
    return separated ? 0 : 2;
  }

  std::cerr << "no subcommand selected\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wcde::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
