#pragma once

#include <string>
#include <variant>

#include "wcde/adjustment.hpp"
#include "wcde/estimators.hpp"
#include "wcde/experiment.hpp"
#include "wcde/graph.hpp"
#include "wcde/scm.hpp"

namespace wcde {

// DAG text format: one edge per line as "PARENT -> CHILD"; a bare "NODE"
// line declares an isolated node; '#' starts a comment; blank lines are
// ignored. Nodes are indexed in order of first mention.
Dag parse_dag_text(const std::string& text);
Dag parse_dag_file(const std::string& path);

// Emits every node on its own line, then every edge, so parsing the output
// reproduces the node order and edge set exactly.
std::string serialize_dag(const Dag& g);

// Model specs are JSON documents:
//   {"type": "discrete", "nodes": [{"name", "parents", "cardinality",
//    "cpt"}, ...]}
//   {"type": "linear", "exposure": name, "outcome": name?, "nodes":
//    [{"name", "parents", "coeffs", "intercept", "noise_sd"}, ...],
//    "interactions": [[exposure, mediator, gamma], ...]?}
// Discrete CPTs are flat arrays over parent configurations (parents in
// topological order, last varying fastest) times own cardinality.
using ScmVariant = std::variant<DiscreteScm, LinearScm>;
ScmVariant parse_scm_json(const std::string& text);
ScmVariant load_scm(const std::string& path);
std::string scm_to_json(const DiscreteScm& m);
std::string scm_to_json(const LinearScm& m);

// Dataset CSV: header row of column names, one numeric row per
// observation.
std::string dataset_to_csv(const Dataset& data);
Dataset parse_csv(const std::string& text);
Dataset read_csv(const std::string& path);
void write_csv(const Dataset& data, const std::string& path);

// Report renderings.
std::string vas_report_to_json(const VasReport& report, const Dag& g, const QuerySpec& q,
                               const VertexSet& z);
std::string estimate_report_to_json(const EstimateReport& report, const Dag& g);
std::string variance_table_to_json(const VarianceTable& table);
// CSV columns: set,mean_estimate,emp_variance,mean_asym_var,mcse,n,reps,seed.
std::string results_to_csv(const VarianceTable& table);

// Small file helpers used by the CLI and tests.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace wcde
