// Generates the committed model fixtures. Every search below is seeded and
// scans candidate parameterizations in a fixed order, so rerunning the tool
// reproduces the repository files byte for byte.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wcde/adjustment.hpp"
#include "wcde/errors.hpp"
#include "wcde/estimators.hpp"
#include "wcde/io.hpp"
#include "wcde/rng.hpp"
#include "wcde/scm.hpp"
#include "wcde/taxonomy.hpp"

namespace {

using namespace wcde;

Dag chain5_dense_dag() {
  return Dag::build({"A", "B1", "G1", "G2", "Y"},
                    {{"A", "B1"},
                     {"B1", "G1"},
                     {"G1", "Y"},
                     {"G2", "B1"},
                     {"G2", "A"},
                     {"G2", "Y"},
                     {"G2", "G1"},
                     {"A", "Y"}});
}

Dag chain5_dag() {
  return Dag::build({"A", "B1", "G1", "G2", "Y"},
                    {{"A", "B1"},
                     {"B1", "G1"},
                     {"G1", "Y"},
                     {"G2", "B1"},
                     {"G2", "A"},
                     {"G2", "Y"},
                     {"A", "Y"}});
}

Dag fork5_dag() {
  return Dag::build({"A", "B2", "G1", "G2", "Y"},
                    {{"A", "G1"},
                     {"G1", "Y"},
                     {"B2", "A"},
                     {"B2", "G1"},
                     {"B2", "G2"},
                     {"G2", "Y"},
                     {"A", "Y"}});
}

// All-binary CPTs with success probabilities drawn uniformly in [lo, hi].
DiscreteScm random_binary_scm(const Dag& g, std::uint64_t seed, double lo, double hi) {
  Rng rng(seed, 0);
  const int d = g.node_count();
  std::vector<int> cards(d, 2);
  std::vector<std::vector<double>> cpts(d);
  for (int v = 0; v < d; ++v) {
    std::size_t rows = 1;
    for (int k = 0; k < static_cast<int>(g.parents_of(NodeId{v}).size()); ++k) rows *= 2;
    cpts[v].resize(rows * 2);
    for (std::size_t r = 0; r < rows; ++r) {
      const double p1 = lo + (hi - lo) * rng.next_unit();
      cpts[v][r * 2] = 1.0 - p1;
      cpts[v][r * 2 + 1] = p1;
    }
  }
  return DiscreteScm::create(g, std::move(cards), std::move(cpts));
}

double min_joint_cell(const DiscreteScm& m) {
  const JointTable joint = joint_distribution(m);
  double lowest = 1.0;
  for (double p : joint.probabilities()) lowest = std::min(lowest, p);
  return lowest;
}

double exact_if_variance(const DiscreteScm& m, const QuerySpec& q, const VertexSet& z) {
  return population_if_moments(m, q, split_adjustment(m.dag(), q, z)).var_diff;
}

// Relative amount by which `larger` exceeds `smaller`.
double relative_gap(double smaller, double larger) {
  return (larger - smaller) / larger;
}

struct SearchDiag {
  std::uint64_t seed = 0;
  int tried = 0;
};

// chain5_dense parameterization whose criterion-4-violating set {B1,G2} is
// biased by a wide margin while the joint stays bounded away from zero and
// the optimal set keeps a clear variance lead.
DiscreteScm search_chain5_dense_biased(SearchDiag& diag) {
  const Dag g = chain5_dense_dag();
  const QuerySpec q{g.node("A"), g.node("Y"), 1.0, 0.0};
  const VertexSet invalid = VertexSet::of_names(g, {"B1", "G2"});
  const VertexSet o_set = VertexSet::of_names(g, {"G1", "G2"});
  const VertexSet full = VertexSet::of_names(g, {"B1", "G1", "G2"});
  for (std::uint64_t seed = 1; seed <= 2000000; ++seed) {
    ++diag.tried;
    const DiscreteScm m = random_binary_scm(g, seed, 0.2, 0.8);
    if (min_joint_cell(m) < 0.012) continue;
    const double truth = true_wcde(m, q);
    const double biased = population_wcde_z(m, q, split_adjustment(g, q, invalid));
    if (std::abs(biased - truth) < 0.05) continue;
    const double v_o = exact_if_variance(m, q, o_set);
    const double v_full = exact_if_variance(m, q, full);
    if (!(v_o <= v_full) || relative_gap(v_o, v_full) < 0.03) continue;
    diag.seed = seed;
    return m;
  }
  throw Error("no chain5_dense parameterization satisfied the constraints");
}

// fork5 parameterization with comfortable margins for both backdoor
// orderings: supplementing G2 onto {G1,B2} shrinks the variance, and deleting
// B2 from {G1,G2,B2} shrinks it again.
DiscreteScm search_fork5(SearchDiag& diag) {
  const Dag g = fork5_dag();
  const QuerySpec q{g.node("A"), g.node("Y"), 1.0, 0.0};
  const VertexSet o_set = VertexSet::of_names(g, {"G1", "G2"});
  const VertexSet g1b2 = VertexSet::of_names(g, {"G1", "B2"});
  const VertexSet full = VertexSet::of_names(g, {"G1", "G2", "B2"});
  for (std::uint64_t seed = 1; seed <= 2000000; ++seed) {
    ++diag.tried;
    const DiscreteScm m = random_binary_scm(g, seed, 0.2, 0.8);
    if (min_joint_cell(m) < 0.012) continue;
    const double v_o = exact_if_variance(m, q, o_set);
    const double v_g1b2 = exact_if_variance(m, q, g1b2);
    const double v_full = exact_if_variance(m, q, full);
    if (!(v_full <= v_g1b2) || relative_gap(v_full, v_g1b2) < 0.08) continue;
    if (!(v_o <= v_full) || relative_gap(v_o, v_full) < 0.08) continue;
    diag.seed = seed;
    return m;
  }
  throw Error("no fork5 parameterization satisfied the constraints");
}

// chain5 parameterization with comfortable margins for both mediator
// orderings: supplementing G1 onto {B1,G2} shrinks the variance, and deleting
// B1 from {B1,G1,G2} shrinks it again.
DiscreteScm search_chain5(SearchDiag& diag) {
  const Dag g = chain5_dag();
  const QuerySpec q{g.node("A"), g.node("Y"), 1.0, 0.0};
  const VertexSet o_set = VertexSet::of_names(g, {"G1", "G2"});
  const VertexSet b1g2 = VertexSet::of_names(g, {"B1", "G2"});
  const VertexSet full = VertexSet::of_names(g, {"B1", "G1", "G2"});
  for (std::uint64_t seed = 1; seed <= 2000000; ++seed) {
    ++diag.tried;
    const DiscreteScm m = random_binary_scm(g, seed, 0.2, 0.8);
    if (min_joint_cell(m) < 0.012) continue;
    const double v_o = exact_if_variance(m, q, o_set);
    const double v_b1g2 = exact_if_variance(m, q, b1g2);
    const double v_full = exact_if_variance(m, q, full);
    if (!(v_full <= v_b1g2) || relative_gap(v_full, v_b1g2) < 0.08) continue;
    if (!(v_o <= v_full) || relative_gap(v_o, v_full) < 0.08) continue;
    diag.seed = seed;
    return m;
  }
  throw Error("no chain5 parameterization satisfied the constraints");
}

LinearScm linear_interaction_model() {
  Dag g = Dag::build({"B", "A", "M", "Y"},
                     {{"B", "A"}, {"B", "M"}, {"B", "Y"}, {"A", "M"}, {"A", "Y"}, {"M", "Y"}});
  std::vector<LinearScm::Node> nodes(4);
  nodes[g.node("B").index] = {0.0, 1.0, {}};
  nodes[g.node("A").index] = {0.0, 1.0, {{"B", 0.8}}};
  nodes[g.node("M").index] = {0.2, 1.0, {{"B", 0.5}, {"A", 1.0}}};
  nodes[g.node("Y").index] = {0.0, 1.0, {{"B", 0.6}, {"A", 1.5}, {"M", 0.7}}};
  return LinearScm::create(std::move(g), std::move(nodes), "A", "Y",
                           {{"A", "M", 0.5}});
}

void report_discrete(const std::string& label, const DiscreteScm& m, const QuerySpec& q,
                     const SearchDiag& diag) {
  std::cout << label << ": seed " << diag.seed << " after " << diag.tried
            << " candidates; min joint cell " << min_joint_cell(m) << "\n";
  const double truth = true_wcde(m, q);
  std::cout << "  exact effect " << truth << "\n";
  for (const AdjustmentSet& adj : enumerate_vas(m.dag(), q)) {
    std::string names;
    for (const std::string& n : adj.z.names(m.dag())) {
      if (!names.empty()) names += ",";
      names += n;
    }
    std::cout << "  VAS {" << names << "}: population "
              << population_wcde_z(m, q, adj) << ", IF variance "
              << population_if_moments(m, q, adj).var_diff << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerates the committed fixtures"};
  std::string out_dir = "fixtures";
  app.add_option("--out-dir", out_dir, "Destination directory");
  CLI11_PARSE(app, argc, argv);

  try {
    const Dag dense_g = chain5_dense_dag();
    const Dag fork_g = fork5_dag();
    const Dag chain_g = chain5_dag();
    write_text_file(out_dir + "/chain5_dense.dag", serialize_dag(dense_g));
    write_text_file(out_dir + "/fork5.dag", serialize_dag(fork_g));
    write_text_file(out_dir + "/chain5.dag", serialize_dag(chain_g));

    SearchDiag diag1, diag3, diag4;
    const DiscreteScm biased = search_chain5_dense_biased(diag1);
    write_text_file(out_dir + "/chain5_dense_biased.json", scm_to_json(biased));
    report_discrete("chain5_dense_biased", biased,
                    {dense_g.node("A"), dense_g.node("Y"), 1.0, 0.0}, diag1);
    const QuerySpec q1{dense_g.node("A"), dense_g.node("Y"), 1.0, 0.0};
    const VertexSet invalid = VertexSet::of_names(dense_g, {"B1", "G2"});
    std::cout << "  invalid {B1,G2}: population "
              << population_wcde_z(biased, q1, split_adjustment(dense_g, q1, invalid))
              << "\n";

    const DiscreteScm fork = search_fork5(diag3);
    write_text_file(out_dir + "/fork5.json", scm_to_json(fork));
    report_discrete("fork5", fork, {fork_g.node("A"), fork_g.node("Y"), 1.0, 0.0}, diag3);

    const DiscreteScm chain = search_chain5(diag4);
    write_text_file(out_dir + "/chain5.json", scm_to_json(chain));
    report_discrete("chain5", chain, {chain_g.node("A"), chain_g.node("Y"), 1.0, 0.0}, diag4);

    const LinearScm linear = linear_interaction_model();
    write_text_file(out_dir + "/linear_interaction.json", scm_to_json(linear));
    const QuerySpec ql{linear.dag().node("A"), linear.dag().node("Y"), 1.0, 0.0};
    std::cout << "linear_interaction: exact effect " << true_wcde(linear, ql) << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
