#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "wcde/errors.hpp"
#include "wcde/experiment.hpp"
#include "wcde/taxonomy.hpp"

using namespace wcde;
using wcde_test::load_discrete_fixture;

namespace {

QuerySpec ay_query(const Dag& g) {
  return QuerySpec{g.node("A"), g.node("Y"), 1.0, 0.0};
}

bool rows_equal(const VarianceRow& a, const VarianceRow& b) {
  return a.set == b.set && a.label == b.label && a.mean_estimate == b.mean_estimate &&
         a.emp_variance == b.emp_variance && a.mean_asym_var == b.mean_asym_var &&
         a.mcse == b.mcse;
}

VarianceTable toy_table(const Dag& g) {
  VarianceTable t;
  t.n = 100;
  t.reps = 10;
  t.seed = 1;
  t.rows.push_back(VarianceRow{VertexSet::of_names(g, {"G1", "G2"}), "G1,G2", 0.1,
                               1.0, 1.0, 0.01});
  t.rows.push_back(VarianceRow{VertexSet::of_names(g, {"B2", "G1"}), "B2,G1", 0.1,
                               2.0, 2.0, 0.01});
  t.rows.push_back(VarianceRow{VertexSet::of_names(g, {"B2", "G1", "G2"}),
                               "B2,G1,G2", 0.1, 1.5, 1.5, 0.01});
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("replication tables are thread-count invariant") {
  const DiscreteScm m = load_discrete_fixture("fork5.json");
  const Dag& g = m.dag();
  ExperimentConfig cfg;
  cfg.scm = &m;
  cfg.q = ay_query(g);
  cfg.adjust_sets = {VertexSet::of_names(g, {"G1", "G2"}),
                     VertexSet::of_names(g, {"B2", "G1"})};
  cfg.n = 1500;
  cfg.reps = 10;
  cfg.seed = 5;

  cfg.threads = 1;
  const VarianceTable serial = run_replications(cfg);
  cfg.threads = 4;
  const VarianceTable parallel = run_replications(cfg);

  REQUIRE(serial.rows.size() == 2);
  REQUIRE(parallel.rows.size() == 2);
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(rows_equal(serial.rows[i], parallel.rows[i]));
  }
  CHECK(serial.n == 1500);
  CHECK(serial.reps == 10);
  CHECK(serial.seed == 5);
  CHECK(serial.rows[0].label == "G1,G2");
  for (const VarianceRow& row : serial.rows) {
    CHECK(row.emp_variance > 0.0);
    CHECK(row.mean_asym_var > 0.0);
    CHECK(row.mcse > 0.0);
  }
}

TEST_CASE("adding a set never perturbs existing rows") {
  const DiscreteScm m = load_discrete_fixture("fork5.json");
  const Dag& g = m.dag();
  ExperimentConfig cfg;
  cfg.scm = &m;
  cfg.q = ay_query(g);
  cfg.adjust_sets = {VertexSet::of_names(g, {"G1", "G2"}),
                     VertexSet::of_names(g, {"B2", "G1"})};
  cfg.n = 1500;
  cfg.reps = 8;
  cfg.seed = 11;
  cfg.threads = 2;
  const VarianceTable two = run_replications(cfg);

  cfg.adjust_sets.push_back(VertexSet::of_names(g, {"B2", "G1", "G2"}));
  const VarianceTable three = run_replications(cfg);

  REQUIRE(three.rows.size() == 3);
  CHECK(rows_equal(two.rows[0], three.rows[0]));
  CHECK(rows_equal(two.rows[1], three.rows[1]));
}

TEST_CASE("two replications use the degenerate uncertainty fallback") {
  const DiscreteScm m = load_discrete_fixture("fork5.json");
  const Dag& g = m.dag();
  ExperimentConfig cfg;
  cfg.scm = &m;
  cfg.q = ay_query(g);
  cfg.adjust_sets = {VertexSet::of_names(g, {"G1", "G2"})};
  cfg.n = 1500;
  cfg.reps = 2;
  cfg.seed = 3;
  const VarianceTable t = run_replications(cfg);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].emp_variance >= 0.0);
  CHECK(t.rows[0].mcse ==
        doctest::Approx(t.rows[0].emp_variance * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("configuration validation") {
  const DiscreteScm m = load_discrete_fixture("fork5.json");
  const Dag& g = m.dag();
  ExperimentConfig cfg;
  cfg.scm = &m;
  cfg.q = ay_query(g);
  cfg.adjust_sets = {VertexSet::of_names(g, {"G1", "G2"})};
  cfg.n = 100;
  cfg.reps = 2;

  {
    ExperimentConfig bad = cfg;
    bad.reps = 1;
    CHECK_THROWS_AS(run_replications(bad), PreconditionError);
  }
  {
    ExperimentConfig bad = cfg;
    bad.n = 0;
    CHECK_THROWS_AS(run_replications(bad), InvalidSampleSizeError);
  }
  {
    ExperimentConfig bad = cfg;
    bad.adjust_sets.clear();
    CHECK_THROWS_AS(run_replications(bad), PreconditionError);
  }
  {
    // {B2} leaves the mediator route open, so validation refuses it...
    ExperimentConfig bad = cfg;
    bad.adjust_sets = {VertexSet::of_names(g, {"B2"})};
    try {
      run_replications(bad);
      FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("criterion 3") != std::string::npos);
    }
    // ...unless bias studies opt out explicitly.
    bad.allow_invalid = true;
    bad.n = 1000;
    const VarianceTable t = run_replications(bad);
    CHECK(t.rows.size() == 1);
    CHECK(t.rows[0].emp_variance > 0.0);
  }
}

TEST_CASE("replication failures carry their origin") {
  const DiscreteScm m = load_discrete_fixture("fork5.json");
  const Dag& g = m.dag();
  ExperimentConfig cfg;
  cfg.scm = &m;
  cfg.q = ay_query(g);
  cfg.adjust_sets = {VertexSet::of_names(g, {"G1", "G2"})};
  cfg.n = 200;
  cfg.reps = 4;
  cfg.nuisance.propensity_floor = 0.9;  // nothing can clear this
  try {
    run_replications(cfg);
    FAIL("expected Error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("replication ") != std::string::npos);
    CHECK(what.find("set {G1,G2}") != std::string::npos);
  }
}

TEST_CASE("row lookup") {
  const DiscreteScm m = load_discrete_fixture("fork5.json");
  const Dag& g = m.dag();
  const VarianceTable t = toy_table(g);
  CHECK(t.row(VertexSet::of_names(g, {"B2", "G1"})).emp_variance == 2.0);
  CHECK_THROWS_AS(t.row(VertexSet::of_names(g, {"B2"})), MissingRowError);
}

TEST_CASE("ordering verdicts") {
  const DiscreteScm m = load_discrete_fixture("fork5.json");
  const Dag& g = m.dag();
  const VertexSet opt = VertexSet::of_names(g, {"G1", "G2"});

  VarianceTable t = toy_table(g);
  const OrderingReport good = ordering_check(t, opt);
  CHECK(good.pass);
  CHECK(good.reference_label == "G1,G2");
  CHECK(good.reference_variance == 1.0);
  REQUIRE(good.entries.size() == 2);
  for (const OrderingEntry& e : good.entries) {
    CHECK_FALSE(e.violation);
    CHECK(e.tolerance == doctest::Approx(2.0 * std::sqrt(2.0) * 0.01));
  }

  // Inflate the reference row: both remaining sets now beat it by far more
  // than the tolerance.
  t.rows[0].emp_variance = 5.0;
  const OrderingReport bad = ordering_check(t, opt);
  CHECK_FALSE(bad.pass);
  CHECK(bad.entries[0].violation);
  CHECK(bad.entries[1].violation);

  // A reference-only table is vacuously consistent.
  VarianceTable solo;
  solo.rows.push_back(toy_table(g).rows[0]);
  const OrderingReport vac = ordering_check(solo, opt);
  CHECK(vac.pass);
  CHECK(vac.entries.empty());

  CHECK_THROWS_AS(ordering_check(toy_table(g), VertexSet::of_names(g, {"B2"})),
                  MissingRowError);
}

TEST_CASE("pairwise variance comparisons") {
  const DiscreteScm m = load_discrete_fixture("fork5.json");
  const Dag& g = m.dag();
  const VarianceTable t = toy_table(g);
  const VertexSet small = VertexSet::of_names(g, {"G1", "G2"});
  const VertexSet big = VertexSet::of_names(g, {"B2", "G1"});
  CHECK(variance_leq(t, small, big));
  CHECK_FALSE(variance_leq(t, big, small));
  // Ties pass in both directions.
  CHECK(variance_leq(t, small, small));
}

TEST_CASE("bias demonstration on the adversarial fixture") {
  const DiscreteScm m = load_discrete_fixture("chain5_dense_biased.json");
  const Dag& g = m.dag();
  const QuerySpec q = ay_query(g);
  const VertexSet invalid = VertexSet::of_names(g, {"B1", "G2"});
  const VertexSet valid = VertexSet::of_names(g, {"G1", "G2"});

  const BiasReport report = bias_experiment(m, q, invalid, valid, 1, 20000);
  CHECK(report.truth == doctest::Approx(true_wcde(m, q)).epsilon(1e-12));
  CHECK(report.population_valid == doctest::Approx(report.truth).epsilon(1e-9));
  CHECK(report.population_gap > 0.05);
  CHECK(report.estimator_gap > 0.025);
  CHECK(std::abs(report.estimate_valid - report.truth) <
        report.population_gap / 2.0);
  CHECK(report.n == 20000);
  CHECK(report.seed == 1);

  // Passing a fully valid set as the "invalid" one is a usage error.
  CHECK_THROWS_AS(bias_experiment(m, q, valid, valid), PreconditionError);
  // So is an invalid set that already breaks the backdoor criteria.
  CHECK_THROWS_AS(bias_experiment(m, q, VertexSet(), valid), PreconditionError);
}

TEST_CASE("non-adversarial parameterizations are rejected") {
  // Rebuild the fixture's graph with a conditional law for G1 that ignores
  // G2. The projection criterion still fails graphically, but the extra
  // dependence it guards against vanishes, so the population gap collapses.
  const DiscreteScm base = load_discrete_fixture("chain5_dense_biased.json");
  const Dag& g = base.dag();
  std::vector<std::vector<double>> cpts;
  for (int v = 0; v < g.node_count(); ++v) cpts.push_back(base.cpt(NodeId{v}));
  const NodeId g1 = g.node("G1");
  REQUIRE(base.cpt_parents(g1) ==
          std::vector<NodeId>{g.node("G2"), g.node("B1")});
  // Rows iterate (G2, B1) with B1 fastest; make both G2 rows identical.
  cpts[g1.index] = {0.7, 0.3, 0.4, 0.6, 0.7, 0.3, 0.4, 0.6};
  const DiscreteScm flat = DiscreteScm::create(g, base.cardinalities(), cpts);

  const QuerySpec q = ay_query(g);
  const VertexSet invalid = VertexSet::of_names(g, {"B1", "G2"});
  const VertexSet valid = VertexSet::of_names(g, {"G1", "G2"});
  CHECK_FALSE(check_vas(g, q, invalid).valid);
  try {
    bias_experiment(flat, q, invalid, valid);
    FAIL("expected FixtureNotAdversarialError");
  } catch (const FixtureNotAdversarialError& e) {
    CHECK(e.gap() < 1e-9);
  }
}

TEST_SUITE_END();
