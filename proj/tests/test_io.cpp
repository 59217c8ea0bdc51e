#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <variant>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "wcde/errors.hpp"
#include "wcde/io.hpp"

using namespace wcde;
using wcde_test::chain5_dense_dag;
using wcde_test::fixture_path;
using wcde_test::load_discrete_fixture;

namespace {

struct CliResult {
  int status = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(WCDE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.output.append(buf, got);
  }
  const int rc = pclose(pipe);
  REQUIRE(WIFEXITED(rc));
  result.status = WEXITSTATUS(rc);
  return result;
}

QuerySpec ay_query(const Dag& g) {
  return QuerySpec{g.node("A"), g.node("Y"), 1.0, 0.0};
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("dag text round trip") {
  const std::string text =
      "# a lone vertex\n"
      "X\n"
      "\n"
      "A -> B   # directed edge\n"
      "B -> C\n"
      "A -> C\n";
  const Dag g = parse_dag_text(text);
  CHECK(g.names() == std::vector<std::string>{"X", "A", "B", "C"});
  CHECK(g.edges().size() == 3);
  CHECK(g.has_edge(g.node("A"), g.node("C")));

  const std::string serialized = serialize_dag(g);
  CHECK(serialized == "X\nA\nB\nC\nA -> B\nA -> C\nB -> C\n");
  const Dag again = parse_dag_text(serialized);
  CHECK(again.names() == g.names());
  CHECK(again.edges() == g.edges());
}

TEST_CASE("dag text rejections") {
  auto line_of = [](const std::string& text) {
    try {
      parse_dag_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("A -> B -> C\n") == 1);
  CHECK(line_of("A B\n") == 1);
  CHECK(line_of("A ->\n") == 1);
  CHECK(line_of("-> B\n") == 1);
  CHECK(line_of("A -> B\nC D\n") == 2);
  CHECK(line_of("A -> B\n\n# ok\nA E -> F\n") == 4);
  CHECK_THROWS_AS(parse_dag_text("A -> A\n"), CycleError);
  CHECK_THROWS_AS(parse_dag_text("A -> B\nB -> A\n"), CycleError);
}

TEST_CASE("model specs round trip") {
  {
    const std::string text = read_text_file(fixture_path("chain5_dense_biased.json"));
    const ScmVariant model = parse_scm_json(text);
    const auto& m = std::get<DiscreteScm>(model);
    const std::string dumped = scm_to_json(m);
    CHECK(dumped == text);
    const ScmVariant again = parse_scm_json(dumped);
    const auto& m2 = std::get<DiscreteScm>(again);
    CHECK(m2.cardinalities() == m.cardinalities());
    for (int v = 0; v < m.dag().node_count(); ++v) {
      CHECK(m2.cpt(NodeId{v}) == m.cpt(NodeId{v}));
    }
  }
  {
    const std::string text = read_text_file(fixture_path("linear_interaction.json"));
    const ScmVariant model = parse_scm_json(text);
    const auto& m = std::get<LinearScm>(model);
    CHECK(scm_to_json(m) == text);
    const ScmVariant again = parse_scm_json(scm_to_json(m));
    const auto& m2 = std::get<LinearScm>(again);
    CHECK(m2.dag().names() == m.dag().names());
    CHECK(m2.interactions().size() == m.interactions().size());
    CHECK(m2.node(m2.outcome()).coeffs == m.node(m.outcome()).coeffs);
  }
}

TEST_CASE("model spec rejections") {
  auto bad = [](const std::string& text) {
    CHECK_THROWS_AS(parse_scm_json(text), ParseError);
  };
  bad("{");
  bad("[]");
  bad(R"({"nodes": []})");
  bad(R"({"type": 7, "nodes": []})");
  bad(R"({"type": "gaussian", "nodes": []})");
  bad(R"({"type": "discrete"})");
  // Unknown keys are rejected at both levels.
  bad(R"({"type": "discrete", "nodes": [], "seed": 1})");
  bad(R"({"type": "discrete", "nodes": [
        {"name": "X", "cardinality": 2, "cpt": [0.5, 0.5], "weight": 1}]})");
  // Missing and ill-typed node fields.
  bad(R"({"type": "discrete", "nodes": [{"name": "X", "cardinality": 2}]})");
  bad(R"({"type": "discrete", "nodes": [
        {"name": "X", "cardinality": "two", "cpt": [0.5, 0.5]}]})");
  bad(R"({"type": "discrete", "nodes": [{"cardinality": 2, "cpt": [0.5, 0.5]}]})");
  // Linear specs need the exposure marker and well-formed interactions.
  bad(R"({"type": "linear", "nodes": [
        {"name": "A", "coeffs": {}, "noise_sd": 1.0}]})");
  bad(R"({"type": "linear", "exposure": "A", "outcome": "Y",
        "interactions": [["A", "M"]],
        "nodes": [{"name": "A", "coeffs": {}},
                  {"name": "M", "parents": ["A"], "coeffs": {"A": 1.0}},
                  {"name": "Y", "parents": ["A", "M"],
                   "coeffs": {"A": 1.0, "M": 1.0}}]})");
  bad(R"({"type": "linear", "exposure": "A",
        "nodes": [{"name": "A", "coeffs": {}, "cpt": [0.5, 0.5]}]})");

  // The underlying model validation still applies after parsing.
  CHECK_THROWS_AS(parse_scm_json(R"({"type": "discrete", "nodes": [
        {"name": "X", "cardinality": 2, "cpt": [0.6, 0.6]}]})"),
                  PreconditionError);
}

TEST_CASE("csv round trip") {
  Dataset data;
  data.columns = {"A", "Y"};
  data.values = {{0.0, 1.0, 1.0}, {1.0 / 3.0, -2.5, 1e-17}};
  const std::string csv = dataset_to_csv(data);
  const Dataset back = parse_csv(csv);
  CHECK(back.columns == data.columns);
  CHECK(back.values == data.values);  // %.17g is exact for doubles

  const Dataset crlf = parse_csv("A,Y\r\n1,2\r\n\r\n");
  CHECK(crlf.n() == 1);
  CHECK(crlf.column("Y")[0] == 2.0);

  const Dataset spaced = parse_csv("A\n 1.5 \n");
  CHECK(spaced.column("A")[0] == 1.5);
}

TEST_CASE("csv rejections") {
  auto line_of = [](const std::string& text) {
    try {
      parse_csv(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("A,,B\n") == 1);
  CHECK(line_of("A,B\n1\n") == 2);
  CHECK(line_of("A,B\n1,2\n1,2,3\n") == 3);
  CHECK(line_of("A,B\n1,x\n") == 2);
  CHECK(line_of("A,B\n1,2.5extra\n") == 2);
}

TEST_CASE("report renderings") {
  const Dag g = chain5_dense_dag();
  const QuerySpec q = ay_query(g);
  const VertexSet z = VertexSet::of_names(g, {"B1", "G2"});
  const VasReport report = check_vas(g, q, z);

  const nlohmann::json doc = nlohmann::json::parse(vas_report_to_json(report, g, q, z));
  CHECK(doc["exposure"] == "A");
  CHECK(doc["outcome"] == "Y");
  CHECK(doc["adjustment"] == nlohmann::json({"B1", "G2"}));
  CHECK(doc["valid"] == false);
  REQUIRE(doc["criteria"].size() == 4);
  CHECK(doc["criteria"][0]["id"] == 1);
  CHECK(doc["criteria"][0]["pass"] == true);
  CHECK(doc["criteria"][3]["pass"] == false);
  CHECK(doc["criteria"][3]["witness"].get<std::string>().find("G1 <- G2 -> A") !=
        std::string::npos);

  const DiscreteScm m = load_discrete_fixture("fork5.json");
  const Dataset data = sample(m, 500, 4);
  const AdjustmentSet adj = split_adjustment(
      m.dag(), ay_query(m.dag()), VertexSet::of_names(m.dag(), {"G1", "G2"}));
  const EstimateReport est = plugin_estimate(data, m.dag(), ay_query(m.dag()), adj);
  const nlohmann::json est_doc =
      nlohmann::json::parse(estimate_report_to_json(est, m.dag()));
  CHECK(est_doc["method"] == "plugin");
  CHECK(est_doc["adjustment"]["z"] == nlohmann::json({"G1", "G2"}));
  CHECK(est_doc["adjustment"]["z1"] == nlohmann::json({"G1"}));
  CHECK(est_doc["adjustment"]["z2"] == nlohmann::json({"G2"}));
  CHECK(est_doc["wcde"].get<double>() == est.wcde);
  CHECK(est_doc["se"].get<double>() == est.se);
  CHECK(est_doc["n"] == 500);
  CHECK(est_doc["seed"] == 4);

  VarianceTable table;
  table.n = 100;
  table.reps = 10;
  table.seed = 1;
  table.rows.push_back(VarianceRow{VertexSet::of_names(m.dag(), {"G1", "G2"}),
                                   "G1,G2", 0.25, 1.5, 1.4, 0.05});
  const nlohmann::json tab_doc = nlohmann::json::parse(variance_table_to_json(table));
  CHECK(tab_doc["n"] == 100);
  CHECK(tab_doc["rows"][0]["set"] == "G1,G2");
  CHECK(tab_doc["rows"][0]["emp_variance"] == 1.5);

  const std::string csv = results_to_csv(table);
  const std::string header =
      "set,mean_estimate,emp_variance,mean_asym_var,mcse,n,reps,seed\n";
  REQUIRE(csv.substr(0, header.size()) == header);
  const std::string row = csv.substr(header.size());
  CHECK(row.substr(0, 8) == "\"G1,G2\",");  // label quoted against the comma
  CHECK(row.find(",100,10,1\n") != std::string::npos);
}

TEST_CASE("text file helpers") {
  const std::string path = "io_test_scratch.txt";
  write_text_file(path, "hello\n");
  CHECK(read_text_file(path) == "hello\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("definitely_missing_file.txt"), Error);
  CHECK_THROWS_AS(write_text_file("missing_dir/out.txt", "x"), Error);
}

TEST_CASE("command line round trips") {
  write_text_file("cli_dense.dag", serialize_dag(chain5_dense_dag()));

  SUBCASE("check reports validity through the exit code") {
    const CliResult valid =
        run_cli("check --dag cli_dense.dag --exposure A --outcome Y --adjust G1,G2");
    CHECK(valid.status == 0);
    const nlohmann::json doc = nlohmann::json::parse(valid.output);
    CHECK(doc["valid"] == true);

    const CliResult invalid =
        run_cli("check --dag cli_dense.dag --exposure A --outcome Y --adjust B1,G2");
    CHECK(invalid.status == 2);
    const nlohmann::json bad = nlohmann::json::parse(invalid.output);
    CHECK(bad["valid"] == false);
    CHECK(bad["criteria"][3]["witness"].get<std::string>().find("G1 <- G2 -> A") !=
          std::string::npos);
  }

  SUBCASE("enumerate and oset print the dense chain's sets") {
    const CliResult sets =
        run_cli("enumerate --dag cli_dense.dag --exposure A --outcome Y");
    CHECK(sets.status == 0);
    CHECK(nlohmann::json::parse(sets.output) ==
          nlohmann::json({{"G1", "G2"}, {"B1", "G1", "G2"}}));

    const CliResult opt = run_cli("oset --dag cli_dense.dag --exposure A --outcome Y");
    CHECK(opt.status == 0);
    CHECK(opt.output == "G1\nG2\n");
  }

  SUBCASE("dsep distinguishes its verdicts by exit code") {
    const CliResult sep = run_cli(
        "dsep --dag cli_dense.dag --x B1 --y Y --given A,G1,G2");
    CHECK(sep.status == 0);
    CHECK(sep.output == "{\"separated\": true}\n");

    const CliResult conn = run_cli("dsep --dag cli_dense.dag --x A --y Y");
    CHECK(conn.status == 2);
    CHECK(conn.output == "{\"separated\": false}\n");
  }

  SUBCASE("truth reads the query from a linear spec") {
    const CliResult truth =
        run_cli("truth --scm " + fixture_path("linear_interaction.json"));
    CHECK(truth.status == 0);
    CHECK(truth.output == "1.8500000000000001\n");
  }

  SUBCASE("estimate matches the library on a written dataset") {
    const DiscreteScm m = load_discrete_fixture("fork5.json");
    const Dag& g = m.dag();
    const Dataset data = sample(m, 1500, 99);
    write_csv(data, "cli_data.csv");
    write_text_file("cli_fork5.dag", serialize_dag(g));

    const CliResult est = run_cli(
        "estimate --data cli_data.csv --dag cli_fork5.dag --exposure A --outcome Y "
        "--adjust G1,G2 --method plugin");
    CHECK(est.status == 0);
    const nlohmann::json doc = nlohmann::json::parse(est.output);

    const AdjustmentSet adj =
        split_adjustment(g, ay_query(g), VertexSet::of_names(g, {"G1", "G2"}));
    const EstimateReport want = plugin_estimate(data, g, ay_query(g), adj);
    CHECK(doc["wcde"].get<double>() == doctest::Approx(want.wcde).epsilon(1e-12));
    CHECK(doc["var_hat"].get<double>() ==
          doctest::Approx(want.var_hat).epsilon(1e-12));

    std::remove("cli_data.csv");
    std::remove("cli_fork5.dag");
  }

  SUBCASE("simulate writes the results table") {
    const CliResult sim = run_cli(
        "simulate --scm " + fixture_path("fork5.json") +
        " --exposure A --outcome Y "
        "--n 800 --reps 2 --seed 7 --adjust-sets \"G1,G2;B2,G1\" "
        "--out cli_results.csv --threads 1");
    CHECK(sim.status == 0);
    const nlohmann::json doc = nlohmann::json::parse(sim.output);
    CHECK(doc["rows"].size() == 2);
    CHECK(doc["rows"][0]["set"] == "G1,G2");
    CHECK(doc["reps"] == 2);

    const std::string csv = read_text_file("cli_results.csv");
    CHECK(csv.find("\"G1,G2\",") != std::string::npos);
    CHECK(csv.find("\"B2,G1\",") != std::string::npos);
    std::remove("cli_results.csv");
  }

  SUBCASE("usage and runtime failures use distinct exit codes") {
    CHECK(run_cli("").status == 64);
    CHECK(run_cli("check --nope").status == 64);
    CHECK(run_cli("estimate --data x --dag y --exposure A --outcome Y "
                  "--method bogus")
              .status == 64);
    const CliResult missing =
        run_cli("check --dag no_such_file.dag --exposure A --outcome Y --adjust X");
    CHECK(missing.status == 1);
    CHECK(missing.output.find("error:") != std::string::npos);
    // Runtime graph errors also land on the generic failure path.
    const CliResult unknown = run_cli(
        "check --dag cli_dense.dag --exposure A --outcome Y --adjust NOPE");
    CHECK(unknown.status == 1);
  }

  std::remove("cli_dense.dag");
}

TEST_SUITE_END();
