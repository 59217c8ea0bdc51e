#include "wcde/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wcde/errors.hpp"

namespace wcde {

namespace {

using nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool has_space(const std::string& s) {
  for (char c : s) {
    if (c == ' ' || c == '\t') return true;
  }
  return false;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

void reject_unknown_keys(const nlohmann::json& obj, const std::vector<std::string>& known,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const std::string& k : known) {
      if (item.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ParseError("unknown key '" + item.key() + "' in " + where, 0);
    }
  }
}

}  // namespace

Dag parse_dag_text(const std::string& text) {
  std::vector<std::string> nodes;
  std::unordered_set<std::string> seen;
  std::vector<std::pair<std::string, std::string>> edges;
  auto declare = [&](const std::string& name) {
    if (seen.insert(name).second) nodes.push_back(name);
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) {
      if (has_space(line)) {
        throw ParseError("expected 'PARENT -> CHILD' or a single node name", line_no);
      }
      declare(line);
      continue;
    }
    if (line.find("->", arrow + 2) != std::string::npos) {
      throw ParseError("more than one '->' on a line", line_no);
    }
    const std::string parent = trim(line.substr(0, arrow));
    const std::string child = trim(line.substr(arrow + 2));
    if (parent.empty() || child.empty() || has_space(parent) || has_space(child)) {
      throw ParseError("expected 'PARENT -> CHILD'", line_no);
    }
    declare(parent);
    declare(child);
    edges.emplace_back(parent, child);
  }
  return Dag::build(nodes, edges);
}

Dag parse_dag_file(const std::string& path) { return parse_dag_text(read_text_file(path)); }

std::string serialize_dag(const Dag& g) {
  std::string out;
  for (const std::string& name : g.names()) {
    out += name;
    out += "\n";
  }
  for (const auto& [parent, child] : g.edges()) {
    out += g.name(parent);
    out += " -> ";
    out += g.name(child);
    out += "\n";
  }
  return out;
}

ScmVariant parse_scm_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  try {
    if (!doc.is_object()) throw ParseError("model spec must be a JSON object", 0);
    if (!doc.contains("type") || !doc["type"].is_string()) {
      throw ParseError("model spec needs a string 'type'", 0);
    }
    const std::string type = doc["type"].get<std::string>();
    if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
      throw ParseError("model spec needs a 'nodes' array", 0);
    }

    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& node : doc["nodes"]) {
      if (!node.is_object() || !node.contains("name")) {
        throw ParseError("each node needs a 'name'", 0);
      }
      const std::string name = node["name"].get<std::string>();
      names.push_back(name);
      if (node.contains("parents")) {
        for (const auto& p : node["parents"]) {
          edges.emplace_back(p.get<std::string>(), name);
        }
      }
    }

    if (type == "discrete") {
      reject_unknown_keys(doc, {"type", "nodes"}, "discrete model spec");
      Dag g = Dag::build(names, edges);
      std::vector<int> cards(names.size(), 0);
      std::vector<std::vector<double>> cpts(names.size());
      for (const auto& node : doc["nodes"]) {
        reject_unknown_keys(node, {"name", "parents", "cardinality", "cpt"},
                            "node '" + node["name"].get<std::string>() + "'");
        if (!node.contains("cardinality") || !node.contains("cpt")) {
          throw ParseError(
              "discrete node '" + node["name"].get<std::string>() +
                  "' needs 'cardinality' and 'cpt'",
              0);
        }
        const NodeId v = g.node(node["name"].get<std::string>());
        cards[v.index] = node["cardinality"].get<int>();
        cpts[v.index] = node["cpt"].get<std::vector<double>>();
      }
      return DiscreteScm::create(std::move(g), std::move(cards), std::move(cpts));
    }

    if (type == "linear") {
      reject_unknown_keys(doc, {"type", "nodes", "exposure", "outcome", "interactions"},
                          "linear model spec");
      if (!doc.contains("exposure") || !doc["exposure"].is_string()) {
        throw ParseError("linear model spec needs a string 'exposure'", 0);
      }
      Dag g = Dag::build(names, edges);
      std::vector<LinearScm::Node> nodes(names.size());
      for (const auto& node : doc["nodes"]) {
        reject_unknown_keys(node, {"name", "parents", "coeffs", "intercept", "noise_sd"},
                            "node '" + node["name"].get<std::string>() + "'");
        const NodeId v = g.node(node["name"].get<std::string>());
        LinearScm::Node& spec = nodes[v.index];
        if (node.contains("intercept")) spec.intercept = node["intercept"].get<double>();
        if (node.contains("noise_sd")) spec.noise_sd = node["noise_sd"].get<double>();
        if (node.contains("coeffs")) {
          for (const auto& item : node["coeffs"].items()) {
            spec.coeffs[item.key()] = item.value().get<double>();
          }
        }
      }
      std::string outcome;
      if (doc.contains("outcome")) outcome = doc["outcome"].get<std::string>();
      std::vector<std::tuple<std::string, std::string, double>> interactions;
      if (doc.contains("interactions")) {
        for (const auto& term : doc["interactions"]) {
          if (!term.is_array() || term.size() != 3) {
            throw ParseError("each interaction must be [exposure, mediator, gamma]", 0);
          }
          interactions.emplace_back(term.at(0).get<std::string>(),
                                    term.at(1).get<std::string>(),
                                    term.at(2).get<double>());
        }
      }
      return LinearScm::create(std::move(g), std::move(nodes),
                               doc["exposure"].get<std::string>(), outcome, interactions);
    }

    throw ParseError("unknown model type '" + type + "'", 0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed model spec: ") + e.what(), 0);
  }
}

ScmVariant load_scm(const std::string& path) { return parse_scm_json(read_text_file(path)); }

std::string scm_to_json(const DiscreteScm& m) {
  const Dag& g = m.dag();
  ordered_json doc;
  doc["type"] = "discrete";
  doc["nodes"] = ordered_json::array();
  for (int i = 0; i < g.node_count(); ++i) {
    const NodeId v{i};
    ordered_json node;
    node["name"] = g.name(v);
    ordered_json parents = ordered_json::array();
    for (NodeId p : m.cpt_parents(v)) parents.push_back(g.name(p));
    node["parents"] = std::move(parents);
    node["cardinality"] = m.cardinality(v);
    node["cpt"] = m.cpt(v);
    doc["nodes"].push_back(std::move(node));
  }
  return doc.dump(2) + "\n";
}

std::string scm_to_json(const LinearScm& m) {
  const Dag& g = m.dag();
  ordered_json doc;
  doc["type"] = "linear";
  doc["exposure"] = g.name(m.exposure());
  if (m.has_outcome()) doc["outcome"] = g.name(m.outcome());
  doc["nodes"] = ordered_json::array();
  for (int i = 0; i < g.node_count(); ++i) {
    const NodeId v{i};
    const LinearScm::Node& spec = m.node(v);
    ordered_json node;
    node["name"] = g.name(v);
    ordered_json parents = ordered_json::array();
    for (NodeId p : g.parents_of(v)) parents.push_back(g.name(p));
    node["parents"] = std::move(parents);
    node["intercept"] = spec.intercept;
    node["noise_sd"] = spec.noise_sd;
    ordered_json coeffs = ordered_json::object();
    for (NodeId p : g.parents_of(v)) coeffs[g.name(p)] = spec.coeffs.at(g.name(p));
    node["coeffs"] = std::move(coeffs);
    doc["nodes"].push_back(std::move(node));
  }
  if (!m.interactions().empty()) {
    ordered_json terms = ordered_json::array();
    for (const LinearScm::Interaction& term : m.interactions()) {
      terms.push_back(ordered_json::array(
          {g.name(term.exposure), g.name(term.mediator), term.gamma}));
    }
    doc["interactions"] = std::move(terms);
  }
  return doc.dump(2) + "\n";
}

std::string dataset_to_csv(const Dataset& data) {
  std::string out;
  for (std::size_t c = 0; c < data.columns.size(); ++c) {
    if (c) out += ",";
    out += data.columns[c];
  }
  out += "\n";
  const int n = data.n();
  for (int r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < data.columns.size(); ++c) {
      if (c) out += ",";
      out += fmt_double(data.values[c][static_cast<std::size_t>(r)]);
    }
    out += "\n";
  }
  return out;
}

Dataset parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  if (!std::getline(in, raw)) throw ParseError("empty CSV", 1);
  if (!raw.empty() && raw.back() == '\r') raw.pop_back();
  Dataset data;
  data.columns = split(raw, ',');
  for (const std::string& name : data.columns) {
    if (name.empty()) throw ParseError("empty column name in CSV header", 1);
  }
  data.values.assign(data.columns.size(), {});
  int line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    const std::vector<std::string> cells = split(raw, ',');
    if (cells.size() != data.columns.size()) {
      throw ParseError("expected " + std::to_string(data.columns.size()) +
                           " cells, found " + std::to_string(cells.size()),
                       line_no);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string cell = trim(cells[c]);
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        data.values[c].push_back(v);
      } catch (const std::exception&) {
        throw ParseError("cannot parse numeric cell '" + cells[c] + "'", line_no);
      }
    }
  }
  return data;
}

Dataset read_csv(const std::string& path) { return parse_csv(read_text_file(path)); }

void write_csv(const Dataset& data, const std::string& path) {
  write_text_file(path, dataset_to_csv(data));
}

std::string vas_report_to_json(const VasReport& report, const Dag& g, const QuerySpec& q,
                               const VertexSet& z) {
  ordered_json doc;
  doc["exposure"] = g.name(q.exposure);
  doc["outcome"] = g.name(q.outcome);
  doc["adjustment"] = z.names(g);
  doc["valid"] = report.valid;
  doc["criteria"] = ordered_json::array();
  for (const CriterionResult& c : report.criteria) {
    ordered_json entry;
    entry["id"] = c.id;
    entry["pass"] = c.pass;
    entry["witness"] = c.witness;
    doc["criteria"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string estimate_report_to_json(const EstimateReport& report, const Dag& g) {
  ordered_json doc;
  doc["method"] = report.method == EstimatorKind::PlugIn ? "plugin" : "onestep";
  ordered_json adj;
  adj["z"] = report.adjustment.z.names(g);
  adj["z1"] = report.adjustment.z1.names(g);
  adj["z2"] = report.adjustment.z2.names(g);
  doc["adjustment"] = std::move(adj);
  doc["t_a"] = report.t_a;
  doc["t_a_star"] = report.t_a_star;
  doc["wcde"] = report.wcde;
  doc["var_hat"] = report.var_hat;
  doc["se"] = report.se;
  doc["n"] = report.n;
  doc["seed"] = report.seed;
  return doc.dump(2) + "\n";
}

std::string variance_table_to_json(const VarianceTable& table) {
  ordered_json doc;
  doc["n"] = table.n;
  doc["reps"] = table.reps;
  doc["seed"] = table.seed;
  doc["rows"] = ordered_json::array();
  for (const VarianceRow& row : table.rows) {
    ordered_json entry;
    entry["set"] = row.label;
    entry["mean_estimate"] = row.mean_estimate;
    entry["emp_variance"] = row.emp_variance;
    entry["mean_asym_var"] = row.mean_asym_var;
    entry["mcse"] = row.mcse;
    doc["rows"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string results_to_csv(const VarianceTable& table) {
  std::string out = "set,mean_estimate,emp_variance,mean_asym_var,mcse,n,reps,seed\n";
  for (const VarianceRow& row : table.rows) {
    out += "\"" + row.label + "\"," + fmt_double(row.mean_estimate) + "," +
           fmt_double(row.emp_variance) + "," + fmt_double(row.mean_asym_var) + "," +
           fmt_double(row.mcse) + "," + std::to_string(table.n) + "," +
           std::to_string(table.reps) + "," + std::to_string(table.seed) + "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("cannot read file: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw Error("cannot write file: " + path);
}

}  // namespace wcde
