#include "eigenform/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "eigenform/errors.hpp"

namespace eigenform {

namespace {

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

int int_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  return v.get<double>();
}

Json int_lists(const std::vector<std::vector<int>>& lists) {
  Json out = Json::array();
  for (const auto& l : lists) out.push_back(l);
  return out;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

void render(const Json& value, const std::string& prefix, std::ostringstream& os) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items())
      render(item, prefix.empty() ? key : prefix + "." + key, os);
    return;
  }
  const bool nested_objects = value.is_array() && std::any_of(value.begin(), value.end(),
                                                              [](const Json& e) { return e.is_object(); });
  if (nested_objects) {
    for (std::size_t i = 0; i < value.size(); ++i)
      render(value[i], prefix + "[" + std::to_string(i) + "]", os);
    return;
  }
  os << prefix << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

}  // namespace

FractalFile parse_fractal(std::string_view text) {
  const Json j = parse_text(text);
  FractalFile f;
  const Json& name = field(j, "name");
  if (!name.is_string()) throw InvalidInput("field \"name\" must be a string");
  f.triple.name = name.get<std::string>();
  f.triple.N = int_field(j, "N");
  f.triple.k = int_field(j, "k");
  f.triple.num_v1 = int_field(j, "vertices");
  const Json& cells = field(j, "cells");
  if (!cells.is_array()) throw InvalidInput("field \"cells\" must be an array");
  for (const Json& cell : cells) {
    if (!cell.is_array()) throw InvalidInput("each cell must be an array of vertex ids");
    std::vector<int> ids;
    for (const Json& v : cell) {
      if (!v.is_number_integer()) throw InvalidInput("cell entries must be integers");
      ids.push_back(v.get<int>());
    }
    f.triple.cells.push_back(std::move(ids));
  }
  if (j.contains("weights")) {
    const Json& w = j.at("weights");
    if (!w.is_array()) throw InvalidInput("field \"weights\" must be an array");
    std::vector<double> r;
    for (const Json& v : w) r.push_back(number(v, "weight"));
    f.weights = Weights(std::move(r));
  } else {
    f.weights = Weights::uniform(std::max(f.triple.k, 0));
  }
  return f;
}

FractalFile load_fractal(const std::string& path) {
  constexpr std::string_view prefix = "builtin:";
  if (path.starts_with(prefix)) {
    FractalFile f;
    f.triple = builtin(std::string_view(path).substr(prefix.size()));
    f.weights = Weights::uniform(f.triple.k);
    return f;
  }
  return parse_fractal(read_file(path));
}

DirichletForm parse_form(std::string_view text) {
  const Json j = parse_text(text);
  const int n = int_field(j, "N");
  if (n < 2) throw InvalidInput("form needs N >= 2");
  DirichletForm form(n);
  const Json& coeffs = field(j, "coefficients");
  if (!coeffs.is_array()) throw InvalidInput("field \"coefficients\" must be an array");
  std::set<std::pair<int, int>> seen;
  for (const Json& entry : coeffs) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer())
      throw InvalidInput("each coefficient must be [j1, j2, c] with integer ids");
    const int a = entry[0].get<int>();
    const int b = entry[1].get<int>();
    if (a >= b) throw InvalidInput("coefficient ids must satisfy j1 < j2");
    if (!seen.insert({a, b}).second)
      throw InvalidInput("duplicate coefficient {" + std::to_string(a) + "," + std::to_string(b) + "}");
    form.set(a, b, number(entry[2], "coefficient"));
  }
  return form;
}

DirichletForm load_form(const std::string& path) { return parse_form(read_file(path)); }

Json fractal_json(const FractalTriple& t, const Weights& r) {
  Json out;
  out["name"] = t.name;
  out["N"] = t.N;
  out["k"] = t.k;
  out["vertices"] = t.num_v1;
  out["cells"] = int_lists(t.cells);
  out["weights"] = std::vector<double>(r.values().begin(), r.values().end());
  return out;
}

Json form_json(const DirichletForm& form) {
  Json out;
  out["N"] = form.size();
  Json coeffs = Json::array();
  for (const auto& [a, b] : pair_list(form.size())) {
    const double c = form.coeff(a, b);
    if (c != 0.0) coeffs.push_back(Json::array({a, b, c}));
  }
  out["coefficients"] = std::move(coeffs);
  return out;
}

Json edges_json(const Graph& g) {
  Json out = Json::array();
  for (const auto& [a, b] : g.edges()) out.push_back(Json::array({a, b}));
  return out;
}

Json validation_json(const FractalTriple& t, const ValidationReport& report) {
  Json out;
  out["name"] = t.name;
  out["valid"] = report.empty();
  Json list = Json::array();
  for (const Violation& v : report) list.push_back({{"code", v.code}, {"message", v.message}});
  out["violations"] = std::move(list);
  return out;
}

Json components_json(const ComponentData& comp) {
  Json out;
  out["j"] = comp.j;
  out["components"] = int_lists(comp.components);
  out["beta"] = comp.beta;
  out["periods"] = comp.periods;
  out["c_prime"] = int_lists(comp.c_prime);
  out["c_second"] = int_lists(comp.c_second);
  out["l_map"] = int_lists(comp.l_map);
  return out;
}

Json eigen_result_json(const EigenResult& res) {
  Json out;
  out["converged"] = res.converged;
  out["rho"] = res.rho;
  out["residual"] = res.residual;
  out["iterations"] = res.iterations;
  out["message"] = res.message;
  out["form"] = form_json(res.form);
  Json checks = Json::array();
  for (const EigenCheck& c : res.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  out["checks"] = std::move(checks);
  return out;
}

Json perron_json(const PerronData& pd) {
  Json out;
  out["j"] = pd.j;
  out["s"] = pd.s;
  out["period"] = pd.period;
  out["l"] = pd.l;
  out["u_bar"] = vector_json(pd.u_bar);
  out["u_tilde"] = vector_json(pd.u_tilde);
  return out;
}

Json verdict_json(const StabilityVerdict& v) {
  Json out;
  out["unique"] = v.unique;
  out["rho"] = v.rho;
  out["sink_scc_count"] = v.sink_scc_count;
  out["sink_sccs"] = int_lists(v.sink_sccs);
  if (v.witnesses) out["witnesses"] = Json::array({v.witnesses->first, v.witnesses->second});
  Json nodes = Json::array();
  for (const NodeId& n : v.digraph.nodes) nodes.push_back({{"j", n.j}, {"s", n.s}});
  Json edges = Json::array();
  for (const auto& [a, b] : v.digraph.edges()) edges.push_back(Json::array({a, b}));
  out["digraph"] = {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  if (v.positive_case_unique) out["positive_case_unique"] = *v.positive_case_unique;
  out["warnings"] = v.digraph.warnings;
  return out;
}

Json exploration_json(const Exploration& ex) {
  Json out;
  out["perturbed_nodes"] = ex.perturbed_nodes;
  out["delta"] = ex.delta;
  out["retries"] = ex.retries;
  out["start"] = form_json(ex.start);
  out["result"] = eigen_result_json(ex.result);
  out["verified"] = ex.verified;
  out["proportional"] = ex.proportional;
  return out;
}

std::string render_text(const Json& value) {
  std::ostringstream os;
  render(value, "", os);
  return os.str();
}

}  // namespace eigenform
