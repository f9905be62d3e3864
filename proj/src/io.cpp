#include "plap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "plap/error.hpp"

namespace plap::io {
namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::invalid_argument, where + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

}  // namespace

json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(source + ":" + std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path.string());
}

namespace {
double positive(double x, const std::string& where) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(where, "must be a positive finite number");
  return x;
}
}  // namespace

Domain parse_problem(const json& doc) {
  std::vector<VertexSpec> vertices;
  const auto& vs = as_array(member(doc, "vertices", "graph"), "vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    vertices.push_back({as_string(member(vs[i], "id", where), where + ".id"),
                        positive(as_number(member(vs[i], "mu", where), where + ".mu"), where + ".mu")});
  }
  std::vector<EdgeSpec> edges;
  const auto& es = as_array(member(doc, "edges", "graph"), "edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    edges.push_back({as_string(member(es[i], "u", where), where + ".u"),
                     as_string(member(es[i], "v", where), where + ".v"),
                     positive(as_number(member(es[i], "w", where), where + ".w"), where + ".w")});
  }
  std::vector<std::string> omega;
  const auto& os = as_array(member(doc, "omega", "graph"), "omega");
  for (std::size_t i = 0; i < os.size(); ++i) {
    omega.push_back(as_string(os[i], "omega[" + std::to_string(i) + "]"));
  }
  auto graph = std::make_shared<const WeightedGraph>(std::move(vertices), std::move(edges));
  return Domain::from_ids(std::move(graph), omega);
}

Domain load_problem(const std::filesystem::path& path) { return parse_problem(read_json_file(path)); }

json problem_to_json(const Domain& d) {
  const auto& g = d.graph();
  json vertices = json::array();
  for (Vertex v = 0; v < g.num_vertices(); ++v) vertices.push_back({{"id", g.id(v)}, {"mu", g.mu(v)}});
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({{"u", g.id(e.u)}, {"v", g.id(e.v)}, {"w", e.w}});
  json omega = json::array();
  for (Vertex v : d.omega()) omega.push_back(g.id(v));
  return {{"vertices", vertices}, {"edges", edges}, {"omega", omega}};
}

DirichletFunction parse_function(const Domain& d, const json& doc) {
  const json* values = nullptr;
  if (doc.is_object() && doc.contains("values")) {
    values = &doc["values"];
  } else if (doc.is_object() && doc.contains("u")) {
    values = &member(doc["u"], "values", "u");
  } else {
    fail("function", "missing field \"values\"");
  }
  if (!values->is_object()) fail("values", "expected an object mapping vertex ids to numbers");
  DirichletFunction u = zero_function(d);
  for (const auto& [id, value] : values->items()) {
    auto v = d.graph().find(id);
    if (!v) fail("values." + id, "unknown vertex id");
    auto i = d.local_index(*v);
    if (!i) fail("values." + id, "vertex is not in omega");
    u[*i] = as_number(value, "values." + id);
  }
  return u;
}

DirichletFunction load_function(const Domain& d, const std::filesystem::path& path) {
  return parse_function(d, read_json_file(path));
}

json to_json(const Domain& d, const DirichletFunction& u) {
  json values = json::object();
  for (std::size_t i = 0; i < d.size(); ++i) values[d.graph().id(d.omega()[i])] = u[i];
  return {{"values", values}};
}

json to_json(const Domain& d, const VertexSet& s) {
  json out = json::array();
  for (Vertex v : s) out.push_back(d.graph().id(v));
  return out;
}

json to_json(const Domain& d, const CheegerReport& report) {
  json cuts = json::array();
  for (const auto& c : report.cuts) {
    cuts.push_back({{"subset", to_json(d, c.subset)},
                    {"cut_weight", c.cut_weight},
                    {"volume", c.volume},
                    {"ratio", c.ratio}});
  }
  return {{"h", report.h}, {"cuts", cuts}, {"domain_size", report.domain_size}};
}

json to_json(const Domain& d, const Eigenpair& pair) {
  return {{"p", pair.p},
          {"lambda", pair.lambda},
          {"u", to_json(d, pair.u)},
          {"residual", pair.residual},
          {"iterations", pair.iterations},
          {"epsilon_final", pair.epsilon_final}};
}

json to_json(const Domain& d, const Decomposition& dec) {
  json sets = json::array();
  for (const auto& s : dec.sets) sets.push_back(to_json(d, s));
  return {{"N", dec.sets.size()}, {"coefficients", dec.coefficients}, {"sets", sets}, {"levels", dec.levels}};
}

json to_json(const Domain& d, const StructureReport& report) {
  return {{"ok", report.ok},
          {"h", report.h},
          {"quotient", report.quotient},
          {"quotient_matches_h", report.quotient_matches_h},
          {"set_is_cheeger_cut", report.set_is_cheeger_cut},
          {"nested", report.nested},
          {"decomposition", to_json(d, report.decomposition)}};
}

json to_json(const Lambda11Check& check) {
  return {{"ok", check.ok},
          {"h", check.h},
          {"min_indicator_quotient", check.min_indicator_quotient},
          {"indicator_min_equals_h", check.indicator_min_equals_h},
          {"min_sample_quotient", check.min_sample_quotient},
          {"samples_above_h", check.samples_above_h}};
}

json to_json(const Domain& d, const SweepReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"p", r.p},
                       {"lambda", r.lambda},
                       {"u", to_json(d, r.u)},
                       {"residual", r.residual},
                       {"iterations", r.iterations}});
  }
  json out = {{"schedule", report.schedule},
              {"records", records},
              {"h", report.h ? json(*report.h) : json(nullptr)},
              {"limit_estimate", report.limit_estimate.size() ? to_json(d, report.limit_estimate) : json(nullptr)},
              {"decomposition", report.decomposition ? to_json(d, *report.decomposition) : json(nullptr)},
              {"converged", report.converged},
              {"warnings", report.warnings}};
  return out;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sweep_csv(const Domain& d, const SweepReport& report) {
  std::string out = "p,lambda,residual";
  for (Vertex v : d.omega()) out += "," + d.graph().id(v);
  out += '\n';
  for (const auto& r : report.records) {
    out += format_number(r.p) + "," + format_number(r.lambda) + "," + format_number(r.residual);
    for (double x : r.u.values) out += "," + format_number(x);
    out += '\n';
  }
  return out;
}

}  // namespace plap::io
