#include "delzant/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace delzant::io {

namespace {

[[noreturn]] void schema(const std::string& pointer, const std::string& what) {
  Error e(ErrorCode::SchemaError, (pointer.empty() ? std::string("/") : pointer) + ": " + what);
  e.pointer = pointer.empty() ? "/" : pointer;
  throw e;
}

// JSON pointer escaping for object keys.
std::string child(const std::string& where, const std::string& key) {
  std::string escaped;
  for (char ch : key) {
    if (ch == '~')
      escaped += "~0";
    else if (ch == '/')
      escaped += "~1";
    else
      escaped += ch;
  }
  return where + "/" + escaped;
}

std::string child(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

void expect_object(const Json& j, const std::string& where, const std::set<std::string>& keys) {
  if (!j.is_object()) schema(where, "expected an object");
  for (const auto& k : keys)
    if (!j.contains(k)) schema(child(where, k), "missing member");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) schema(child(where, it.key()), "unexpected member");
}

const Json& expect_array(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array");
  return j;
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    try {
      Rational q = parse_rational(j.get<std::string>());
      if (q.get_den() == 1) return q.get_num();
    } catch (const Error&) {
    }
  }
  schema(where, "expected an integer");
}

std::size_t index_from_json(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
  schema(where, "expected a nonnegative integer");
}

std::size_t parse_index_key(const std::string& key, const std::string& where) {
  if (key.empty() || key.size() > 9 || key.find_first_not_of("0123456789") != std::string::npos)
    schema(where, "expected a decimal edge index as key");
  return std::stoul(key);
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& pe) {
    // pe.byte is the 1-based offset of the offending character.
    std::size_t at = pe.byte == 0 ? 0 : std::min<std::size_t>(pe.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    Error e(ErrorCode::ParseError, "syntax error at line " + std::to_string(line) + ", column " +
                                       std::to_string(column) + ": " + pe.what());
    e.line = line;
    e.column = column;
    throw e;
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Rational& q) { return Json(to_string(q)); }

Json to_json(const IntVec& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(integer_json(z));
  return a;
}

Json to_json(const RatVec& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(integer_from_json(j, where));
  if (!j.is_string()) schema(where, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    schema(where, e.what());
  }
}

IntVec intvec_from_json(const Json& j, const std::string& where) {
  expect_array(j, where);
  IntVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], child(where, i)));
  return v;
}

Json to_json(const Polytope& p) {
  Json j;
  j["dim"] = p.dim();
  Json hs = Json::array();
  for (const auto& h : p.halfspaces()) {
    Json o;
    o["normal"] = to_json(h.normal);
    o["offset"] = to_json(h.offset);
    hs.push_back(std::move(o));
  }
  j["halfspaces"] = std::move(hs);
  return j;
}

Polytope polytope_from_json(const Json& j, const std::string& where) {
  expect_object(j, where, {"dim", "halfspaces"});
  std::size_t dim = index_from_json(j["dim"], child(where, "dim"));
  std::string hw = child(where, "halfspaces");
  expect_array(j["halfspaces"], hw);
  std::vector<HalfSpace> hs;
  for (std::size_t i = 0; i < j["halfspaces"].size(); ++i) {
    const Json& h = j["halfspaces"][i];
    std::string at = child(hw, i);
    expect_object(h, at, {"normal", "offset"});
    IntVec normal = intvec_from_json(h["normal"], child(at, "normal"));
    if (normal.size() != dim)
      schema(child(at, "normal"), "expected " + std::to_string(dim) + " entries, got " + std::to_string(normal.size()));
    hs.push_back({std::move(normal), rational_from_json(h["offset"], child(at, "offset"))});
  }
  if (dim == 0) {
    if (!hs.empty()) schema(hw, "a 0-dimensional polytope has no half-spaces");
    return Polytope::point();
  }
  return Polytope::from_halfspaces(dim, std::move(hs));
}

Json to_json(const WeightedAdjacencyGraph& g) {
  Json j;
  j["vertices"] = g.vertices;
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    Json o;
    o["ends"] = Json::array({e.ends[0], e.ends[1]});
    o["c"] = to_json(e.c);
    o["m"] = to_json(e.m);
    edges.push_back(std::move(o));
  }
  j["edges"] = std::move(edges);
  return j;
}

WeightedAdjacencyGraph graph_from_json(const Json& j, const std::string& where) {
  expect_object(j, where, {"vertices", "edges"});
  WeightedAdjacencyGraph g;
  std::string vw = child(where, "vertices");
  expect_array(j["vertices"], vw);
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    if (!j["vertices"][i].is_string()) schema(child(vw, i), "expected a vertex id string");
    g.vertices.push_back(j["vertices"][i].get<std::string>());
  }
  std::string ew = child(where, "edges");
  expect_array(j["edges"], ew);
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const Json& e = j["edges"][i];
    std::string at = child(ew, i);
    expect_object(e, at, {"ends", "c", "m"});
    std::string ends = child(at, "ends");
    if (!e["ends"].is_array() || e["ends"].size() != 2) schema(ends, "expected two vertex ids");
    WeightedEdge edge;
    for (std::size_t k = 0; k < 2; ++k) {
      if (!e["ends"][k].is_string()) schema(child(ends, k), "expected a vertex id string");
      edge.ends[k] = e["ends"][k].get<std::string>();
    }
    edge.c = rational_from_json(e["c"], child(at, "c"));
    edge.m = intvec_from_json(e["m"], child(at, "m"));
    g.edges.push_back(std::move(edge));
  }
  return g;
}

Json to_json(const BPolytope& bp) {
  Json j;
  j["graph"] = to_json(bp.graph());
  Json comps = Json::object();
  for (std::size_t i = 0; i < bp.components().size(); ++i) {
    const auto& c = bp.components()[i];
    Json o;
    o["polytope"] = to_json(c.polytope);
    Json marks = Json::object();
    for (const auto& [e, f] : c.infinity_facets) marks[std::to_string(e)] = f;
    o["infinity_facets"] = std::move(marks);
    comps[bp.graph().vertices[i]] = std::move(o);
  }
  j["components"] = std::move(comps);
  return j;
}

BPolytope bpolytope_from_json(const Json& j, const std::string& where) {
  expect_object(j, where, {"graph", "components"});
  WeightedAdjacencyGraph g = graph_from_json(j["graph"], child(where, "graph"));
  std::string cw = child(where, "components");
  const Json& comps = j["components"];
  if (!comps.is_object()) schema(cw, "expected an object keyed by vertex id");
  for (auto it = comps.begin(); it != comps.end(); ++it)
    if (!g.index_of(it.key())) schema(child(cw, it.key()), "no graph vertex with this id");
  std::vector<Component> out;
  for (const auto& id : g.vertices) {
    std::string at = child(cw, id);
    if (!comps.contains(id)) schema(at, "missing component");
    const Json& c = comps[id];
    expect_object(c, at, {"polytope", "infinity_facets"});
    Polytope p = polytope_from_json(c["polytope"], child(at, "polytope"));
    std::string mw = child(at, "infinity_facets");
    if (!c["infinity_facets"].is_object()) schema(mw, "expected an object mapping edge index to facet index");
    std::map<std::size_t, std::size_t> marks;
    for (auto it = c["infinity_facets"].begin(); it != c["infinity_facets"].end(); ++it) {
      std::string kw = child(mw, it.key());
      std::size_t e = parse_index_key(it.key(), kw);
      std::size_t f = index_from_json(it.value(), kw);
      const auto& src = p.source_indices();
      auto pos = std::find(src.begin(), src.end(), f);
      if (pos == src.end()) schema(kw, "facet index " + std::to_string(f) + " is not a facet of the polytope");
      marks[e] = static_cast<std::size_t>(pos - src.begin());
    }
    out.push_back({std::move(p), std::move(marks)});
  }
  return BPolytope(std::move(g), std::move(out));
}

Input input_from_json(const Json& j) {
  if (j.is_object() && j.contains("graph")) return bpolytope_from_json(j);
  return polytope_from_json(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    Error e(ErrorCode::ParseError, "cannot open '" + path + "'");
    throw e;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

Input read_input(const std::string& path) { return input_from_json(parse(read_file(path))); }

namespace {

Json certificate_json(const VertexCertificate& c) {
  Json o;
  o["vertex"] = to_json(c.vertex);
  Json rows = Json::array();
  for (const auto& r : c.edges.row_vectors()) rows.push_back(to_json(r));
  o["edges"] = std::move(rows);
  o["determinant"] = integer_json(c.determinant);
  return o;
}

}  // namespace

Json to_json(const DelzantCheck& c) {
  Json j;
  j["delzant"] = c.delzant;
  Json certs = Json::array();
  for (const auto& cert : c.certificates) certs.push_back(certificate_json(cert));
  j["certificates"] = std::move(certs);
  if (c.witness) j["witness"] = certificate_json(*c.witness);
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

Json to_json(const ParallelHyperplane& f) {
  Json j;
  j["m"] = to_json(f.m);
  j["level"] = to_json(f.level);
  j["common_direction"] = f.common_direction ? to_json(*f.common_direction) : Json(nullptr);
  j["strict"] = f.strict;
  j["facet"] = f.facet ? Json(*f.facet) : Json(nullptr);
  return j;
}

Json to_json(const MorseReport& r) {
  Json j;
  j["betti"] = r.betti.ranks;
  j["euler"] = r.euler;
  j["generic_vector"] = to_json(r.x.x);
  Json pv = Json::array();
  for (const auto& v : r.per_vertex) {
    Json o;
    o["vertex"] = to_json(v.vertex);
    o["component"] = v.component;
    o["k"] = v.k;
    pv.push_back(std::move(o));
  }
  j["per_vertex"] = std::move(pv);
  return j;
}

Json to_json(const BMomentCodomain& z) {
  Json j;
  j["dim"] = z.dim;
  j["charts"] = z.charts;
  j["identity"] = z.identity;
  Json edges = Json::array();
  for (const auto& e : z.edges) {
    Json o;
    o["edge"] = e.edge;
    o["c"] = to_json(e.c);
    o["m"] = to_json(e.weight_direction);
    RatVec weight;
    for (const auto& mi : e.weight_direction) weight.push_back(-e.c * Rational(mi));
    o["weight"] = to_json(weight);
    Json basis = Json::array();
    for (const auto& b : e.hyperplane) basis.push_back(to_json(b));
    o["hyperplane"] = std::move(basis);
    Json signs = Json::object();
    for (const auto& [id, s] : e.chart_sign) signs[id] = s;
    o["chart_sign"] = std::move(signs);
    edges.push_back(std::move(o));
  }
  j["edges"] = std::move(edges);
  return j;
}

Json to_json(const ReassemblyPlan& plan) {
  Json j;
  j["graph"] = to_json(plan.graph);
  Json steps = Json::array();
  for (const auto& s : plan.steps) {
    Json o;
    o["edge"] = s.edge;
    o["blocks"] = Json::array({plan.graph.vertices[s.blocks[0]], plan.graph.vertices[s.blocks[1]]});
    o["c"] = to_json(s.c);
    o["m"] = to_json(s.m);
    o["levels"] = Json::array({to_json(s.levels[0]), to_json(s.levels[1])});
    steps.push_back(std::move(o));
  }
  j["steps"] = std::move(steps);
  return j;
}

Json to_json(const EdgeCollar& c) {
  Json j;
  j["w"] = to_json(c.w);
  j["levels"] = Json::array({to_json(c.levels[0]), to_json(c.levels[1])});
  j["slice"] = to_json(c.slice);
  return j;
}

Json report(bool ok, Json payload, const std::vector<std::string>& log) {
  Json j;
  j["status"] = ok ? "ok" : "error";
  j["payload"] = std::move(payload);
  j["log"] = log;
  return j;
}

Json error_payload(const Error& e) {
  Json j;
  j["error"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  if (e.vertex) j["vertex"] = to_json(*e.vertex);
  if (e.determinant) j["determinant"] = integer_json(*e.determinant);
  if (e.direction) j["direction"] = to_json(*e.direction);
  if (e.pointer) j["pointer"] = *e.pointer;
  if (e.line) j["line"] = *e.line;
  if (e.column) j["column"] = *e.column;
  return j;
}

}  // namespace delzant::io
