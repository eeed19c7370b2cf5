// delzant: command-line front end for the Delzant / b-Delzant toolkit.
//
// Every command prints one JSON report {"status", "payload", "log"} on
// stdout. Exit status: 0 ok, 1 domain error, 2 parse, schema or usage error.

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "delzant/bpolytope.hpp"
#include "delzant/error.hpp"
#include "delzant/homology.hpp"
#include "delzant/io.hpp"
#include "delzant/polytope.hpp"
#include "delzant/render.hpp"
#include "delzant/surgery.hpp"

using namespace delzant;
using io::Json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

IntVec parse_intvec(const std::string& text, const std::string& flag) {
  IntVec v;
  for (const auto& part : split(text, ',')) {
    Rational q;
    try {
      q = parse_rational(part);
    } catch (const Error&) {
      throw UsageError(flag + ": '" + part + "' is not an integer");
    }
    if (q.get_den() != 1) throw UsageError(flag + ": '" + part + "' is not an integer");
    v.push_back(q.get_num());
  }
  if (v.empty()) throw UsageError(flag + ": expected a comma-separated integer vector");
  return v;
}

Rational parse_rat(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw UsageError(flag + ": '" + text + "' is not a rational p/q");
  }
}

// "0=1/2,1=1/3:1/4": one level for both ends, or one per end.
CutLevels parse_levels(const std::string& text) {
  CutLevels out;
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--levels: expected edge=p/q, got '" + item + "'");
    std::string key = item.substr(0, eq);
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("--levels: '" + key + "' is not an edge index");
    auto values = split(item.substr(eq + 1), ':');
    if (values.size() == 1) values.push_back(values[0]);
    if (values.size() != 2) throw UsageError("--levels: expected p/q or p/q:r/s in '" + item + "'");
    out[std::stoul(key)] = {parse_rat(values[0], "--levels"), parse_rat(values[1], "--levels")};
  }
  return out;
}

void append_construction_log(const io::Input& in, std::vector<std::string>& log, const std::string& prefix = "") {
  if (auto p = std::get_if<Polytope>(&in)) {
    for (const auto& line : p->construction_log()) log.push_back(prefix + line);
    return;
  }
  const auto& bp = std::get<BPolytope>(in);
  for (std::size_t i = 0; i < bp.components().size(); ++i)
    for (const auto& line : bp.components()[i].polytope.construction_log())
      log.push_back(prefix + "component " + bp.graph().vertices[i] + ": " + line);
}

io::Input load(const std::string& path, std::vector<std::string>& log, const std::string& prefix = "") {
  io::Input in = io::read_input(path);
  append_construction_log(in, log, prefix);
  return in;
}

const Polytope& expect_polytope(const io::Input& in, const std::string& path) {
  if (auto p = std::get_if<Polytope>(&in)) return *p;
  throw Error(ErrorCode::SchemaError, "'" + path + "' holds a b-polytope; this command needs a polytope");
}

BPolytope as_bpolytope(const io::Input& in) {
  if (auto p = std::get_if<Polytope>(&in)) return BPolytope::trivial(*p);
  return std::get<BPolytope>(in);
}

Json check_polytope(const Polytope& p) {
  auto c = is_delzant(p);
  if (!c.delzant) {
    Error e(ErrorCode::NotUnimodular, "not Delzant: " + c.reason);
    e.vertex = c.witness->vertex;
    e.determinant = c.witness->determinant;
    throw e;
  }
  Json j;
  j["kind"] = "polytope";
  j["dim"] = p.dim();
  j["vertex_count"] = p.vertices().size();
  j["check"] = io::to_json(c);
  return j;
}

Json check_bpolytope(const BPolytope& bp) {
  auto c = is_b_delzant(bp);
  if (!c.b_delzant) {
    Error e(ErrorCode::InvalidBPolytope, "not b-Delzant: " + c.reason);
    if (c.witness) {
      e.vertex = c.witness->vertex;
      e.determinant = c.witness->determinant;
    }
    throw e;
  }
  Json j;
  j["kind"] = "b-polytope";
  j["shape"] = bp.shape() == GraphShape::Line ? "line" : "circle";
  j["finite_vertices"] = bp.finite_vertex_count();
  Json collars = Json::array();
  for (std::size_t e = 0; e < bp.graph().edges.size(); ++e) {
    Json o = io::to_json(edge_collar(bp, e));
    o["edge"] = e;
    collars.push_back(std::move(o));
  }
  j["collars"] = std::move(collars);
  if (bp.shape() == GraphShape::Line) {
    Json comps = Json::object();
    for (std::size_t i = 0; i < bp.components().size(); ++i)
      comps[bp.graph().vertices[i]] = io::to_json(is_delzant(bp.components()[i].polytope));
    j["components"] = std::move(comps);
  } else {
    j["slice"] = io::to_json(is_delzant(edge_collar(bp, 0).slice));
  }
  return j;
}

Json interface_json(const Interface& f) {
  Json j;
  j["m"] = io::to_json(f.m);
  j["level"] = io::to_json(f.level);
  return j;
}

int emit(const Json& report, int code) {
  std::cout << io::dump(report);
  return code;
}

int usage_failure(const std::string& message, const std::vector<std::string>& log) {
  Json p;
  p["error"] = "UsageError";
  p["message"] = message;
  return emit(io::report(false, std::move(p), log), 2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delzant and b-Delzant polytope toolkit"};
  app.require_subcommand(1);

  std::vector<std::string> log;
  std::function<Json()> action;

  std::string path, path_b, out, m_text, level_text, delta_text, mode = "preserve", c_text = "1", levels_text, x_text;

  auto* check = app.add_subcommand("check", "certify a polytope (Delzant) or b-polytope (b-Delzant)");
  check->add_option("file", path, "polytope or b-polytope JSON")->required();
  check->callback([&] {
    action = [&] {
      io::Input in = load(path, log);
      if (auto p = std::get_if<Polytope>(&in)) return check_polytope(*p);
      return check_bpolytope(std::get<BPolytope>(in));
    };
  });

  auto* facet = app.add_subcommand("facet", "test a hyperplane <x,m> = level for parallelism and slice it");
  facet->add_option("file", path)->required();
  facet->add_option("--m", m_text, "primitive normal, e.g. 0,1")->required();
  facet->add_option("--level", level_text, "rational level p/q")->required();
  facet->add_option("-o,--out", out, "write the slice polytope here");
  facet->callback([&] {
    action = [&] {
      io::Input in = load(path, log);
      const Polytope& p = expect_polytope(in, path);
      IntVec m = parse_intvec(m_text, "--m");
      Rational level = parse_rat(level_text, "--level");
      auto pc = find_parallel(p, m, level);
      if (!pc.parallel) throw Error(ErrorCode::NotParallel, "hyperplane is not parallel: " + pc.reason);
      auto chart = facet_slice(p, pc.plane);
      Json j;
      j["hyperplane"] = io::to_json(pc.plane);
      j["base_point"] = io::to_json(chart.base_point);
      Json basis = Json::array();
      for (const auto& b : chart.basis) basis.push_back(io::to_json(b));
      j["basis"] = std::move(basis);
      j["slice"] = io::to_json(chart.slice);
      j["slice_delzant"] = is_delzant(chart.slice).delzant;
      if (!out.empty()) {
        io::write_file(out, io::dump(io::to_json(chart.slice)));
        j["file"] = out;
      }
      return j;
    };
  });

  auto* cutc = app.add_subcommand("cut", "symplectic cut P cap {<x,m> >= delta}");
  cutc->add_option("file", path)->required();
  cutc->add_option("--m", m_text, "primitive normal, e.g. -1,-1")->required();
  cutc->add_option("--delta", delta_text, "rational level p/q")->required();
  cutc->add_option("-o,--out", out, "write the cut polytope here");
  cutc->callback([&] {
    action = [&] {
      io::Input in = load(path, log);
      const Polytope& p = expect_polytope(in, path);
      Polytope q = cut(p, parse_intvec(m_text, "--m"), parse_rat(delta_text, "--delta"));
      for (const auto& line : q.construction_log()) log.push_back(line);
      Json j;
      j["polytope"] = io::to_json(q);
      j["vertices"] = Json::array();
      for (const auto& v : q.vertices()) j["vertices"].push_back(io::to_json(v));
      if (!out.empty()) {
        io::write_file(out, io::dump(j["polytope"]));
        j["file"] = out;
      }
      return j;
    };
  });

  auto* glue = app.add_subcommand("glue", "glue two strict-parallel polytopes along a common facet");
  glue->add_option("first", path)->required();
  glue->add_option("second", path_b)->required();
  glue->add_option("--mode", mode, "preserve or reverse")->check(CLI::IsMember({"preserve", "reverse"}));
  glue->add_option("--c", c_text, "weight scalar for --mode reverse (default 1)");
  glue->add_option("--m", m_text, "normal of the gluing hyperplane (inferred when omitted)");
  glue->add_option("--level", level_text, "level of the gluing hyperplane");
  glue->add_option("-o,--out", out, "write the glued polytope or b-polytope here");
  glue->callback([&] {
    action = [&] {
      io::Input a = load(path, log, "first: ");
      io::Input b = load(path_b, log, "second: ");
      const Polytope& p1 = expect_polytope(a, path);
      const Polytope& p2 = expect_polytope(b, path_b);
      bool reversed = mode == "reverse";
      Rational c = parse_rat(c_text, "--c");
      Interface f;
      if (!m_text.empty() || !level_text.empty()) {
        if (m_text.empty() || level_text.empty()) throw UsageError("--m and --level must be given together");
        f = {parse_intvec(m_text, "--m"), parse_rat(level_text, "--level")};
      } else {
        auto candidates = glue_candidates(p1, p2, reversed);
        if (candidates.empty()) {
          // Surface the most specific failure: a facet that is a valid
          // interface on its own but fails for this pair (e.g. convexity).
          for (const auto& h : p1.halfspaces()) {
            try {
              if (reversed)
                glue_reversed(p1, p2, {h.normal, h.offset}, c);
              else
                glue_preserving(p1, p2, {h.normal, h.offset});
            } catch (const Error& e) {
              if (e.code() != ErrorCode::NotStrictParallel) throw;
            }
          }
          throw Error(ErrorCode::NotStrictParallel, "no facet of the first polytope is a strict parallel interface for the second");
        }
        if (candidates.size() > 1) throw UsageError("several gluing interfaces are possible; pass --m and --level");
        f = candidates.front();
        log.push_back("inferred interface <x," + to_string(f.m) + "> = " + to_string(f.level));
      }
      Json j;
      j["interface"] = interface_json(f);
      Json doc;
      if (reversed) {
        BPolytope bp = glue_reversed(p1, p2, f, c, &log);
        const auto& e = bp.graph().edges.front();
        Json w;
        w["c"] = io::to_json(e.c);
        w["m"] = io::to_json(e.m);
        w["label"] = weight_label(e.c, e.m);
        j["weight"] = std::move(w);
        doc = io::to_json(bp);
        j["b_polytope"] = doc;
      } else {
        Polytope q = glue_preserving(p1, p2, f, &log);
        doc = io::to_json(q);
        j["polytope"] = doc;
      }
      if (!out.empty()) {
        io::write_file(out, io::dump(doc));
        j["file"] = out;
      }
      return j;
    };
  });

  auto* dec = app.add_subcommand("decompose", "cut a b-polytope into strict-parallel Delzant blocks");
  dec->add_option("file", path)->required();
  dec->add_option("--levels", levels_text, "cut levels: edge=p/q or edge=p/q:r/s, comma separated");
  dec->add_option("-o,--out", out, "file prefix; writes <prefix>_<vertex>.json and <prefix>_plan.json");
  dec->callback([&] {
    action = [&] {
      io::Input in = load(path, log);
      BPolytope bp = as_bpolytope(in);
      CutLevels levels = levels_text.empty() ? CutLevels{} : parse_levels(levels_text);
      Decomposition d = decompose(bp, levels);
      Json j;
      Json blocks = Json::array();
      Json files = Json::array();
      for (const auto& b : d.blocks) {
        Json o;
        o["vertex"] = b.vertex;
        o["polytope"] = io::to_json(b.polytope);
        Json cuts = Json::object();
        for (const auto& [e, f] : b.cut_facets) cuts[std::to_string(e)] = f;
        o["cut_facets"] = std::move(cuts);
        if (!out.empty()) {
          std::string file = out + "_" + b.vertex + ".json";
          io::write_file(file, io::dump(o["polytope"]));
          files.push_back(file);
        }
        blocks.push_back(std::move(o));
      }
      j["blocks"] = std::move(blocks);
      j["plan"] = io::to_json(d.plan);
      BPolytope again = reassemble(d);
      j["reassembled"] = io::to_json(again);
      j["reassembly_matches"] = again.canonical() == bp.canonical();
      if (!out.empty()) {
        std::string file = out + "_plan.json";
        io::write_file(file, io::dump(j["plan"]));
        files.push_back(file);
        j["files"] = std::move(files);
      }
      return j;
    };
  });

  auto* betti = app.add_subcommand("betti", "Betti numbers by Morse vertex counting");
  betti->add_option("file", path)->required();
  betti->add_option("--X", x_text, "generic vector, e.g. 1,2 (searched when omitted)");
  betti->callback([&] {
    action = [&] {
      io::Input in = load(path, log);
      std::optional<IntVec> x;
      if (!x_text.empty()) x = parse_intvec(x_text, "--X");
      if (auto p = std::get_if<Polytope>(&in)) return io::to_json(morse_report(*p, x));
      return io::to_json(morse_report(std::get<BPolytope>(in), x));
    };
  });

  auto* codomain = app.add_subcommand("codomain", "describe the b-moment codomain of a b-polytope");
  codomain->add_option("file", path)->required();
  codomain->callback([&] {
    action = [&] {
      io::Input in = load(path, log);
      BPolytope bp = as_bpolytope(in);
      return io::to_json(build_codomain(bp.graph(), bp.dim()));
    };
  });

  auto* render = app.add_subcommand("render", "draw a 2-dimensional input as SVG");
  render->add_option("file", path)->required();
  render->add_option("-o,--out", out, "SVG output path")->required();
  render->callback([&] {
    action = [&] {
      io::Input in = load(path, log);
      std::string svg;
      if (auto p = std::get_if<Polytope>(&in))
        svg = render_svg(*p);
      else
        svg = render_svg(std::get<BPolytope>(in));
      io::write_file(out, svg);
      Json j;
      j["file"] = out;
      j["bytes"] = svg.size();
      return j;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_failure(e.what(), log);
  }

  try {
    Json payload = action();
    return emit(io::report(true, std::move(payload), log), 0);
  } catch (const UsageError& e) {
    return usage_failure(e.what(), log);
  } catch (const Error& e) {
    bool input = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::SchemaError;
    return emit(io::report(false, io::error_payload(e), log), input ? 2 : 1);
  } catch (const std::exception& e) {
    Json p;
    p["error"] = "IOError";
    p["message"] = e.what();
    return emit(io::report(false, std::move(p), log), 1);
  }
}
