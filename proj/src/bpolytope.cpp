#include "delzant/bpolytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "delzant/error.hpp"
#include "delzant/surgery.hpp"

namespace delzant {

std::optional<std::size_t> WeightedAdjacencyGraph::index_of(const std::string& id) const {
  auto it = std::find(vertices.begin(), vertices.end(), id);
  if (it == vertices.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices.begin());
}

std::vector<std::size_t> WeightedAdjacencyGraph::incident_edges(const std::string& id) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges.size(); ++e)
    for (const auto& end : edges[e].ends)
      if (end == id) out.push_back(e);
  return out;
}

namespace {

GraphCheck fail(std::string reason, std::string vertex = {}, std::vector<std::size_t> edges = {}) {
  GraphCheck r;
  r.reason = std::move(reason);
  r.vertex = std::move(vertex);
  r.edges = std::move(edges);
  return r;
}

}  // namespace

GraphCheck validate_graph(const WeightedAdjacencyGraph& g) {
  if (g.vertices.empty()) return fail("graph has no vertices");
  std::set<std::string> ids(g.vertices.begin(), g.vertices.end());
  if (ids.size() != g.vertices.size()) return fail("duplicate vertex id");
  std::size_t dim = g.edges.empty() ? 0 : g.edges.front().m.size();
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    for (const auto& end : edge.ends)
      if (!ids.count(end)) return fail("edge " + std::to_string(e) + " ends at unknown vertex '" + end + "'", end, {e});
    if (edge.c <= 0) return fail("edge " + std::to_string(e) + ": weight scalar c = " + to_string(edge.c) + " must be positive", {}, {e});
    if (edge.m.size() != dim) return fail("edge " + std::to_string(e) + ": weight dimensions differ", {}, {e});
    bool zero = std::all_of(edge.m.begin(), edge.m.end(), [](const Integer& z) { return z == 0; });
    if (zero) return fail("edge " + std::to_string(e) + ": weight direction is zero", {}, {e});
    if (!is_primitive(edge.m)) return fail("edge " + std::to_string(e) + ": m = " + to_string(edge.m) + " is not primitive", {}, {e});
  }
  for (const auto& v : g.vertices) {
    auto inc = g.incident_edges(v);
    if (inc.size() > 2) return fail("vertex '" + v + "' has degree " + std::to_string(inc.size()) + " > 2", v, inc);
  }

  // Connectivity.
  std::vector<std::size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& edge : g.edges) parent[find(*g.index_of(edge.ends[0]))] = find(*g.index_of(edge.ends[1]));
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    if (find(i) != find(0)) return fail("graph is not connected: '" + g.vertices[i] + "' is unreachable", g.vertices[i]);

  GraphShape shape;
  if (g.edges.size() + 1 == g.vertices.size())
    shape = GraphShape::Line;
  else if (g.edges.size() == g.vertices.size())
    shape = GraphShape::Circle;
  else
    return fail("graph is neither a path nor a cycle");

  for (const auto& v : g.vertices) {
    auto inc = g.incident_edges(v);
    if (inc.size() != 2) continue;
    const auto& a = g.edges[inc[0]];
    const auto& b = g.edges[inc[1]];
    // nu_a = k nu_b with nu = -c m; for primitive m this needs m_a = +-m_b.
    if (a.m != b.m && a.m != negate(b.m))
      return fail("weights at vertex '" + v + "' are not proportional", v, inc);
    Rational k = a.c / b.c;
    if (a.m == b.m) return fail("weights at vertex '" + v + "' have k = " + to_string(k) + " > 0", v, inc);
  }

  GraphCheck ok;
  ok.ok = true;
  ok.shape = shape;
  return ok;
}

BMomentCodomain build_codomain(const WeightedAdjacencyGraph& g, std::size_t dim) {
  auto check = validate_graph(g);
  if (!check.ok) throw Error(ErrorCode::InvalidGraph, check.reason);
  BMomentCodomain z;
  z.graph = g;
  z.dim = dim;
  z.charts = g.vertices;
  z.identity = g.vertices.size() == 1;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    if (edge.m.size() != dim) throw Error(ErrorCode::ShapeMismatch, "edge weight has wrong dimension");
    CodomainEdge ce;
    ce.edge = e;
    ce.c = edge.c;
    ce.weight_direction = edge.m;
    ce.hyperplane = hyperplane_basis(edge.m).basis;
    ce.chart_sign[edge.ends[0]] = 1;
    ce.chart_sign[edge.ends[1]] = -1;
    z.edges.push_back(std::move(ce));
  }
  return z;
}

BPolytope::BPolytope(WeightedAdjacencyGraph graph, std::vector<Component> components)
    : graph_(std::move(graph)), components_(std::move(components)) {
  auto check = validate_graph(graph_);
  if (!check.ok) throw Error(ErrorCode::InvalidGraph, check.reason);
  shape_ = *check.shape;
  if (components_.size() != graph_.vertices.size())
    throw Error(ErrorCode::InvalidBPolytope, "need one component per graph vertex");
  const std::size_t n = components_.front().polytope.dim();
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& comp = components_[i];
    const auto& id = graph_.vertices[i];
    if (comp.polytope.dim() != n) throw Error(ErrorCode::InvalidBPolytope, "component '" + id + "' has a different dimension");
    auto inc = graph_.incident_edges(id);
    std::set<std::size_t> expected(inc.begin(), inc.end());
    std::set<std::size_t> marked;
    for (const auto& [e, f] : comp.infinity_facets) marked.insert(e);
    if (marked != expected)
      throw Error(ErrorCode::InvalidBPolytope, "component '" + id + "' must mark exactly one facet per incident edge");
    for (const auto& [e, f] : comp.infinity_facets) {
      if (f >= comp.polytope.halfspaces().size())
        throw Error(ErrorCode::InvalidBPolytope, "component '" + id + "': facet index out of range");
      if (graph_.edges[e].m.size() != n) throw Error(ErrorCode::ShapeMismatch, "edge weight has wrong dimension");
      if (comp.polytope.halfspaces()[f].normal != graph_.edges[e].m)
        throw Error(ErrorCode::InvalidBPolytope, "component '" + id + "': marked facet for edge " + std::to_string(e) +
                                                     " must have inward normal " + to_string(graph_.edges[e].m));
    }
  }
}

BPolytope BPolytope::trivial(Polytope p, const std::string& id) {
  WeightedAdjacencyGraph g;
  g.vertices = {id};
  return BPolytope(std::move(g), {Component{std::move(p), {}}});
}

const Component& BPolytope::component(const std::string& id) const {
  auto i = graph_.index_of(id);
  if (!i) throw Error(ErrorCode::InvalidBPolytope, "no component '" + id + "'");
  return components_[*i];
}

std::vector<std::size_t> BPolytope::finite_vertices(std::size_t component) const {
  const auto& comp = components_[component];
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < comp.polytope.vertices().size(); ++v) {
    const auto& inc = comp.polytope.incident_facets(v);
    bool at_infinity = std::any_of(comp.infinity_facets.begin(), comp.infinity_facets.end(), [&](const auto& ef) {
      return std::find(inc.begin(), inc.end(), ef.second) != inc.end();
    });
    if (!at_infinity) out.push_back(v);
  }
  return out;
}

std::size_t BPolytope::finite_vertex_count() const {
  std::size_t total = 0;
  for (std::size_t i = 0; i < components_.size(); ++i) total += finite_vertices(i).size();
  return total;
}

BPolytope BPolytope::canonical() const {
  std::vector<Component> comps;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& comp = components_[i];
    if (comp.infinity_facets.empty()) {
      comps.push_back(comp);
      continue;
    }
    const auto& p = comp.polytope;
    auto hs = p.halfspaces();
    auto finite = finite_vertices(i);
    const auto& [e1, f1] = *comp.infinity_facets.begin();
    auto pc = find_parallel(p, hs[f1].normal, hs[f1].offset);
    if (!pc.parallel || !pc.plane.strict)
      throw Error(ErrorCode::NotStrictParallel, "component '" + graph_.vertices[i] + "' has no collar at edge " + std::to_string(e1));
    IntVec w = *pc.plane.common_direction;
    if (!finite.empty()) {
      for (const auto& [e, f] : comp.infinity_facets) {
        Rational lo = dot(p.vertices()[finite.front()], hs[f].normal);
        for (auto v : finite) lo = std::min(lo, Rational(dot(p.vertices()[v], hs[f].normal)));
        hs[f].offset = lo - 1;
      }
    } else {
      // Pure collar: both marked facets, normals m and -m; length one.
      for (const auto& [e, f] : comp.infinity_facets)
        if (f != f1) hs[f].offset = -hs[f1].offset - 1;
    }
    Rational shift = hs[f1].offset;
    for (auto& h : hs) h.offset -= shift * dot(w, h.normal);
    Polytope q = Polytope::from_halfspaces(p.dim(), hs);
    comps.push_back({std::move(q), comp.infinity_facets});
  }
  return BPolytope(graph_, std::move(comps));
}

bool operator==(const BPolytope& a, const BPolytope& b) {
  if (!(a.graph_ == b.graph_) || a.components_.size() != b.components_.size()) return false;
  for (std::size_t i = 0; i < a.components_.size(); ++i) {
    const auto& ca = a.components_[i];
    const auto& cb = b.components_[i];
    if (!(ca.polytope == cb.polytope)) return false;
    if (ca.infinity_facets.size() != cb.infinity_facets.size()) return false;
    for (const auto& [e, f] : ca.infinity_facets) {
      auto it = cb.infinity_facets.find(e);
      if (it == cb.infinity_facets.end()) return false;
      if (!(ca.polytope.halfspaces()[f] == cb.polytope.halfspaces()[it->second])) return false;
    }
  }
  return true;
}

EdgeCollar edge_collar(const BPolytope& bp, std::size_t edge) {
  const auto& e = bp.graph().edges.at(edge);
  EdgeCollar out;
  std::array<IntVec, 2> dirs;
  std::array<Polytope, 2> slices;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& comp = bp.component(e.ends[k]);
    const auto& h = comp.polytope.halfspaces()[comp.infinity_facets.at(edge)];
    out.levels[k] = h.offset;
    ParallelCheck pc;
    try {
      pc = find_parallel(comp.polytope, e.m, h.offset);
    } catch (const Error& err) {
      throw Error(ErrorCode::NotStrictParallel, "component '" + e.ends[k] + "': " + err.what());
    }
    if (!pc.parallel)
      throw Error(ErrorCode::NotStrictParallel, "component '" + e.ends[k] + "' is not parallel at edge " +
                                                    std::to_string(edge) + ": " + pc.reason);
    if (!pc.plane.strict)
      throw Error(ErrorCode::NotStrictParallel, "component '" + e.ends[k] + "' has no strict collar at edge " + std::to_string(edge));
    dirs[k] = *pc.plane.common_direction;
  }
  if (dirs[0] != dirs[1])
    throw Error(ErrorCode::SliceMismatch, "edge " + std::to_string(edge) + ": collar directions differ (" +
                                              to_string(dirs[0]) + " vs " + to_string(dirs[1]) + ")");
  for (std::size_t k = 0; k < 2; ++k)
    slices[k] = slice_in_chart(bp.component(e.ends[k]).polytope, e.m, out.levels[k], dirs[0]);
  if (!(slices[0] == slices[1]))
    throw Error(ErrorCode::SliceMismatch, "edge " + std::to_string(edge) + ": facet slices of '" + e.ends[0] +
                                              "' and '" + e.ends[1] + "' differ");
  out.w = dirs[0];
  out.slice = std::move(slices[0]);
  return out;
}

BDelzantCheck is_b_delzant(const BPolytope& bp) {
  BDelzantCheck r;
  const auto& g = bp.graph();
  // Vertex witnesses first on line graphs: a non-Delzant component usually
  // breaks its collar as well, and the vertex is the more useful report.
  if (bp.shape() == GraphShape::Line) {
    for (std::size_t i = 0; i < bp.components().size(); ++i) {
      auto check = is_delzant(bp.components()[i].polytope);
      if (!check.delzant) {
        r.component = g.vertices[i];
        r.witness = check.witness;
        r.reason = "component '" + g.vertices[i] + "': " + check.reason;
        return r;
      }
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    try {
      edge_collar(bp, e);
    } catch (const Error& err) {
      r.edge = e;
      r.component = g.edges[e].ends[0];
      r.reason = err.what();
      return r;
    }
  }
  if (bp.shape() == GraphShape::Circle) {
    Polytope dz = edge_collar(bp, 0).slice;
    auto check = is_delzant(dz);
    if (!check.delzant) {
      r.edge = 0;
      r.witness = check.witness;
      r.reason = "facet slice is not Delzant: " + check.reason;
      return r;
    }
    for (std::size_t i = 0; i < bp.components().size(); ++i)
      if (!bp.finite_vertices(i).empty()) {
        r.component = g.vertices[i];
        r.reason = "component '" + g.vertices[i] + "' of a circle graph has a finite vertex";
        return r;
      }
  }
  r.b_delzant = true;
  return r;
}

namespace {

std::size_t end_of(const WeightedEdge& e, const std::string& id) {
  return e.ends[0] == id ? 0 : 1;
}

}  // namespace

std::array<Rational, 2> cut_level_range(const BPolytope& bp, std::size_t edge, std::size_t end) {
  const auto& e = bp.graph().edges.at(edge);
  const auto& comp = bp.component(e.ends.at(end));
  std::size_t f = comp.infinity_facets.at(edge);
  const auto& p = comp.polytope;
  Rational level = p.halfspaces()[f].offset;
  std::optional<Rational> nearest;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const auto& inc = p.incident_facets(v);
    if (std::find(inc.begin(), inc.end(), f) != inc.end()) continue;
    Rational s = dot(p.vertices()[v], e.m);
    if (!nearest || s < *nearest) nearest = s;
  }
  return {level, *nearest};
}

Rational default_cut_level(const BPolytope& bp, std::size_t edge, std::size_t end) {
  auto range = cut_level_range(bp, edge, end);
  const auto& id = bp.graph().edges.at(edge).ends.at(end);
  std::size_t i = *bp.graph().index_of(id);
  if (bp.finite_vertices(i).empty()) return range[0] + (range[1] - range[0]) / 4;
  return (range[0] + range[1]) / 2;
}

Decomposition decompose(const BPolytope& bp, const CutLevels& levels) {
  auto check = is_b_delzant(bp);
  if (!check.b_delzant) throw Error(ErrorCode::InvalidBPolytope, "not b-Delzant: " + check.reason);
  const auto& g = bp.graph();
  for (const auto& [e, lv] : levels)
    if (e >= g.edges.size()) throw Error(ErrorCode::BadCutLevel, "no edge " + std::to_string(e));

  Decomposition d;
  d.plan.graph = g;
  std::vector<std::array<Rational, 2>> chosen(g.edges.size());
  for (std::size_t i = 0; i < bp.components().size(); ++i) {
    const auto& comp = bp.components()[i];
    const auto& id = g.vertices[i];
    auto hs = comp.polytope.halfspaces();
    for (const auto& [e, f] : comp.infinity_facets) {
      std::size_t k = end_of(g.edges[e], id);
      auto range = cut_level_range(bp, e, k);
      auto it = levels.find(e);
      Rational delta = it != levels.end() ? it->second[k] : default_cut_level(bp, e, k);
      if (delta <= range[0] || delta >= range[1])
        throw Error(ErrorCode::BadCutLevel, "edge " + std::to_string(e) + " at '" + id + "': level " + to_string(delta) +
                                                " outside (" + to_string(range[0]) + ", " + to_string(range[1]) + ")");
      hs[f].offset = delta;
      chosen[e][k] = delta;
    }
    Polytope block;
    try {
      block = Polytope::from_halfspaces(comp.polytope.dim(), hs);
    } catch (const Error& err) {
      throw Error(ErrorCode::BadCutLevel, "cuts in component '" + id + "' cross: " + err.what());
    }
    auto dz = is_delzant(block);
    if (!dz.delzant) throw Error(ErrorCode::DecompositionFailure, "block '" + id + "' is not Delzant: " + dz.reason);
    Block b{id, block, {}, {}};
    for (const auto& [e, f] : comp.infinity_facets) {
      const auto& m = g.edges[e].m;
      auto idx = block.find_facet(m);
      if (!idx) throw Error(ErrorCode::DecompositionFailure, "block '" + id + "' lost its cut facet");
      auto pc = find_parallel(block, m, block.halfspaces()[*idx].offset);
      if (!pc.parallel || !pc.plane.strict)
        throw Error(ErrorCode::DecompositionFailure, "block '" + id + "' is not strict parallel at edge " + std::to_string(e));
      b.cut_facets[e] = *idx;
      b.interfaces.push_back(pc.plane);
    }
    d.blocks.push_back(std::move(b));
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& edge = g.edges[e];
    d.plan.steps.push_back({e, {*g.index_of(edge.ends[0]), *g.index_of(edge.ends[1])}, edge.c, edge.m, chosen[e]});
  }
  return d;
}

BPolytope reassemble(const Decomposition& d) {
  std::vector<Component> comps;
  for (const auto& b : d.blocks) comps.push_back({b.polytope, b.cut_facets});
  return BPolytope(d.plan.graph, std::move(comps));
}

GluedDrawing glued_drawing(const BPolytope& bp) {
  if (bp.shape() == GraphShape::Circle)
    throw Error(ErrorCode::UnsupportedLoop, "glued drawings are only defined for line graphs");
  const auto& g = bp.graph();
  const std::size_t n = bp.dim();
  GluedDrawing out;

  std::string start = g.vertices.front();
  for (const auto& v : g.vertices)
    if (g.incident_edges(v).size() == 1) {
      start = v;
      break;
    }
  out.order.push_back(start);
  out.placements.push_back({IntMat::identity(n), RatVec(n, Rational(0))});
  std::optional<std::size_t> prev;
  std::string cur = start;
  while (true) {
    std::optional<std::size_t> next;
    for (auto e : g.incident_edges(cur))
      if (e != prev) next = e;
    if (!next) break;
    const auto& edge = g.edges[*next];
    std::size_t ka = end_of(edge, cur);
    std::string other = edge.ends[1 - ka];
    auto collar = edge_collar(bp, *next);
    // psi(x) = x - 2 <x, m> w + (l_A + l_B - 1) w: the two pieces face each
    // other across a unit gap.
    IntMat r = IntMat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) -= 2 * collar.w[i] * edge.m[j];
    Rational s = collar.levels[0] + collar.levels[1] - 1;
    const auto& pa = out.placements.back();
    AffinePlacement pb{pa.linear * r, add(pa.linear * scale(s, collar.w), pa.translation)};
    out.order.push_back(other);
    out.placements.push_back(std::move(pb));
    prev = next;
    cur = other;
  }

  for (std::size_t k = 0; k < out.order.size(); ++k) {
    std::size_t i = *g.index_of(out.order[k]);
    const auto& pl = out.placements[k];
    const auto& p = bp.components()[i].polytope;
    out.drawn.push_back(apply_affine(p, pl.linear, pl.translation));
    for (auto v : bp.finite_vertices(i)) {
      DrawnVertex dv;
      dv.component = out.order[k];
      dv.chart_point = p.vertices()[v];
      dv.point = add(pl.linear * dv.chart_point, pl.translation);
      dv.chart_edges = p.edge_directions(v);
      for (const auto& d : dv.chart_edges) dv.edges.push_back(pl.linear * d);
      out.finite_vertices.push_back(std::move(dv));
    }
  }
  return out;
}

}  // namespace delzant
