#include "delzant/surgery.hpp"

#include <algorithm>
#include <optional>

#include "delzant/error.hpp"

namespace delzant {

namespace {

void note(Log* log, std::string line) {
  if (log) log->push_back(std::move(line));
}

// The facet of P lying in F, with its inward normal (+-m).
struct FacetOnPlane {
  std::size_t facet;
  IntVec inward;
  Rational offset;  // <x, inward> >= offset
};

std::optional<FacetOnPlane> facet_on_plane(const Polytope& p, const Interface& f) {
  for (std::size_t i = 0; i < p.halfspaces().size(); ++i) {
    const auto& h = p.halfspaces()[i];
    if (h.normal == f.m && h.offset == f.level) return FacetOnPlane{i, h.normal, h.offset};
    if (h.normal == negate(f.m) && h.offset == -f.level) return FacetOnPlane{i, h.normal, h.offset};
  }
  return std::nullopt;
}

// Crossing direction of a strict parallel facet, oriented into the polytope.
IntVec strict_collar(const Polytope& p, const IntVec& inward, const Rational& offset, const std::string& who) {
  ParallelCheck pc;
  try {
    pc = find_parallel(p, inward, offset);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotStrictParallel, who + ": " + e.what());
  }
  if (!pc.parallel) throw Error(ErrorCode::NotStrictParallel, who + " is not parallel at its facet: " + pc.reason);
  if (!pc.plane.strict) throw Error(ErrorCode::NotStrictParallel, who + " does not support a facet on the hyperplane");
  return *pc.plane.common_direction;
}

void require_primitive(const Interface& f, std::size_t dim) {
  if (f.m.size() != dim) throw Error(ErrorCode::ShapeMismatch, "interface normal has wrong dimension");
  if (!is_primitive(f.m)) throw Error(ErrorCode::NotPrimitive, "interface normal " + to_string(f.m) + " is not primitive");
}

Error vertex_error(ErrorCode code, const std::string& msg, const RatVec& v) {
  Error e(code, msg);
  e.vertex = v;
  return e;
}

}  // namespace

HyperplaneBasis hyperplane_basis(const IntVec& m) {
  IntMat u = sl_transform_to_last_axis(m);
  if (!is_unimodular(u)) throw Error(ErrorCode::NotUnimodular, "hyperplane basis completion is not unimodular");
  HyperplaneBasis hb;
  for (std::size_t i = 0; i + 1 < m.size(); ++i) hb.basis.push_back(u.row(i));
  hb.complement = u.row(m.size() - 1);
  return hb;
}

Polytope slice_in_chart(const Polytope& p, const IntVec& m, const Rational& level, const IntVec& w) {
  const std::size_t n = p.dim();
  bool meets = false;
  for (const auto& v : p.vertices()) {
    Rational s = dot(v, m) - level;
    if (s == 0) meets = true;
  }
  if (n == 1) {
    if (!meets && !p.contains(scale(level, w)))
      throw Error(ErrorCode::NoIntersection, "hyperplane misses the polytope");
    return Polytope::point();
  }
  auto hb = hyperplane_basis(m);
  RatVec base = scale(level, w);
  std::vector<HalfSpace> hs;
  for (const auto& h : p.halfspaces()) {
    IntVec normal(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) normal[j] = dot(hb.basis[j], h.normal);
    Rational offset = h.offset - dot(base, h.normal);
    bool zero = std::all_of(normal.begin(), normal.end(), [](const Integer& z) { return z == 0; });
    if (zero) {
      if (offset > 0) throw Error(ErrorCode::NoIntersection, "hyperplane misses the polytope");
      continue;
    }
    hs.push_back({std::move(normal), std::move(offset)});
  }
  try {
    return Polytope::from_halfspaces(n - 1, std::move(hs));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Empty || e.code() == ErrorCode::NotFullDim)
      throw Error(ErrorCode::NoIntersection, std::string("slice is degenerate: ") + e.what());
    throw;
  }
}

FacetChart facet_slice(const Polytope& p, const ParallelHyperplane& f) {
  auto pc = find_parallel(p, f.m, f.level);
  if (!pc.parallel) throw Error(ErrorCode::NotParallel, "hyperplane is not parallel: " + pc.reason);
  const IntVec& w = *pc.plane.common_direction;
  FacetChart chart;
  chart.base_point = scale(f.level, w);
  chart.basis = hyperplane_basis(f.m).basis;
  chart.slice = slice_in_chart(p, f.m, f.level, w);
  return chart;
}

Polytope cut(const Polytope& p, const IntVec& m, const Rational& delta) {
  if (m.size() != p.dim()) throw Error(ErrorCode::ShapeMismatch, "cut: m has wrong dimension");
  if (!is_primitive(m)) throw Error(ErrorCode::NotPrimitive, "cut: m = " + to_string(m) + " is not primitive");
  Rational lo = dot(p.vertices().front(), m), hi = lo;
  for (const auto& v : p.vertices()) {
    Rational s = dot(v, m);
    if (s < lo) lo = s;
    if (s > hi) hi = s;
  }
  if (delta <= lo || delta >= hi)
    throw Error(ErrorCode::TrivialCut, "cut <x," + to_string(m) + "> >= " + to_string(delta) +
                                           " does not cut through the interior (levels " + to_string(lo) + ".." +
                                           to_string(hi) + ")");
  auto hs = p.halfspaces();
  hs.push_back({m, delta});
  Polytope q = Polytope::from_halfspaces(p.dim(), std::move(hs));
  auto check = is_delzant(q);
  if (!check.delzant) {
    Error e(ErrorCode::NonDelzantCut, "cut result is not Delzant: " + check.reason);
    e.vertex = check.witness->vertex;
    e.determinant = check.witness->determinant;
    throw e;
  }
  return q;
}

Polytope glue_preserving(const Polytope& p1, const Polytope& p2, const Interface& f, Log* log) {
  require_primitive(f, p1.dim());
  if (p2.dim() != p1.dim()) throw Error(ErrorCode::ShapeMismatch, "glue: dimensions differ");
  auto f1 = facet_on_plane(p1, f);
  if (!f1) throw Error(ErrorCode::NotStrictParallel, "P1 has no facet on the gluing hyperplane");
  IntVec into1 = strict_collar(p1, f1->inward, f1->offset, "P1");

  // P2 must meet F from the opposite side.
  IntVec outward = negate(f1->inward);
  auto f2 = p2.find_facet(outward);
  if (!f2) throw Error(ErrorCode::NotStrictParallel, "P2 has no facet with normal " + to_string(outward));
  Rational shift = -f1->offset - p2.halfspaces()[*f2].offset;  // move P2's facet level onto F
  RatVec t = scale(-shift, into1);
  Polytope q2 = translate(p2, t);
  if (shift != 0) note(log, "translated P2 by " + to_string(t) + " along " + to_string(into1));
  strict_collar(q2, outward, -f1->offset, "P2");
  std::size_t g2 = *q2.find_facet(outward);

  for (std::size_t i = 0; i < q2.halfspaces().size(); ++i) {
    if (i == g2) continue;
    for (const auto& v : p1.vertices())
      if (dot(v, q2.halfspaces()[i].normal) < q2.halfspaces()[i].offset)
        throw vertex_error(ErrorCode::NonConvexUnion, "union is not convex: vertex " + to_string(v) + " of P1 violates a facet of P2", v);
  }
  for (std::size_t i = 0; i < p1.halfspaces().size(); ++i) {
    if (i == f1->facet) continue;
    for (const auto& v : q2.vertices())
      if (dot(v, p1.halfspaces()[i].normal) < p1.halfspaces()[i].offset)
        throw vertex_error(ErrorCode::NonConvexUnion, "union is not convex: vertex " + to_string(v) + " of P2 violates a facet of P1", v);
  }

  if (!(slice_in_chart(p1, f1->inward, f1->offset, into1) == slice_in_chart(q2, f1->inward, f1->offset, into1)))
    throw Error(ErrorCode::SliceMismatch, "facet slices of P1 and P2 differ");

  std::vector<HalfSpace> hs;
  for (std::size_t i = 0; i < p1.halfspaces().size(); ++i)
    if (i != f1->facet) hs.push_back(p1.halfspaces()[i]);
  for (std::size_t i = 0; i < q2.halfspaces().size(); ++i) {
    if (i == g2) continue;
    const auto& h = q2.halfspaces()[i];
    if (std::find(hs.begin(), hs.end(), h) != hs.end()) {
      note(log, "merged coplanar facet with normal " + to_string(h.normal));
      continue;
    }
    hs.push_back(h);
  }
  Polytope u = Polytope::from_halfspaces(p1.dim(), std::move(hs));
  for (const auto& line : u.construction_log()) note(log, line);

  // Vertex bookkeeping: V(U) is V(P1) u V(P2) minus the points of F that
  // became interior to the union.
  for (const auto& v : u.vertices())
    if (!p1.find_vertex(v) && !q2.find_vertex(v))
      throw vertex_error(ErrorCode::NonConvexUnion, "union has an unexpected vertex " + to_string(v), v);
  for (const Polytope* piece : {&p1, static_cast<const Polytope*>(&q2)})
    for (const auto& v : piece->vertices())
      if (dot(v, f.m) != f.level && !u.find_vertex(v))
        throw vertex_error(ErrorCode::NonConvexUnion, "vertex " + to_string(v) + " is lost in the union", v);

  auto check = is_delzant(u);
  if (!check.delzant) {
    Error e(ErrorCode::NonDelzantGlue, "glued polytope is not Delzant: " + check.reason);
    e.vertex = check.witness->vertex;
    e.determinant = check.witness->determinant;
    throw e;
  }
  return u;
}

BPolytope glue_reversed(const Polytope& p1, const Polytope& p2, const Interface& f, const Rational& c, Log* log) {
  if (c <= 0) throw Error(ErrorCode::InvalidWeight, "weight scalar c = " + to_string(c) + " must be positive");
  require_primitive(f, p1.dim());
  if (p2.dim() != p1.dim()) throw Error(ErrorCode::ShapeMismatch, "glue: dimensions differ");
  auto f1 = facet_on_plane(p1, f);
  if (!f1) throw Error(ErrorCode::NotStrictParallel, "P1 has no facet on the gluing hyperplane");
  const IntVec& m = f1->inward;
  const Rational& level = f1->offset;
  IntVec w = strict_collar(p1, m, level, "P1");
  Polytope slice1 = slice_in_chart(p1, m, level, w);

  // Place P2 in the chart convention: on the +m side of its marked facet,
  // that facet at the same level as P1's.
  auto place = [&](bool opposite, Log* sublog) -> Polytope {
    IntVec normal = opposite ? negate(m) : m;
    auto g = p2.find_facet(normal);
    if (!g) throw Error(ErrorCode::NotStrictParallel, "P2 has no facet with normal " + to_string(normal));
    Rational lev = opposite ? Rational(-p2.halfspaces()[*g].offset) : p2.halfspaces()[*g].offset;
    RatVec t = scale(level - lev, w);
    Polytope q = translate(p2, t);
    if (lev != level) note(sublog, "translated P2 by " + to_string(t) + " along " + to_string(w));
    if (opposite) {
      // x -> x - 2 (<x, m> - level) w
      const std::size_t n = m.size();
      IntMat r = IntMat::identity(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) -= 2 * w[i] * m[j];
      q = apply_affine(q, r, scale(2 * level, w));
      note(sublog, "reflected P2 across the gluing hyperplane along " + to_string(w));
    }
    IntVec w2 = strict_collar(q, m, level, "P2");
    if (w2 != w)
      throw Error(ErrorCode::SliceMismatch,
                  "collar directions differ: " + to_string(w) + " vs " + to_string(w2));
    if (!(slice_in_chart(q, m, level, w) == slice1)) throw Error(ErrorCode::SliceMismatch, "facet slices of P1 and P2 differ");
    return q;
  };

  std::optional<Polytope> q2;
  std::optional<Error> first_failure;
  Log attempt;
  for (bool opposite : {true, false}) {
    attempt.clear();
    try {
      q2 = place(opposite, &attempt);
      break;
    } catch (const Error& e) {
      bool missing = e.code() == ErrorCode::NotStrictParallel && std::string(e.what()).rfind("P2 has no facet", 0) == 0;
      if (!first_failure || (first_failure->code() == ErrorCode::NotStrictParallel && !missing)) first_failure = e;
    }
  }
  if (!q2) throw *first_failure;
  for (auto& line : attempt) note(log, std::move(line));

  WeightedAdjacencyGraph g;
  g.vertices = {"v1", "v2"};
  g.edges.push_back({{"v1", "v2"}, c, m});
  std::vector<Component> comps;
  comps.push_back({p1, {{0, f1->facet}}});
  std::size_t g2 = *q2->find_facet(m);
  comps.push_back({*q2, {{0, g2}}});
  return BPolytope(std::move(g), std::move(comps));
}

std::vector<Interface> glue_candidates(const Polytope& p1, const Polytope& p2, bool reversed) {
  std::vector<Interface> out;
  for (const auto& h : p1.halfspaces()) {
    Interface f{h.normal, h.offset};
    try {
      if (reversed)
        glue_reversed(p1, p2, f, 1);
      else
        glue_preserving(p1, p2, f);
      out.push_back(f);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace delzant
