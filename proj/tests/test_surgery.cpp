#include <gtest/gtest.h>

#include <random>
#include <set>

#include "delzant/error.hpp"
#include "delzant/surgery.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace delzant;
using support::box;
using support::iv;
using support::rv;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::SchemaError;
}

std::set<RatVec> vertex_set(const Polytope& p) { return {p.vertices().begin(), p.vertices().end()}; }

ParallelHyperplane plane(const Polytope& p, const IntVec& m, const Rational& level) {
  auto r = find_parallel(p, m, level);
  EXPECT_TRUE(r.parallel) << r.reason;
  return r.plane;
}

}  // namespace

TEST(FacetSlice, SquareMidline) {
  auto sq = support::load_polytope("square");
  auto chart = facet_slice(sq, plane(sq, iv({0, 1}), Rational(1, 2)));
  EXPECT_EQ(chart.slice, support::load_polytope("interval"));
  EXPECT_EQ(chart.base_point, rv({"0", "1/2"}));
  ASSERT_EQ(chart.basis.size(), 1u);
  EXPECT_EQ(chart.basis[0], iv({1, 0}));
}

TEST(FacetSlice, TrapezoidBottom) {
  auto t = support::load_polytope("trapezoid");
  auto chart = facet_slice(t, plane(t, iv({0, 1}), 0));
  EXPECT_EQ(chart.slice, support::load_polytope("interval"));
  EXPECT_TRUE(is_delzant(chart.slice).delzant);
}

TEST(FacetSlice, PrismMidLevel) {
  auto prism = support::load_polytope("prism");
  auto chart = facet_slice(prism, plane(prism, iv({0, 0, 1}), Rational(1, 2)));
  EXPECT_EQ(chart.slice, support::load_polytope("simplex"));
  EXPECT_TRUE(is_delzant(chart.slice).delzant);
}

TEST(FacetSlice, NotParallel) {
  auto simplex = support::load_polytope("simplex");
  ParallelHyperplane f{iv({0, 1}), Rational(1, 2), std::nullopt, false, std::nullopt};
  EXPECT_EQ(code_of([&] { facet_slice(simplex, f); }), ErrorCode::NotParallel);
}

TEST(FacetSlice, BasisIsLatticeBasis) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int t = 0; t < 100; ++t) {
    IntVec m(3);
    for (auto& z : m) z = d(rng);
    if (m == IntVec(3, 0) || !is_primitive(m)) continue;
    auto hb = hyperplane_basis(m);
    std::vector<IntVec> rows = hb.basis;
    rows.push_back(hb.complement);
    EXPECT_EQ(abs(determinant(IntMat::from_rows(rows))), 1);
    for (const auto& b : hb.basis) EXPECT_EQ(dot(b, m), 0);
    EXPECT_EQ(dot(hb.complement, m), 1);
  }
}

TEST(FacetSlice, SliceOfProductIsBase) {
  std::mt19937 rng(19);
  for (int t = 0; t < 20; ++t) {
    auto base = support::random_delzant(rng, 2);
    auto p = product(base, -1, 2);
    auto chart = facet_slice(p, plane(p, iv({0, 0, 1}), Rational(1, 3)));
    EXPECT_EQ(chart.slice, base);
  }
}

TEST(Cut, Pentagon) {
  auto p = cut(support::load_polytope("rect"), iv({-1, -1}), Rational(-3, 2));
  EXPECT_EQ(p.vertices().size(), 5u);
  EXPECT_TRUE(p.find_vertex(rv({"1/2", "1"})));
  EXPECT_TRUE(p.find_vertex(rv({"1", "1/2"})));
  EXPECT_TRUE(is_delzant(p).delzant);
  auto expected = support::from_rows(
      2, {{iv({1, 0}), 0}, {iv({0, 1}), -1}, {iv({-1, 0}), -1}, {iv({0, -1}), -1}, {iv({-1, -1}), Rational(-3, 2)}});
  EXPECT_EQ(p, expected);
}

TEST(Cut, UpperHalf) {
  auto p = cut(support::load_polytope("rect"), iv({0, 1}), 0);
  EXPECT_EQ(p, support::load_polytope("square"));
}

TEST(Cut, Rejections) {
  auto sq = support::load_polytope("square");
  try {
    cut(sq, iv({-2, -1}), Rational(-3, 2));
    FAIL() << "expected NonDelzantCut";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonDelzantCut);
    ASSERT_TRUE(e.vertex);
    EXPECT_TRUE(e.determinant && *e.determinant != 1);
  }
  EXPECT_EQ(code_of([&] { cut(sq, iv({0, 1}), 0); }), ErrorCode::TrivialCut);
  EXPECT_EQ(code_of([&] { cut(sq, iv({0, 1}), 5); }), ErrorCode::TrivialCut);
}

TEST(Cut, CornerOfBoundingPrismGivesTrapezoid) {
  auto prism = product(support::load_polytope("interval"), 0, 2);
  EXPECT_EQ(cut(prism, iv({-1, -1}), -2), support::load_polytope("trapezoid"));
}

TEST(GluePreserving, TrapezoidWithReflection) {
  Log log;
  auto u = glue_preserving(support::load_polytope("trapezoid"), support::load_polytope("trapezoid_reflected"),
                           {iv({0, 1}), 0}, &log);
  EXPECT_EQ(vertex_set(u), (std::set<RatVec>{rv({"0", "2"}), rv({"1", "1"}), rv({"1", "-1"}), rv({"0", "-2"})}));
  EXPECT_TRUE(is_delzant(u).delzant);
}

TEST(GluePreserving, StackedSquares) {
  auto sq = support::load_polytope("square");
  Log log;
  auto u = glue_preserving(sq, sq, {iv({0, 1}), 1}, &log);
  EXPECT_EQ(u, box({{0, 1}, {0, 2}}));
  EXPECT_FALSE(log.empty());  // P2 translated, side facets merged
}

TEST(GluePreserving, WiderRectangleIsNonConvex) {
  try {
    glue_preserving(support::load_polytope("square"), support::load_polytope("wide_rect"), {iv({0, 1}), 0});
    FAIL() << "expected NonConvexUnion";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonConvexUnion);
    ASSERT_TRUE(e.vertex);
    // The witness is a vertex of one piece lying outside a facet of the other.
    auto sq = support::load_polytope("square");
    auto wide = support::load_polytope("wide_rect");
    EXPECT_TRUE(sq.find_vertex(*e.vertex) || wide.find_vertex(*e.vertex));
    EXPECT_FALSE(sq.contains(*e.vertex) && wide.contains(*e.vertex));
  }
}

TEST(GluePreserving, Rejections) {
  auto sq = support::load_polytope("square");
  EXPECT_EQ(code_of([&] { glue_preserving(sq, sq, {iv({0, 1}), Rational(1, 2)}); }), ErrorCode::NotStrictParallel);
  auto simplex = support::load_polytope("simplex");
  EXPECT_EQ(code_of([&] { glue_preserving(simplex, sq, {iv({1, 1}), 1}); }), ErrorCode::NotStrictParallel);
}

TEST(GluePreserving, ResultIsAlwaysDelzant) {
  std::mt19937 rng(37);
  int glued = 0;
  for (int t = 0; t < 40; ++t) {
    auto a = support::random_delzant(rng, 2);
    auto b = support::random_delzant(rng, 2);
    for (const auto& f : glue_candidates(a, b, false)) {
      auto u = glue_preserving(a, b, f);
      EXPECT_TRUE(is_delzant(u).delzant);
      ++glued;
    }
  }
  EXPECT_GT(glued, 0);
}

TEST(GlueReversed, Trapezoids) {
  auto p1 = support::load_polytope("trapezoid");
  auto p2 = support::load_polytope("trapezoid_reflected");
  auto bp = glue_reversed(p1, p2, {iv({0, 1}), 0}, 1);
  ASSERT_EQ(bp.graph().vertices.size(), 2u);
  ASSERT_EQ(bp.graph().edges.size(), 1u);
  EXPECT_EQ(bp.graph().edges[0].c, 1);
  EXPECT_EQ(bp.graph().edges[0].m, iv({0, 1}));  // weight -1 * (0,1)*
  EXPECT_EQ(bp.components()[0].polytope, p1);
  // P2 sits opposite P1 and is carried to the +m side by the reflection
  // along the collar.
  EXPECT_EQ(bp.components()[1].polytope, p1);
  EXPECT_TRUE(is_b_delzant(bp).b_delzant);
}

TEST(GlueReversed, ComponentsAreP1AndPlacedP2) {
  auto sq = support::load_polytope("square");
  auto moved = translate(sq, rv({"0", "5"}));
  auto bp = glue_reversed(sq, moved, {iv({0, 1}), 0}, Rational(3, 2));
  EXPECT_EQ(bp.components()[0].polytope, sq);
  EXPECT_EQ(bp.components()[1].polytope, sq);
  EXPECT_EQ(bp.graph().edges[0].c, Rational(3, 2));
}

TEST(GlueReversed, RectanglesGiveBS2xS2) {
  auto r = box({{-1, 1}, {-1, 0}});
  auto bp = glue_reversed(r, r, {iv({0, 1}), 0}, 1);
  EXPECT_EQ(bp.graph().edges[0].m, iv({0, -1}));
  EXPECT_TRUE(is_b_delzant(bp).b_delzant);
  EXPECT_EQ(bp.finite_vertex_count(), 4u);
  auto up = box({{-1, 1}, {0, 1}});
  EXPECT_EQ(glue_reversed(up, up, {iv({0, 1}), 0}, 1).canonical(), support::load_bpolytope("bs2xs2").canonical());
}

TEST(GlueReversed, SegmentsGiveBS2) {
  auto seg = support::load_polytope("interval");
  auto bp = glue_reversed(seg, seg, {iv({1}), 0}, 1);
  EXPECT_EQ(bp.canonical(), support::load_bpolytope("bs2").canonical());
  EXPECT_EQ(bp.finite_vertex_count(), 2u);
}

TEST(GlueReversed, Rejections) {
  auto sq = support::load_polytope("square");
  EXPECT_EQ(code_of([&] { glue_reversed(sq, sq, {iv({0, 1}), 0}, 0); }), ErrorCode::InvalidWeight);
  EXPECT_EQ(code_of([&] { glue_reversed(sq, sq, {iv({0, 1}), 0}, -1); }), ErrorCode::InvalidWeight);
  EXPECT_EQ(code_of([&] { glue_reversed(sq, box({{0, 2}, {0, 1}}), {iv({0, 1}), 0}, 1); }), ErrorCode::SliceMismatch);
  EXPECT_EQ(code_of([&] { glue_reversed(sq, box({{1, 2}, {-1, 0}}), {iv({0, 1}), 0}, 1); }), ErrorCode::SliceMismatch);
}

TEST(GlueReversed, FiniteVertexBookkeeping) {
  std::mt19937 rng(47);
  int glued = 0;
  for (int t = 0; t < 40; ++t) {
    auto a = support::random_delzant(rng, 2);
    auto b = support::random_delzant(rng, 2);
    for (const auto& f : glue_candidates(a, b, true)) {
      auto bp = glue_reversed(a, b, f, 1);
      std::size_t off_plane = 0;
      for (const auto& c : bp.components())
        for (const auto& v : c.polytope.vertices())
          if (dot(v, f.m) != f.level && dot(v, negate(f.m)) != -f.level) ++off_plane;
      EXPECT_EQ(bp.finite_vertex_count(), off_plane);
      std::size_t on_f1 = 0;
      for (const auto& v : a.vertices())
        if (dot(v, f.m) == f.level) ++on_f1;
      EXPECT_EQ(bp.finite_vertices(0).size(), a.vertices().size() - on_f1);
      EXPECT_EQ(bp.components()[0].polytope, a);
      EXPECT_TRUE(validate_graph(bp.graph()).ok);
      ++glued;
    }
  }
  EXPECT_GT(glued, 0);
}

TEST(GlueCandidates, FindsTheCommonFacet) {
  auto c = glue_candidates(support::load_polytope("trapezoid"), support::load_polytope("trapezoid_reflected"), false);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].m, iv({0, 1}));
  EXPECT_EQ(c[0].level, 0);
}
