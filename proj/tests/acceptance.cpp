// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cli_runner.hpp"
#include "delzant/error.hpp"
#include "delzant/homology.hpp"
#include "delzant/surgery.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace delzant;
using support::iv;
using support::rv;

namespace {

using Table = std::vector<long long>;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail.str("");
      detail << what;
    }
  }
};

template <typename F>
std::optional<Error> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  return std::nullopt;
}

std::string show(const Table& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

Table cells(std::size_t dim, const std::vector<HalfSpace>& hs, const IntVec& x) {
  return oracle::cellular_betti(oracle::skeleton(dim, hs), dim, x);
}

Table bcells(const BPolytope& bp) {
  const auto& a = bp.components()[0];
  const auto& b = bp.components()[1];
  const auto& m = bp.graph().edges[0].m;
  std::size_t axis = 0;
  while (m[axis] == 0) ++axis;
  auto hs = oracle::mirror_union(a.polytope.halfspaces(), a.infinity_facets.begin()->second, b.polytope.halfspaces(),
                                 b.infinity_facets.begin()->second, axis);
  IntVec x(bp.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = Integer(1) << (3 * i);
  return cells(bp.dim(), hs, x);
}


long long total(const Table& t) {
  long long s = 0;
  for (auto r : t) s += r;
  return s;
}

void criterion1(Outcome& o) {
  auto simplex = support::load_polytope("simplex");
  auto c = is_delzant(simplex);
  o.require(c.delzant && c.certificates.size() == 3, "simplex not certified with 3 certificates");
  for (const auto& cert : c.certificates) o.require(is_unimodular(cert.edges), "simplex certificate not unimodular");
  auto tri = support::load_polytope("bad_triangle");
  auto t = is_delzant(tri);
  o.require(!t.delzant && t.witness && t.witness->vertex == rv({"0", "1"}) && t.witness->determinant == 2,
            "triangle witness is not (0,1) with determinant 2");
  for (const auto* p : {&simplex, &tri}) {
    auto scan = oracle::determinant_scan(oracle::skeleton(2, p->halfspaces()), 2);
    bool all_one = std::all_of(scan.begin(), scan.end(), [](const Integer& d) { return d == 1; });
    o.require(all_one == is_delzant(*p).delzant, "determinant scan disagrees");
  }
  o.detail << "simplex: 3 unimodular certificates; triangle: witness (0,1), |det| 2; scan agrees";
}

void criterion2(Outcome& o) {
  auto interval = support::load_polytope("interval");
  auto sq = support::load_polytope("square");
  auto s1 = facet_slice(sq, find_parallel(sq, iv({0, 1}), Rational(1, 2)).plane).slice;
  auto trap = support::load_polytope("trapezoid");
  auto s2 = facet_slice(trap, find_parallel(trap, iv({0, 1}), 0).plane).slice;
  o.require(s1 == interval && is_delzant(s1).delzant, "square slice is not the Delzant interval [0,1]");
  o.require(s2 == interval && is_delzant(s2).delzant, "trapezoid slice is not the Delzant interval [0,1]");
  auto prism = support::load_polytope("prism");
  auto s3 = facet_slice(prism, find_parallel(prism, iv({0, 0, 1}), Rational(1, 2)).plane).slice;
  o.require(s3 == support::load_polytope("simplex") && is_delzant(s3).delzant, "prism slice is not the simplex");
  o.detail << "square and trapezoid slices = [0,1]; prism mid-slice = simplex";
}

void criterion3(Outcome& o) {
  auto p = cut(support::load_polytope("rect"), iv({-1, -1}), Rational(-3, 2));
  auto expected = support::from_rows(
      2, {{iv({1, 0}), 0}, {iv({0, 1}), -1}, {iv({-1, 0}), -1}, {iv({0, -1}), -1}, {iv({-1, -1}), Rational(-3, 2)}});
  o.require(p == expected && p.halfspaces().size() == 5, "pentagon H-rep differs");
  o.require(p.find_vertex(rv({"1/2", "1"})) && p.find_vertex(rv({"1", "1/2"})), "new vertices missing");
  o.require(is_delzant(p).delzant, "pentagon not Delzant");
  auto e = error_of([] { cut(support::load_polytope("square"), iv({-2, -1}), Rational(-3, 2)); });
  o.require(e && e->code() == ErrorCode::NonDelzantCut, "square cut by (-2,-1) not rejected");
  o.detail << "pentagon with (1/2,1),(1,1/2); (-2,-1) cut rejected NonDelzantCut";
}

void criterion4(Outcome& o) {
  auto t1 = support::load_polytope("trapezoid");
  auto t2 = support::load_polytope("trapezoid_reflected");
  auto u = glue_preserving(t1, t2, {iv({0, 1}), 0});
  std::set<RatVec> got(u.vertices().begin(), u.vertices().end());
  std::set<RatVec> want = {rv({"0", "2"}), rv({"1", "1"}), rv({"1", "-1"}), rv({"0", "-2"})};
  o.require(got == want && is_delzant(u).delzant, "preserving glue is not the Delzant quadrilateral");
  auto bp = glue_reversed(t1, t2, {iv({0, 1}), 0}, 1);
  const auto& g = bp.graph();
  o.require(g.vertices.size() == 2 && g.edges.size() == 1, "reversed glue graph is not 2 vertices / 1 edge");
  o.require(g.edges[0].c == 1 && g.edges[0].m == iv({0, 1}), "weight is not -1 t2*");
  o.detail << "quadrilateral conv{(0,2),(1,1),(1,-1),(0,-2)}; weight -1*(0,1)* on the single edge";
}

void criterion5(Outcome& o) {
  struct Case {
    std::string name;
    Table expected;
  };
  for (const Case& c : std::vector<Case>{{"square", {1, 0, 2, 0, 1}}, {"interval", {1, 0, 1}}, {"trapezoid", {1, 0, 2, 0, 1}}}) {
    auto p = support::load_polytope(c.name);
    Table got = betti_toric(p).ranks;
    Table oracle_table = cells(p.dim(), p.halfspaces(), generic_vector(morse_data(p)).x);
    o.require(got == c.expected && oracle_table == c.expected, c.name + ": got " + show(got) + ", oracle " + show(oracle_table));
  }
  for (const Case& c : std::vector<Case>{{"bs2xs2", {1, 0, 2, 0, 1}}, {"bs2", {1, 0, 1}}}) {
    auto bp = support::load_bpolytope(c.name);
    Table got = betti_btoric(bp).ranks;
    Table oracle_table = bcells(bp);
    o.require(got == c.expected && oracle_table == c.expected, c.name + ": got " + show(got) + ", oracle " + show(oracle_table));
  }
  // Point x T^2: product of the one-cell slice complex with the torus cells.
  auto t2 = support::load_bpolytope("t2_point");
  Table got = betti_btoric(t2).ranks;
  auto dz = edge_collar(t2, 0).slice;
  Table slice_cells = dz.dim() == 0 ? Table{1} : cells(dz.dim(), dz.halfspaces(), generic_vector(morse_data(dz)).x);
  Table torus = {1, 2, 1}, prod(slice_cells.size() + 2, 0);
  for (std::size_t i = 0; i < slice_cells.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) prod[i + j] += slice_cells[i] * torus[j];
  o.require(got == Table{1, 2, 1} && prod == got, "t2_point: got " + show(got) + ", oracle " + show(prod));
  o.detail << "six fixtures equal their expected tables and the cell-count oracle";
}

void criterion6(Outcome& o) {
  std::size_t fixtures = 0;
  for (const auto& name : {"square", "interval", "trapezoid"}) {
    auto p = support::load_polytope(name);
    auto xs = support::accepted_vectors(morse_data(p), 20);
    o.require(xs.size() == 20, std::string(name) + ": fewer than 20 accepted vectors");
    Table first = betti_toric(p, xs[0]).ranks;
    for (const auto& x : xs) o.require(betti_toric(p, x).ranks == first, std::string(name) + ": table depends on X");
    ++fixtures;
  }
  for (const auto& name : support::bpolytope_fixtures()) {
    auto bp = support::load_bpolytope(name);
    auto xs = support::accepted_vectors(morse_data(bp), 20);
    o.require(xs.size() == 20, name + ": fewer than 20 accepted vectors");
    Table first = betti_btoric(bp, xs[0]).ranks;
    for (const auto& x : xs) o.require(betti_btoric(bp, x).ranks == first, name + ": table depends on X");
    ++fixtures;
  }
  o.detail << fixtures << " fixtures x 20 distinct generic vectors, identical tables";
}

void criterion7(Outcome& o) {
  auto t1 = support::load_polytope("trapezoid");
  auto t2 = support::load_polytope("trapezoid_reflected");
  auto bp = glue_reversed(t1, t2, {iv({0, 1}), 0}, 1);
  auto d = decompose(bp);
  const auto& step = d.plan.steps.at(0);
  auto again = glue_reversed(d.blocks[step.blocks[0]].polytope, d.blocks[step.blocks[1]].polytope,
                             {step.m, step.levels[0]}, step.c);
  o.require(again.canonical() == bp.canonical(), "re-glued b-polytope differs after normalization");
  o.require(reassemble(d).canonical() == bp.canonical(), "reassembled b-polytope differs after normalization");
  std::mt19937 rng(2024);
  for (int i = 0; i < 10; ++i) {
    auto p = support::random_delzant(rng, 2);
    Rational a(static_cast<long>(rng() % 5) - 2, 1 + rng() % 3);
    a.canonicalize();
    Rational len(1 + static_cast<long>(rng() % 4), 1 + rng() % 2);
    len.canonicalize();
    Rational b = a + len;
    auto lhs = betti_toric(product(p, a, b));
    auto rhs = kunneth(betti_toric(p), {{1, 0, 1}});
    o.require(lhs == rhs, "product table " + show(lhs.ranks) + " != kunneth " + show(rhs.ranks));
  }
  o.detail << "decompose/re-glue reproduces the trapezoid b-polytope; 10 random products match Kunneth";
}

void criterion8(Outcome& o) {
  auto check_indices = [&](const MorseData& d, const std::string& name) {
    for (const auto& x : support::accepted_vectors(d, 5)) {
      std::vector<std::size_t> up, down;
      for (const auto& p : d.points) {
        up.push_back(d.dim - vertex_index(p.edges, x));
        down.push_back(vertex_index(p.edges, negate(x)));
      }
      std::sort(up.begin(), up.end());
      std::sort(down.begin(), down.end());
      o.require(up == down, name + ": X -> -X does not map k to n-k");
    }
  };
  for (const auto& name : support::polytope_fixtures()) {
    auto p = support::load_polytope(name);
    Table t = betti_toric(p).ranks;
    o.require(total(t) == static_cast<long long>(p.vertices().size()), name + ": sum of ranks != vertex count");
    o.require(std::equal(t.begin(), t.end(), t.rbegin()), name + ": table not palindromic");
    check_indices(morse_data(p), name);
  }
  for (const auto& name : support::bpolytope_fixtures()) {
    auto bp = support::load_bpolytope(name);
    Table t = betti_btoric(bp).ranks;
    long long finite = static_cast<long long>(bp.finite_vertex_count());
    if (bp.shape() == GraphShape::Line) {
      o.require(total(t) == finite, name + ": sum of ranks != finite vertex count");
    } else {
      // Odd ranks appear through the T^2 factor, so the count is the
      // alternating sum (the ordinary sum is 4 per slice vertex).
      o.require(euler_characteristic(BettiTable{t}) == finite, name + ": alternating sum != finite vertex count");
      o.require(total(t) == 4 * static_cast<long long>(morse_data(bp).points.size()), name + ": sum != 4 x slice vertices");
    }
    check_indices(morse_data(bp), name);
  }
  o.detail << "sum rule on all fixtures (alternating sum for the circle graph); toric palindromes; k -> n-k";
}

void criterion9(Outcome& o) {
  std::mt19937 rng(99);
  struct Plane {
    std::string name;
    IntVec m;
    Rational level;
  };
  std::vector<Plane> planes = {{"square", iv({0, 1}), Rational(1, 2)},
                               {"simplex", iv({0, 1}), Rational(1, 2)},
                               {"trapezoid", iv({0, 1}), 0},
                               {"bad_triangle", iv({1, 0}), Rational(1, 2)},
                               {"prism", iv({0, 0, 1}), Rational(1, 3)}};
  for (int t = 0; t < 50; ++t) {
    const auto& pl = planes[t % planes.size()];
    auto p = support::load_polytope(pl.name);
    IntMat u = support::random_unimodular(rng, p.dim());
    RatVec shift(p.dim(), 0);
    auto q = transform(p, u, shift);
    bool dp = is_delzant(p).delzant;
    o.require(is_delzant(q).delzant == dp, pl.name + ": Delzant status changed");
    o.require(find_parallel(q, u * pl.m, pl.level).parallel == find_parallel(p, pl.m, pl.level).parallel,
              pl.name + ": parallel acceptance changed");
    if (dp) o.require(betti_toric(q) == betti_toric(p), pl.name + ": Betti table changed");
  }
  o.detail << "50 random unimodular U (|entries| <= 5)";
}

void criterion10(Outcome& o) {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(WORK_DIR) / "acceptance_out";
  fs::create_directories(dir);
  auto out = [&](const std::string& n) { return (dir / n).string(); };
  auto reparses = [&](const std::string& path) {
    std::string text = io::read_file(path);
    auto in = io::input_from_json(io::parse(text));
    return std::visit([](const auto& v) { return io::dump(io::to_json(v)); }, in) == text;
  };
  struct Step {
    std::vector<std::string> args;
    int code;
  };
  std::vector<Step> steps = {
      {{"check", cli::fixture("simplex")}, 0},
      {{"check", cli::fixture("bad_triangle")}, 1},
      {{"check", cli::fixture("bs2xs2")}, 0},
      {{"facet", cli::fixture("trapezoid"), "--m", "0,1", "--level", "0", "-o", out("slice.json")}, 0},
      {{"cut", cli::fixture("rect"), "--m=-1,-1", "--delta=-3/2", "-o", out("pentagon.json")}, 0},
      {{"glue", cli::fixture("trapezoid"), cli::fixture("trapezoid_reflected"), "--mode", "preserve", "-o", out("quad.json")}, 0},
      {{"glue", cli::fixture("trapezoid"), cli::fixture("trapezoid_reflected"), "--mode", "reverse", "--c", "1", "-o",
        out("hirzebruch_b.json")},
       0},
      {{"decompose", cli::fixture("bs2xs2"), "-o", out("blocks")}, 0},
      {{"betti", cli::fixture("square")}, 0},
      {{"betti", cli::fixture("square"), "--X", "1,1"}, 1},
      {{"codomain", cli::fixture("t2_point")}, 0},
      {{"render", cli::fixture("bs2xs2"), "-o", out("a.svg")}, 0},
      {{"render", cli::fixture("bs2xs2"), "-o", out("b.svg")}, 0},
      {{"render", cli::fixture("prism"), "-o", out("prism.svg")}, 1},
  };
  for (const auto& s : steps) {
    auto r = cli::run(s.args);
    o.require(r.exit_code == s.code && r.report.is_object(), "delzant " + s.args[0] + " exited " + std::to_string(r.exit_code));
  }
  for (const auto& f : {"slice.json", "pentagon.json", "quad.json", "hirzebruch_b.json", "blocks_v1.json", "blocks_v2.json"})
    o.require(fs::exists(out(f)) && reparses(out(f)), std::string(f) + " does not re-parse byte-identically");
  std::string plan = io::read_file(out("blocks_plan.json"));
  o.require(io::dump(io::parse(plan)) == plan, "plan file does not re-parse byte-identically");
  o.require(io::read_file(out("a.svg")) == io::read_file(out("b.svg")), "SVG output not byte-stable");
  o.require(io::read_file(out("a.svg")).find("−1·t₂*") != std::string::npos, "weight label missing from SVG");
  o.detail << steps.size() << " CLI runs; 7 emitted files re-parse byte-identically; SVG byte-stable";
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"Delzant certification", criterion1},    {"facet slices", criterion2},
      {"symplectic cut", criterion3},           {"gluing", criterion4},
      {"Betti tables", criterion5},             {"genericity invariance", criterion6},
      {"round trips", criterion7},              {"sum rule and palindrome", criterion8},
      {"SL(n,Z) invariance", criterion9},       {"CLI conformance", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail.str(std::string("unexpected error: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 1.0) {
      o.ok = false;
      o.detail << " (took " << secs << " s, limit 1 s)";
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail.str() << "\n";
  }
  return failures == 0 ? 0 : 1;
}
