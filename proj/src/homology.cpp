#include "delzant/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "delzant/error.hpp"
#include "delzant/surgery.hpp"

namespace delzant {

namespace {

const BettiTable kTorus{{1, 2, 1}};

Integer pair(const IntVec& e, const IntVec& x) { return dot(e, x); }

}  // namespace

MorseData morse_data(const Polytope& p) {
  MorseData d;
  d.ambient = d.dim = p.dim();
  for (std::size_t v = 0; v < p.vertices().size(); ++v)
    d.points.push_back({"P", p.vertices()[v], p.edge_directions(v)});
  return d;
}

MorseData morse_data(const BPolytope& bp) {
  MorseData d;
  d.ambient = bp.dim();
  if (bp.shape() == GraphShape::Line) {
    d.dim = bp.dim();
    for (auto& dv : glued_drawing(bp).finite_vertices)
      d.points.push_back({dv.component, std::move(dv.point), std::move(dv.edges)});
    return d;
  }
  d.dim = bp.dim() - 1;
  const auto& edge = bp.graph().edges.front();
  auto collar = edge_collar(bp, 0);
  auto basis = hyperplane_basis(edge.m).basis;
  RatVec base = scale(collar.levels[0], collar.w);
  auto lift = [&](const RatVec& y) {
    RatVec x = base;
    for (std::size_t j = 0; j < basis.size(); ++j) x = add(x, scale(y[j], basis[j]));
    return x;
  };
  const auto& s = collar.slice;
  for (std::size_t v = 0; v < s.vertices().size(); ++v) {
    std::vector<IntVec> edges;
    for (const auto& e : s.edge_directions(v)) {
      IntVec lifted(bp.dim(), Integer(0));
      for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < lifted.size(); ++i) lifted[i] += e[j] * basis[j][i];
      edges.push_back(std::move(lifted));
    }
    d.points.push_back({edge.ends[0], lift(s.vertices()[v]), std::move(edges)});
  }
  return d;
}

GenericVector certify_generic(const MorseData& d, const IntVec& x) {
  if (x.size() != d.ambient)
    throw Error(ErrorCode::ShapeMismatch, "X has length " + std::to_string(x.size()) + ", expected " + std::to_string(d.ambient));
  GenericVector g{x, {}};
  for (const auto& cp : d.points)
    for (const auto& e : cp.edges) {
      Integer value = pair(e, x);
      if (value == 0) {
        Error err(ErrorCode::NotGeneric, "X = " + to_string(x) + " is orthogonal to edge " + to_string(e) + " at vertex " +
                                             to_string(cp.point));
        err.direction = e;
        err.vertex = cp.point;
        throw err;
      }
      bool seen = std::any_of(g.certificate.begin(), g.certificate.end(), [&](const Pairing& p) { return p.edge == e; });
      if (!seen) g.certificate.push_back({e, value});
    }
  std::map<std::string, std::map<Rational, RatVec>> heights;
  for (const auto& cp : d.points) {
    Rational h = dot(cp.point, x);
    auto [it, fresh] = heights[cp.component].emplace(h, cp.point);
    if (!fresh) {
      Error err(ErrorCode::DuplicateCriticalValue, "vertices " + to_string(it->second) + " and " + to_string(cp.point) +
                                                       " have the same value " + to_string(h) + " under X = " + to_string(x));
      err.vertex = cp.point;
      throw err;
    }
  }
  return g;
}

GenericVector generic_vector(const MorseData& d) {
  const std::size_t n = d.ambient;
  for (long base = 2;; ++base) {
    IntVec powers(n);
    Integer p = 1;
    for (std::size_t i = 0; i < n; ++i, p *= base) powers[i] = p;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (unsigned long signs = 0; signs < (1ul << n); ++signs) {
        IntVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = (signs >> i & 1) ? Integer(-powers[perm[i]]) : powers[perm[i]];
        try {
          return certify_generic(d, x);
        } catch (const Error&) {
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

std::size_t vertex_index(const std::vector<IntVec>& edges, const IntVec& x) {
  std::size_t k = 0;
  for (const auto& e : edges) {
    Integer value = pair(e, x);
    if (value == 0) {
      Error err(ErrorCode::NotGeneric, "X = " + to_string(x) + " is orthogonal to edge " + to_string(e));
      err.direction = e;
      throw err;
    }
    if (value > 0) ++k;
  }
  return k;
}

namespace {

MorseReport count(const MorseData& d, const std::optional<IntVec>& x) {
  MorseReport r;
  r.x = x ? certify_generic(d, *x) : generic_vector(d);
  r.betti.ranks.assign(2 * d.dim + 1, 0);
  for (const auto& cp : d.points) {
    std::size_t k = vertex_index(cp.edges, r.x.x);
    ++r.betti.ranks[2 * k];
    r.per_vertex.push_back({cp.component, cp.point, k});
  }
  return r;
}

}  // namespace

MorseReport morse_report(const Polytope& p, const std::optional<IntVec>& x) {
  auto check = is_delzant(p);
  if (!check.delzant) {
    Error err(ErrorCode::NotUnimodular, "polytope is not Delzant: " + check.reason);
    err.vertex = check.witness->vertex;
    err.determinant = check.witness->determinant;
    throw err;
  }
  MorseReport r = count(morse_data(p), x);
  r.euler = euler_characteristic(p);
  return r;
}

MorseReport morse_report(const BPolytope& bp, const std::optional<IntVec>& x) {
  auto check = is_b_delzant(bp);
  if (!check.b_delzant) throw Error(ErrorCode::InvalidBPolytope, "not b-Delzant: " + check.reason);
  MorseReport r = count(morse_data(bp), x);
  if (bp.shape() == GraphShape::Circle) r.betti = kunneth(r.betti, kTorus);
  r.euler = euler_characteristic(bp);
  return r;
}

BettiTable betti_toric(const Polytope& p, const std::optional<IntVec>& x) { return morse_report(p, x).betti; }

BettiTable betti_btoric(const BPolytope& bp, const std::optional<IntVec>& x) { return morse_report(bp, x).betti; }

BettiTable kunneth(const BettiTable& a, const BettiTable& b) {
  if (a.ranks.empty() || b.ranks.empty()) return {};
  BettiTable c{std::vector<long long>(a.ranks.size() + b.ranks.size() - 1, 0)};
  for (std::size_t i = 0; i < a.ranks.size(); ++i)
    for (std::size_t j = 0; j < b.ranks.size(); ++j) c.ranks[i + j] += a.ranks[i] * b.ranks[j];
  return c;
}

long long euler_characteristic(const Polytope& p) { return static_cast<long long>(p.vertices().size()); }

long long euler_characteristic(const BPolytope& bp) { return static_cast<long long>(bp.finite_vertex_count()); }

long long euler_characteristic(const BettiTable& t) {
  long long chi = 0;
  for (std::size_t k = 0; k < t.ranks.size(); ++k) chi += (k % 2 ? -1 : 1) * t.ranks[k];
  return chi;
}

}  // namespace delzant
