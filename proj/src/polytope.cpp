#include "delzant/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "delzant/error.hpp"

namespace delzant {

bool operator<(const HalfSpace& a, const HalfSpace& b) {
  if (a.normal != b.normal) return a.normal < b.normal;
  return a.offset < b.offset;
}

namespace {

bool feasible(const std::vector<HalfSpace>& hs, const RatVec& x) {
  for (const auto& h : hs)
    if (dot(x, h.normal) < h.offset) return false;
  return true;
}

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<RatVec> enumerate_vertices(std::size_t dim, const std::vector<HalfSpace>& hs) {
  std::set<RatVec> found;
  for_each_subset(hs.size(), dim, [&](const std::vector<std::size_t>& idx) {
    std::vector<RatVec> a;
    RatVec b;
    a.reserve(dim);
    for (auto i : idx) {
      a.push_back(to_rational(hs[i].normal));
      b.push_back(hs[i].offset);
    }
    auto x = solve(std::move(a), std::move(b));
    if (x && feasible(hs, *x)) found.insert(*x);
  });
  return {found.begin(), found.end()};
}

std::size_t affine_rank(const std::vector<RatVec>& points) {
  if (points.size() <= 1) return 0;
  std::vector<RatVec> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
  return rank(std::move(diffs));
}

bool has_recession_direction(std::size_t dim, const std::vector<HalfSpace>& hs) {
  bool unbounded = false;
  auto test = [&](const IntVec& d) {
    for (const auto& h : hs)
      if (dot(d, h.normal) < 0) return false;
    return true;
  };
  for_each_subset(hs.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
    if (unbounded) return;
    std::vector<IntVec> rows;
    for (auto i : idx) rows.push_back(hs[i].normal);
    auto ker = integer_kernel(rows, dim);
    if (ker.size() != 1) return;
    if (test(ker[0]) || test(negate(ker[0]))) unbounded = true;
  });
  return unbounded;
}

}  // namespace

Polytope Polytope::point() {
  Polytope p;
  p.dim_ = 0;
  p.vertices_ = {RatVec{}};
  p.incident_ = {{}};
  p.directions_ = {{}};
  return p;
}

Polytope Polytope::from_halfspaces(std::size_t dim, std::vector<HalfSpace> input) {
  if (dim == 0) throw Error(ErrorCode::ShapeMismatch, "from_halfspaces: dimension must be >= 1");
  Polytope p;
  p.dim_ = dim;

  // Normalize and merge half-spaces sharing a normal.
  std::vector<HalfSpace> hs;
  std::vector<std::size_t> source;
  std::map<IntVec, std::size_t> by_normal;
  for (std::size_t i = 0; i < input.size(); ++i) {
    HalfSpace h = input[i];
    h.offset.canonicalize();  // callers may hand in p/q not in lowest terms
    if (h.normal.size() != dim)
      throw Error(ErrorCode::ShapeMismatch, "half-space " + std::to_string(i) + " has wrong dimension");
    bool zero = std::all_of(h.normal.begin(), h.normal.end(), [](const Integer& z) { return z == 0; });
    if (zero) {
      if (h.offset > 0) throw Error(ErrorCode::Empty, "half-space " + std::to_string(i) + " is 0 >= positive");
      p.log_.push_back("dropped trivial half-space " + std::to_string(i));
      continue;
    }
    auto prim = primitive(h.normal);
    if (prim.gcd != 1) {
      h.normal = prim.vector;
      h.offset /= prim.gcd;
      p.log_.push_back("divided half-space " + std::to_string(i) + " by " + prim.gcd.get_str());
    }
    auto it = by_normal.find(h.normal);
    if (it != by_normal.end()) {
      HalfSpace& kept = hs[it->second];
      // The tighter constraint survives and keeps its own input index.
      if (h.offset > kept.offset) {
        p.log_.push_back("dropped half-space " + std::to_string(source[it->second]) + ": redundant next to half-space " +
                         std::to_string(i) + " with the same normal " + to_string(h.normal));
        kept.offset = h.offset;
        source[it->second] = i;
      } else {
        p.log_.push_back("dropped half-space " + std::to_string(i) + ": redundant next to half-space " +
                         std::to_string(source[it->second]) + " with the same normal " + to_string(h.normal));
      }
      continue;
    }
    by_normal.emplace(h.normal, hs.size());
    hs.push_back(h);
    source.push_back(i);
  }
  if (hs.empty()) throw Error(ErrorCode::Unbounded, "no constraints: the region is all of Q^n");

  std::vector<IntVec> normals;
  for (const auto& h : hs) normals.push_back(h.normal);
  if (rank(normals) < dim) {
    // Pin the lineality space to decide emptiness, then report unboundedness.
    auto lineality = integer_kernel(normals, dim);
    std::vector<HalfSpace> pinned = hs;
    for (const auto& l : lineality) {
      pinned.push_back({l, 0});
      pinned.push_back({negate(l), 0});
    }
    if (enumerate_vertices(dim, pinned).empty()) throw Error(ErrorCode::Empty, "the half-spaces have empty intersection");
    throw Error(ErrorCode::Unbounded, "the feasible region contains a line");
  }

  auto verts = enumerate_vertices(dim, hs);
  if (verts.empty()) throw Error(ErrorCode::Empty, "the half-spaces have empty intersection");
  if (has_recession_direction(dim, hs)) throw Error(ErrorCode::Unbounded, "the feasible region is unbounded");
  if (affine_rank(verts) < dim) throw Error(ErrorCode::NotFullDim, "the feasible region is not full-dimensional");

  // Keep only facet-defining half-spaces.
  for (std::size_t i = 0; i < hs.size(); ++i) {
    std::vector<RatVec> tight;
    for (const auto& v : verts)
      if (dot(v, hs[i].normal) == hs[i].offset) tight.push_back(v);
    if (!tight.empty() && affine_rank(tight) == dim - 1) {
      p.halfspaces_.push_back(hs[i]);
      p.source_.push_back(source[i]);
    } else {
      p.log_.push_back("removed redundant half-space " + std::to_string(source[i]));
    }
  }

  p.vertices_ = std::move(verts);
  const std::size_t nv = p.vertices_.size();
  p.incident_.resize(nv);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t f = 0; f < p.halfspaces_.size(); ++f)
      if (dot(p.vertices_[v], p.halfspaces_[f].normal) == p.halfspaces_[f].offset) p.incident_[v].push_back(f);

  // Two vertices span an edge iff their common facets cut out a line.
  std::vector<std::vector<std::size_t>> neighbours(nv);
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = a + 1; b < nv; ++b) {
      std::vector<std::size_t> common;
      std::set_intersection(p.incident_[a].begin(), p.incident_[a].end(), p.incident_[b].begin(),
                            p.incident_[b].end(), std::back_inserter(common));
      std::vector<IntVec> rows;
      for (auto f : common) rows.push_back(p.halfspaces_[f].normal);
      if (rank(rows) == dim - 1) {
        p.edges_.emplace_back(a, b);
        neighbours[a].push_back(b);
        neighbours[b].push_back(a);
      }
    }

  p.directions_.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const auto& inc = p.incident_[v];
    std::vector<std::pair<std::size_t, IntVec>> keyed;
    for (auto w : neighbours[v]) {
      IntVec d = primitive_direction(sub(p.vertices_[w], p.vertices_[v]));
      std::size_t key = inc.size();
      if (inc.size() == dim) {
        // The edge leaves exactly one incident facet of a simple vertex.
        for (std::size_t j = 0; j < inc.size(); ++j)
          if (dot(d, p.halfspaces_[inc[j]].normal) != 0) key = j;
      }
      keyed.emplace_back(key, std::move(d));
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto& [k, d] : keyed) p.directions_[v].push_back(std::move(d));
  }
  return p;
}

const std::vector<IntVec>& Polytope::edge_directions(const RatVec& v) const {
  auto i = find_vertex(v);
  if (!i) {
    Error e(ErrorCode::NotAVertex, to_string(v) + " is not a vertex");
    e.vertex = v;
    throw e;
  }
  return directions_[*i];
}

std::optional<std::size_t> Polytope::find_vertex(const RatVec& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::vector<std::size_t> Polytope::facet_vertices(std::size_t facet) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (std::binary_search(incident_[v].begin(), incident_[v].end(), facet)) out.push_back(v);
  return out;
}

std::optional<std::size_t> Polytope::find_facet(const IntVec& normal) const {
  for (std::size_t f = 0; f < halfspaces_.size(); ++f)
    if (halfspaces_[f].normal == normal) return f;
  return std::nullopt;
}

Rational Polytope::slack(std::size_t facet, const RatVec& x) const {
  return dot(x, halfspaces_[facet].normal) - halfspaces_[facet].offset;
}

bool Polytope::contains(const RatVec& x) const {
  if (x.size() != dim_) return false;
  return feasible(halfspaces_, x);
}

bool operator==(const Polytope& a, const Polytope& b) {
  if (a.dim_ != b.dim_) return false;
  auto ha = a.halfspaces_;
  auto hb = b.halfspaces_;
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  return ha == hb;
}

DelzantCheck is_delzant(const Polytope& p) {
  DelzantCheck check;
  const std::size_t n = p.dim();
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const auto& dirs = p.edge_directions(v);
    VertexCertificate cert{p.vertices()[v], IntMat::from_rows(dirs), 0};
    if (n == 0) {
      cert.edges = IntMat(0, 0);
      cert.determinant = 1;
    } else if (dirs.size() != n || p.incident_facets(v).size() != n) {
      check.witness = cert;
      check.reason = "vertex " + to_string(cert.vertex) + " is not simple (" +
                     std::to_string(p.incident_facets(v).size()) + " facets, " + std::to_string(dirs.size()) +
                     " edges)";
      return check;
    } else {
      cert.determinant = abs(determinant(cert.edges));
    }
    if (cert.determinant != 1) {
      check.reason = "edge directions at " + to_string(cert.vertex) + " have |determinant| " +
                     cert.determinant.get_str();
      check.witness = std::move(cert);
      check.certificates.clear();
      return check;
    }
    check.certificates.push_back(std::move(cert));
  }
  check.delzant = true;
  return check;
}

ParallelCheck find_parallel(const Polytope& p, const IntVec& m, const Rational& level) {
  if (m.size() != p.dim()) throw Error(ErrorCode::ShapeMismatch, "find_parallel: m has wrong dimension");
  if (!is_primitive(m)) throw Error(ErrorCode::NotPrimitive, "find_parallel: m = " + to_string(m) + " is not primitive");

  ParallelCheck out;
  out.plane.m = m;
  out.plane.level = level;

  const auto& verts = p.vertices();
  std::vector<int> side(verts.size());
  std::size_t pos = 0, neg = 0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    Rational s = dot(verts[i], m) - level;
    side[i] = sgn(s);
    if (side[i] > 0) ++pos;
    if (side[i] < 0) ++neg;
  }
  const std::size_t zero = verts.size() - pos - neg;
  if (zero == 0 && (pos == 0 || neg == 0))
    throw Error(ErrorCode::NoIntersection, "hyperplane <x," + to_string(m) + "> = " + to_string(level) + " misses the polytope");

  if (pos == 0 || neg == 0) {
    IntVec inward = neg == 0 ? m : negate(m);
    Rational offset = neg == 0 ? level : Rational(-level);
    auto f = p.find_facet(inward);
    if (!f || p.halfspaces()[*f].offset != offset)
      throw Error(ErrorCode::NoIntersection,
                  "hyperplane touches the polytope only in a face of dimension < n-1");
    out.plane.strict = true;
    out.plane.facet = f;
  }

  std::optional<IntVec> w;
  for (const auto& [a, b] : p.edges()) {
    if (side[a] == 0 && side[b] == 0) continue;
    if (side[a] * side[b] > 0) continue;
    IntVec d = primitive_direction(sub(verts[b], verts[a]));
    if (dot(d, m) < 0) d = negate(d);
    if (!w) {
      w = d;
    } else if (*w != d) {
      out.reason = "crossing edges " + to_string(*w) + " and " + to_string(d) + " are not parallel";
      return out;
    }
  }
  if (!w) {
    out.reason = "no edge crosses the hyperplane";
    return out;
  }
  if (dot(*w, m) != 1) {
    out.reason = "crossing direction " + to_string(*w) + " pairs with m to " + dot(*w, m).get_str() + ", not 1";
    return out;
  }
  for (std::size_t f = 0; f < p.halfspaces().size(); ++f) {
    bool above = false, below = false;
    for (auto v : p.facet_vertices(f)) {
      above |= side[v] > 0;
      below |= side[v] < 0;
    }
    if (above && below && dot(*w, p.halfspaces()[f].normal) != 0) {
      out.reason = "facet with normal " + to_string(p.halfspaces()[f].normal) + " is crossed but not invariant under " +
                   to_string(*w);
      return out;
    }
  }
  out.plane.common_direction = w;
  out.parallel = true;
  return out;
}

Polytope transform(const Polytope& p, const IntMat& u, const RatVec& t) {
  if (!u.square() || u.rows() != p.dim()) throw Error(ErrorCode::ShapeMismatch, "transform: matrix has wrong shape");
  if (!is_unimodular(u)) throw Error(ErrorCode::NotUnimodular, "transform: matrix is not unimodular");
  if (p.dim() == 0) return p;
  std::vector<HalfSpace> hs;
  for (const auto& h : p.halfspaces()) {
    IntVec n = u * h.normal;
    Rational off = h.offset + dot(t, n);
    hs.push_back({std::move(n), std::move(off)});
  }
  return Polytope::from_halfspaces(p.dim(), std::move(hs));
}

Polytope apply_affine(const Polytope& p, const IntMat& linear, const RatVec& t) {
  return transform(p, unimodular_inverse(linear).transpose(), t);
}

Polytope translate(const Polytope& p, const RatVec& t) {
  return transform(p, IntMat::identity(p.dim()), t);
}

Polytope product(const Polytope& p, const Rational& a, const Rational& b) {
  if (a >= b) throw Error(ErrorCode::EmptyInterval, "product: interval [" + to_string(a) + "," + to_string(b) + "] is empty");
  const std::size_t n = p.dim() + 1;
  std::vector<HalfSpace> hs;
  for (const auto& h : p.halfspaces()) {
    IntVec lifted = h.normal;
    lifted.push_back(0);
    hs.push_back({std::move(lifted), h.offset});
  }
  IntVec up(n, Integer(0));
  up[n - 1] = 1;
  hs.push_back({up, a});
  hs.push_back({negate(up), -b});
  return Polytope::from_halfspaces(n, std::move(hs));
}

std::vector<Rational> facet_distances(const Polytope& p, const RatVec& x) {
  if (x.size() != p.dim()) throw Error(ErrorCode::ShapeMismatch, "facet_distances: point has wrong dimension");
  std::vector<Rational> d;
  for (std::size_t f = 0; f < p.halfspaces().size(); ++f) {
    d.push_back(p.slack(f, x));
    if (d.back() < 0) {
      Error e(ErrorCode::OutsidePolytope, to_string(x) + " lies outside the polytope");
      e.vertex = x;
      throw e;
    }
  }
  return d;
}

}  // namespace delzant
