#include "support.hpp"

#include <algorithm>
#include <set>

#include "delzant/error.hpp"
#include "delzant/surgery.hpp"

namespace support {

std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".json"; }

Polytope load_polytope(const std::string& name) { return io::polytope_from_json(io::parse(io::read_file(fixture_path(name)))); }

BPolytope load_bpolytope(const std::string& name) {
  return io::bpolytope_from_json(io::parse(io::read_file(fixture_path(name))));
}

RatVec rv(std::initializer_list<const char*> xs) {
  RatVec out;
  for (const char* s : xs) out.push_back(parse_rational(s));
  return out;
}

IntVec iv(std::initializer_list<long> xs) {
  IntVec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Polytope box(std::initializer_list<std::pair<long, long>> sides) {
  const std::size_t n = sides.size();
  std::vector<HalfSpace> hs;
  std::size_t i = 0;
  for (const auto& [lo, hi] : sides) {
    IntVec up(n, 0), down(n, 0);
    up[i] = 1;
    down[i] = -1;
    hs.push_back({up, Rational(lo)});
    hs.push_back({down, Rational(-hi)});
    ++i;
  }
  return Polytope::from_halfspaces(n, hs);
}

Polytope from_rows(std::size_t dim, const std::vector<std::pair<IntVec, Rational>>& rows) {
  std::vector<HalfSpace> hs;
  for (const auto& [n, o] : rows) hs.push_back({n, o});
  return Polytope::from_halfspaces(dim, hs);
}

IntMat random_unimodular(std::mt19937& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 3);
  for (;;) {
    IntMat u = IntMat::identity(n);
    const int steps = 2 + static_cast<int>(rng() % 6);
    bool ok = true;
    for (int s = 0; s < steps && ok; ++s) {
      std::size_t i = pick(rng), j = pick(rng);
      int op = coin(rng);
      if (op == 0 && n > 1) {  // swap rows (sign flip keeps det = +-1)
        if (i == j) continue;
        for (std::size_t k = 0; k < n; ++k) std::swap(u(i, k), u(j, k));
      } else if (op == 1) {
        for (std::size_t k = 0; k < n; ++k) u(i, k) = -u(i, k);
      } else if (i != j) {
        long f = (op == 2) ? 1 : -1;
        for (std::size_t k = 0; k < n; ++k) u(i, k) += f * u(j, k);
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (abs(u(a, b)) > bound) ok = false;
    }
    if (ok && !(u == IntMat::identity(n))) return u;
  }
}

namespace {

Rational lattice_length(const RatVec& a, const RatVec& b, const IntVec& dir) {
  for (std::size_t i = 0; i < dir.size(); ++i)
    if (dir[i] != 0) return (b[i] - a[i]) / Rational(dir[i]);
  return 0;
}

}  // namespace

Polytope random_delzant(std::mt19937& rng, std::size_t dim) {
  Polytope p = [&] {
    if (rng() % 2 == 0) {
      std::vector<HalfSpace> hs;
      for (std::size_t i = 0; i < dim; ++i) {
        IntVec up(dim, 0), down(dim, 0);
        up[i] = 1;
        down[i] = -1;
        hs.push_back({up, 0});
        hs.push_back({down, -Rational(1 + static_cast<long>(rng() % 3))});
      }
      return Polytope::from_halfspaces(dim, hs);
    }
    std::vector<HalfSpace> hs;
    for (std::size_t i = 0; i < dim; ++i) {
      IntVec up(dim, 0);
      up[i] = 1;
      hs.push_back({up, 0});
    }
    hs.push_back({IntVec(dim, -1), -Rational(2 + static_cast<long>(rng() % 3))});
    return Polytope::from_halfspaces(dim, hs);
  }();
  const int cuts = static_cast<int>(rng() % 3);
  for (int c = 0; c < cuts; ++c) {
    std::size_t v = rng() % p.vertices().size();
    const RatVec& x = p.vertices()[v];
    IntVec m(dim, 0);
    // Inward normal of a corner cut: sum of the dual basis of the edges,
    // i.e. the sum of incident facet normals at a Delzant vertex.
    for (auto f : p.incident_facets(v))
      for (std::size_t k = 0; k < dim; ++k) m[k] += p.halfspaces()[f].normal[k];
    Rational shortest = -1;
    for (const auto& [a, b] : p.edges()) {
      std::size_t other = a == v ? b : (b == v ? a : v);
      if (other == v) continue;
      const RatVec& y = p.vertices()[other];
      Rational len = lattice_length(x, y, primitive_direction(sub(y, x)));
      if (shortest < 0 || len < shortest) shortest = len;
    }
    Rational eps = shortest / 2;
    Rational level = 0;
    for (std::size_t k = 0; k < dim; ++k) level += x[k] * m[k];
    try {
      p = cut(p, m, level + eps);
    } catch (const Error&) {
    }
  }
  return p;
}

std::vector<IntVec> accepted_vectors(const MorseData& d, std::size_t count, std::uint32_t seed) {
  std::vector<IntVec> out;
  std::set<IntVec> seen;
  IntVec first = generic_vector(d).x;
  out.push_back(first);
  seen.insert(first);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> entry(-10, 10);
  for (int attempts = 0; out.size() < count && attempts < 100000; ++attempts) {
    IntVec x(d.ambient);
    for (auto& z : x) z = entry(rng);
    if (seen.count(x)) continue;
    try {
      certify_generic(d, x);
    } catch (const Error&) {
      continue;
    }
    seen.insert(x);
    out.push_back(x);
  }
  return out;
}

const std::vector<std::string>& polytope_fixtures() {
  static const std::vector<std::string> names = {"square", "simplex", "trapezoid", "trapezoid_reflected",
                                                 "wide_rect", "rect", "interval", "prism"};
  return names;
}

const std::vector<std::string>& bpolytope_fixtures() {
  static const std::vector<std::string> names = {"bs2xs2", "bs2", "t2_point"};
  return names;
}

}  // namespace support
