#include "delzant/lattice.hpp"

#include <algorithm>
#include <utility>

#include "delzant/error.hpp"

namespace delzant {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::NotFullDim: return "NotFullDim";
    case ErrorCode::NotAVertex: return "NotAVertex";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::NotParallel: return "NotParallel";
    case ErrorCode::NotStrictParallel: return "NotStrictParallel";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::OutsidePolytope: return "OutsidePolytope";
    case ErrorCode::TrivialCut: return "TrivialCut";
    case ErrorCode::NonDelzantCut: return "NonDelzantCut";
    case ErrorCode::SliceMismatch: return "SliceMismatch";
    case ErrorCode::NonConvexUnion: return "NonConvexUnion";
    case ErrorCode::NonDelzantGlue: return "NonDelzantGlue";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidBPolytope: return "InvalidBPolytope";
    case ErrorCode::BadCutLevel: return "BadCutLevel";
    case ErrorCode::DecompositionFailure: return "DecompositionFailure";
    case ErrorCode::UnsupportedLoop: return "UnsupportedLoop";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::DuplicateCriticalValue: return "DuplicateCriticalValue";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorCode::ParseError, "not an exact rational: \"" + s + "\""); };
  if (s.empty()) throw bad();
  auto valid_int = [](std::string_view part) {
    std::size_t i = 0;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    return std::all_of(part.begin() + i, part.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') throw bad();
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw bad();
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const IntVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

std::string to_string(const RatVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

Integer dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec to_rational(const IntVec& v) { return RatVec(v.begin(), v.end()); }

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec scale(const Rational& s, const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

IntVec negate(const IntVec& v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

// ---------------------------------------------------------------------------
// IntMat

IntMat::IntMat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return IntMat();
  IntMat m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMat::row(std::size_t i) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVec IntMat::col(std::size_t j) const {
  IntVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<IntVec> IntMat::row_vectors() const {
  std::vector<IntVec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMat IntMat::transpose() const {
  IntMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMat IntMat::operator*(const IntMat& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorCode::ShapeMismatch, "matrix product shape mismatch");
  IntMat p(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) p(i, j) += a * rhs(k, j);
    }
  return p;
}

IntVec IntMat::operator*(const IntVec& v) const {
  if (cols_ != v.size()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector shape mismatch");
  IntVec r(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

RatVec IntMat::operator*(const RatVec& v) const {
  if (cols_ != v.size()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector shape mismatch");
  RatVec r(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

Integer determinant(const IntMat& m) {
  if (!m.square()) throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMat& m) {
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

IntMat unimodular_inverse(const IntMat& m) {
  if (!m.square()) throw Error(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
  if (!is_unimodular(m)) throw Error(ErrorCode::NotUnimodular, "matrix is not unimodular");
  const std::size_t n = m.rows();
  // Gauss-Jordan over Q; the result is integral because det = +-1.
  std::vector<RatVec> a(n, RatVec(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    Rational piv = a[c][c];
    for (auto& x : a[c]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a[i][n + j].get_num();
  return inv;
}

// ---------------------------------------------------------------------------
// Primitive vectors

Primitive primitive(const IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) throw Error(ErrorCode::ZeroVector, "primitive() of the zero vector");
  Primitive p{IntVec(v.size()), g};
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(p.vector[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return p;
}

bool is_primitive(const IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g == 1;
}

IntVec primitive_direction(const RatVec& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVec scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational t = v[i] * l;
    scaled[i] = t.get_num();
  }
  return primitive(scaled).vector;
}

// ---------------------------------------------------------------------------
// Hermite normal form

namespace {

void row_axpy(IntMat& m, std::size_t dst, const Integer& q, std::size_t src) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void row_swap(IntMat& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void row_negate(IntMat& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMat& m) {
  HermiteForm f{m, IntMat::identity(m.rows())};
  IntMat& h = f.h;
  IntMat& u = f.u;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < h.cols() && pivot_row < h.rows(); ++c) {
    // Euclid on column c among rows >= pivot_row.
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = pivot_row; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        if (best == h.rows() || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == h.rows()) break;
      if (best != pivot_row) {
        row_swap(h, best, pivot_row);
        row_swap(u, best, pivot_row);
      }
      bool done = true;
      for (std::size_t i = pivot_row + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer q = floor_div(h(i, c), h(pivot_row, c));
        row_axpy(h, i, q, pivot_row);
        row_axpy(u, i, q, pivot_row);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pivot_row, c) == 0) continue;
    if (h(pivot_row, c) < 0) {
      row_negate(h, pivot_row);
      row_negate(u, pivot_row);
    }
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Integer q = floor_div(h(i, c), h(pivot_row, c));
      if (q == 0) continue;
      row_axpy(h, i, q, pivot_row);
      row_axpy(u, i, q, pivot_row);
    }
    ++pivot_row;
  }
  return f;
}

IntMat sl_transform_to_last_axis(const IntVec& t) {
  const std::size_t n = t.size();
  if (n == 0 || !is_primitive(t))
    throw Error(ErrorCode::NotPrimitive, "sl_transform_to_last_axis: " + to_string(t) + " is not primitive");
  IntMat u = IntMat::identity(n);
  IntVec v = t;
  auto axpy = [&](std::size_t dst, const Integer& q, std::size_t src) {
    v[dst] -= q * v[src];
    row_axpy(u, dst, q, src);
  };
  // Euclid across entries; ties prefer the highest index so that the last
  // coordinate ends up as the pivot whenever possible.
  while (true) {
    std::size_t piv = n;
    std::size_t nonzero = 0;
    for (std::size_t i = n; i-- > 0;) {
      if (v[i] == 0) continue;
      ++nonzero;
      if (piv == n || abs(v[i]) < abs(v[piv])) piv = i;
    }
    if (nonzero == 1) {
      if (piv != n - 1) {
        // (a, 0) -> (a, a) -> (0, a)
        axpy(n - 1, Integer(-1), piv);
        axpy(piv, Integer(1), n - 1);
      }
      if (v[n - 1] < 0) {
        v[n - 1] = -v[n - 1];
        row_negate(u, n - 1);
        if (n >= 2) row_negate(u, 0);
      }
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == piv || v[i] == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), v[piv].get_mpz_t());
      axpy(i, q, piv);
    }
  }
  return u;
}

// ---------------------------------------------------------------------------
// Rational elimination

std::optional<RatVec> solve(std::vector<RatVec> a, RatVec b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  RatVec x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVec>& rows, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational piv = rows[r][c];
    for (auto& x : rows[r]) x /= piv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(std::vector<RatVec> rows) {
  if (rows.empty()) return 0;
  return rref(rows, rows.front().size()).size();
}

std::size_t rank(const std::vector<IntVec>& rows) {
  std::vector<RatVec> r;
  r.reserve(rows.size());
  for (const auto& v : rows) r.push_back(to_rational(v));
  return rank(std::move(r));
}

std::vector<IntVec> integer_kernel(const std::vector<IntVec>& rows, std::size_t n) {
  std::vector<RatVec> r;
  for (const auto& v : rows) r.push_back(to_rational(v));
  auto pivots = rref(r, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<IntVec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVec x(n, Rational(0));
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r[i][f];
    basis.push_back(primitive_direction(x));
  }
  return basis;
}

}  // namespace delzant
