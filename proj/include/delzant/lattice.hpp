#pragma once

// Exact rational arithmetic and integer lattice algorithms.
//
// All scalars are GMP integers/rationals; nothing in this library touches
// floating point. Vectors are plain std::vector values, matrices are dense
// row-major IntMat values.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace delzant {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(const IntVec& v);
std::string to_string(const RatVec& v);

Integer dot(const IntVec& a, const IntVec& b);
Rational dot(const RatVec& a, const IntVec& b);
RatVec to_rational(const IntVec& v);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rational& s, const IntVec& v);
IntVec negate(const IntVec& v);

// Integer matrix with value semantics.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols);

  static IntMat identity(std::size_t n);
  static IntMat from_rows(const std::vector<IntVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVec row(std::size_t i) const;
  IntVec col(std::size_t j) const;
  std::vector<IntVec> row_vectors() const;
  IntMat transpose() const;

  IntMat operator*(const IntMat& rhs) const;
  IntVec operator*(const IntVec& v) const;
  RatVec operator*(const RatVec& v) const;

  friend bool operator==(const IntMat& a, const IntMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Fraction-free (Bareiss) determinant. Throws ShapeMismatch if not square.
Integer determinant(const IntMat& m);
bool is_unimodular(const IntMat& m);
// Exact inverse of a unimodular matrix. Throws NotUnimodular otherwise.
IntMat unimodular_inverse(const IntMat& m);

struct Primitive {
  IntVec vector;
  Integer gcd;
};

// v = gcd * vector, gcd > 0; the sign of v is preserved. Throws ZeroVector.
Primitive primitive(const IntVec& v);
bool is_primitive(const IntVec& v);
// Smallest integer vector positively proportional to a nonzero rational one.
IntVec primitive_direction(const RatVec& v);

struct HermiteForm {
  IntMat h;  // row-style Hermite normal form
  IntMat u;  // unimodular, u * input == h
};

// Row-style HNF: upper staircase, positive pivots, entries above each pivot
// reduced into [0, pivot).
HermiteForm hermite_normal_form(const IntMat& m);

// Unimodular U with U * t == e_n (last standard basis vector); det U == 1
// whenever n >= 2. Throws NotPrimitive.
IntMat sl_transform_to_last_axis(const IntVec& t);

// Rational linear algebra used by vertex enumeration and charts.
std::optional<RatVec> solve(std::vector<RatVec> a, RatVec b);
std::size_t rank(std::vector<RatVec> rows);
std::size_t rank(const std::vector<IntVec>& rows);
// Basis of {x : <row_i, x> = 0 for all i} with integer entries.
std::vector<IntVec> integer_kernel(const std::vector<IntVec>& rows, std::size_t n);

}  // namespace delzant
