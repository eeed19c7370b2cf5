#pragma once

// Betti numbers of toric and b-toric manifolds by counting polytope vertices
// by the number of edges pointing up with respect to a generic vector X.

#include <optional>
#include <string>
#include <vector>

#include "delzant/bpolytope.hpp"
#include "delzant/lattice.hpp"
#include "delzant/polytope.hpp"

namespace delzant {

struct BettiTable {
  std::vector<long long> ranks;  // b_0 .. b_2n

  friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

// A fixed point of the torus action: a counted vertex and its primitive
// edge directions, in the coordinates where "up" is measured.
struct CriticalPoint {
  std::string component;
  RatVec point;
  std::vector<IntVec> edges;
};

// Everything the counting rule consumes. X pairs with vectors of length
// ambient; indices range over 0..dim.
struct MorseData {
  std::size_t ambient = 0;
  std::size_t dim = 0;
  std::vector<CriticalPoint> points;
};

// All vertices of P.
MorseData morse_data(const Polytope& p);
// Line graphs: finite vertices in glued-drawing coordinates. Circle graphs:
// vertices of the common facet slice, lifted into the chart of the first edge.
MorseData morse_data(const BPolytope& bp);

struct Pairing {
  IntVec edge;
  Integer value;
};

struct GenericVector {
  IntVec x;
  std::vector<Pairing> certificate;  // one entry per distinct edge direction
};

// Throws NotGeneric (zero pairing, with the edge direction) or
// DuplicateCriticalValue (two critical points of one component at the same
// height).
GenericVector certify_generic(const MorseData& d, const IntVec& x);
// First accepted X among the permutations and sign patterns of
// (1, N, N^2, ...), N = 2, 3, ...
GenericVector generic_vector(const MorseData& d);

// k = #{e : <e, X> > 0}; the Morse index is 2k. Throws NotGeneric.
std::size_t vertex_index(const std::vector<IntVec>& edges, const IntVec& x);

struct VertexIndex {
  std::string component;
  RatVec vertex;
  std::size_t k;
};

struct MorseReport {
  BettiTable betti;
  long long euler = 0;
  GenericVector x;
  std::vector<VertexIndex> per_vertex;
};

MorseReport morse_report(const Polytope& p, const std::optional<IntVec>& x = std::nullopt);
MorseReport morse_report(const BPolytope& bp, const std::optional<IntVec>& x = std::nullopt);

BettiTable betti_toric(const Polytope& p, const std::optional<IntVec>& x = std::nullopt);
BettiTable betti_btoric(const BPolytope& bp, const std::optional<IntVec>& x = std::nullopt);

// Convolution c_k = sum_i a_i b_{k-i}.
BettiTable kunneth(const BettiTable& a, const BettiTable& b);

// The alternating sum of the table: vertex count for P, finite vertex count
// for b-polytopes (zero for circle graphs, whose manifolds carry a T^2
// factor).
long long euler_characteristic(const Polytope& p);
long long euler_characteristic(const BPolytope& bp);
long long euler_characteristic(const BettiTable& t);

}  // namespace delzant
