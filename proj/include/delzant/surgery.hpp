#pragma once

#include <string>
#include <vector>

#include "delzant/bpolytope.hpp"
#include "delzant/lattice.hpp"
#include "delzant/polytope.hpp"

namespace delzant {

// Lattice chart on a parallel hyperplane F = {<x, m> = level}: points of F
// are base_point + sum_j y_j basis_j, with basis a lattice basis of
// {xi : <xi, m> = 0}. base_point = level * w for the crossing direction w.
struct FacetChart {
  RatVec base_point;
  std::vector<IntVec> basis;
  Polytope slice;
};

// Lattice basis of {xi in Z^n : <xi, m> = 0} plus a complement vector with
// <complement, m> = 1; together they are certified unimodular.
struct HyperplaneBasis {
  std::vector<IntVec> basis;
  IntVec complement;
};
HyperplaneBasis hyperplane_basis(const IntVec& m);

// Chart coordinates of F cap P, measured from base_point = level * w.
Polytope slice_in_chart(const Polytope& p, const IntVec& m, const Rational& level, const IntVec& w);

// Throws NotParallel when find_parallel rejects F.
FacetChart facet_slice(const Polytope& p, const ParallelHyperplane& f);

// P cap {<x, m> >= delta}, required Delzant. Throws TrivialCut, NonDelzantCut.
Polytope cut(const Polytope& p, const IntVec& m, const Rational& delta);

// The gluing hyperplane F = {<x, m> = level}.
struct Interface {
  IntVec m;
  Rational level;
};

using Log = std::vector<std::string>;

// Union of P1 and P2 along F; P1 has a facet on F, P2 is translated along
// the crossing direction to meet F from the other side. Throws
// NotStrictParallel, NonConvexUnion, SliceMismatch, NonDelzantGlue.
Polytope glue_preserving(const Polytope& p1, const Polytope& p2, const Interface& f, Log* log = nullptr);

// Orientation-reversing gluing: a two-vertex, one-edge b-polytope with
// weight -c m*, m the inward normal of P1's facet on F. P2 may meet F from
// either side; it is translated (and reflected across F along the crossing
// direction when it sits opposite P1) into the chart convention. Throws
// InvalidWeight, NotStrictParallel, SliceMismatch.
BPolytope glue_reversed(const Polytope& p1, const Polytope& p2, const Interface& f, const Rational& c,
                        Log* log = nullptr);

// Candidate interfaces for gluing P1 and P2 when F is not given: facets of
// P1 that are strict parallel and admit a matching facet of P2.
std::vector<Interface> glue_candidates(const Polytope& p1, const Polytope& p2, bool reversed);

}  // namespace delzant
