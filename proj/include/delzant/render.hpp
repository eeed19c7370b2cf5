#pragma once

// Deterministic SVG pictures of 2-dimensional inputs. Coordinates are exact
// rationals rounded to three decimals by integer arithmetic, so the output
// is byte-stable.

#include <string>

#include "delzant/bpolytope.hpp"
#include "delzant/polytope.hpp"

namespace delzant {

// Throws UnsupportedDimension unless dim == 2.
std::string render_svg(const Polytope& p);
// Glued-drawing coordinates; marked facets dashed and labelled with their
// modular weight. Throws UnsupportedDimension or UnsupportedLoop.
std::string render_svg(const BPolytope& bp);

// "−c·tᵢ*" for m = ±e_i, otherwise "−c·(m₁, …)*".
std::string weight_label(const Rational& c, const IntVec& m);

}  // namespace delzant
