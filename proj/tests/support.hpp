#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "delzant/bpolytope.hpp"
#include "delzant/homology.hpp"
#include "delzant/io.hpp"
#include "delzant/polytope.hpp"

namespace support {

using namespace delzant;

std::string fixture_path(const std::string& name);
Polytope load_polytope(const std::string& name);
BPolytope load_bpolytope(const std::string& name);

RatVec rv(std::initializer_list<const char*> xs);
IntVec iv(std::initializer_list<long> xs);
Polytope box(std::initializer_list<std::pair<long, long>> sides);
Polytope from_rows(std::size_t dim, const std::vector<std::pair<IntVec, Rational>>& rows);

// Product of random elementary row operations, entries bounded by `bound`.
IntMat random_unimodular(std::mt19937& rng, std::size_t n, long bound = 5);

// A box or simplex with a few Delzant corner cuts.
Polytope random_delzant(std::mt19937& rng, std::size_t dim);

// `count` distinct X accepted by certify_generic, the canonical one first.
std::vector<IntVec> accepted_vectors(const MorseData& d, std::size_t count, std::uint32_t seed = 7);

// Names of the polytope and b-polytope fixtures.
const std::vector<std::string>& polytope_fixtures();
const std::vector<std::string>& bpolytope_fixtures();

}  // namespace support
