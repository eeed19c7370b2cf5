#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "delzant/lattice.hpp"

namespace delzant {

// The constraint <x, normal> >= offset, normal primitive and inward.
struct HalfSpace {
  IntVec normal;
  Rational offset;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

bool operator<(const HalfSpace& a, const HalfSpace& b);

// Bounded, full-dimensional rational polytope with an irredundant H-rep and an
// exact V-rep. Values are immutable once built; all surgery returns new ones.
class Polytope {
 public:
  // Normalizes normals to primitive vectors, drops duplicate and redundant
  // half-spaces (recorded in construction_log()), enumerates vertices and
  // edges. Throws Unbounded, Empty or NotFullDim.
  static Polytope from_halfspaces(std::size_t dim, std::vector<HalfSpace> halfspaces);

  // The 0-dimensional polytope (a single point of R^0).
  static Polytope point();

  std::size_t dim() const { return dim_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  // Pairs of vertex indices spanning the 1-faces.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  // Facets tight at vertex i, ascending.
  const std::vector<std::size_t>& incident_facets(std::size_t vertex) const {
    return incident_[vertex];
  }
  // Primitive inward edge directions at vertex i. At a simple vertex the j-th
  // direction leaves the j-th incident facet.
  const std::vector<IntVec>& edge_directions(std::size_t vertex) const {
    return directions_[vertex];
  }
  // Throws NotAVertex.
  const std::vector<IntVec>& edge_directions(const RatVec& v) const;

  std::optional<std::size_t> find_vertex(const RatVec& v) const;
  std::vector<std::size_t> facet_vertices(std::size_t facet) const;
  std::optional<std::size_t> find_facet(const IntVec& normal) const;

  Rational slack(std::size_t facet, const RatVec& x) const;
  bool contains(const RatVec& x) const;

  // For each kept half-space, the index it had in the constructor input.
  const std::vector<std::size_t>& source_indices() const { return source_; }
  const std::vector<std::string>& construction_log() const { return log_; }

  // H-rep equality as sets of half-spaces.
  friend bool operator==(const Polytope& a, const Polytope& b);

 private:
  std::size_t dim_ = 0;
  std::vector<HalfSpace> halfspaces_;
  std::vector<std::size_t> source_;
  std::vector<RatVec> vertices_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::vector<IntVec>> directions_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::string> log_;
};

struct VertexCertificate {
  RatVec vertex;
  IntMat edges;  // one edge direction per row
  Integer determinant;  // |det|, the index of the lattice the edges span
};

struct DelzantCheck {
  bool delzant = false;
  std::vector<VertexCertificate> certificates;  // filled on success
  std::optional<VertexCertificate> witness;     // first failing vertex
  std::string reason;
};

// Every vertex simple and its primitive edge directions a lattice basis.
DelzantCheck is_delzant(const Polytope& p);

// F = {x : <x, m> = level}.
struct ParallelHyperplane {
  IntVec m;
  Rational level;
  std::optional<IntVec> common_direction;  // w with <w, m> = 1
  bool strict = false;
  std::optional<std::size_t> facet;  // supported facet when strict
};

struct ParallelCheck {
  bool parallel = false;
  ParallelHyperplane plane;
  std::string reason;  // rejection reason
};

// Throws NotPrimitive, or NoIntersection when F misses P or only touches a
// face of dimension below n - 1.
ParallelCheck find_parallel(const Polytope& p, const IntVec& m, const Rational& level);

// Image under x -> (U^T)^{-1} x + t on t*; normals map by U. U must be
// unimodular (NotUnimodular otherwise).
Polytope transform(const Polytope& p, const IntMat& u, const RatVec& t);
// Same map written by its action on points: x -> L x + t.
Polytope apply_affine(const Polytope& p, const IntMat& linear, const RatVec& t);
// Convenience: translation by t.
Polytope translate(const Polytope& p, const RatVec& t);

// P x [a, b]; the new coordinate is last. Throws EmptyInterval.
Polytope product(const Polytope& p, const Rational& a, const Rational& b);

// <x, u_i> - lambda_i per facet. Throws OutsidePolytope.
std::vector<Rational> facet_distances(const Polytope& p, const RatVec& x);

}  // namespace delzant
