#pragma once

// Weighted adjacency graphs, the b-moment codomain, b-polytopes and their
// decomposition into strict-parallel Delzant blocks.
//
// Storage convention: every component is a bounded Delzant-candidate polytope
// in its own copy of t*. For an edge e = (c, m) both incident components carry
// a marked "infinity facet" whose inward normal is exactly m, i.e. each
// component sits on the +m side of its marked facet. The modular weight of e
// is -c * m*.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "delzant/lattice.hpp"
#include "delzant/polytope.hpp"

namespace delzant {

struct WeightedEdge {
  std::array<std::string, 2> ends;
  Rational c;  // > 0
  IntVec m;    // primitive

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct WeightedAdjacencyGraph {
  std::vector<std::string> vertices;
  std::vector<WeightedEdge> edges;

  std::optional<std::size_t> index_of(const std::string& id) const;
  // Edge indices incident to a vertex; a loop appears twice.
  std::vector<std::size_t> incident_edges(const std::string& id) const;

  friend bool operator==(const WeightedAdjacencyGraph&, const WeightedAdjacencyGraph&) = default;
};

enum class GraphShape { Line, Circle };

struct GraphCheck {
  bool ok = false;
  std::optional<GraphShape> shape;
  std::string vertex;              // offending vertex, if any
  std::vector<std::size_t> edges;  // offending edges, if any
  std::string reason;
};

// Path-or-cycle shape plus the adjacent-weight rule nu_1 = k nu_2, k < 0.
GraphCheck validate_graph(const WeightedAdjacencyGraph& g);

struct CodomainEdge {
  std::size_t edge;
  Rational c;
  IntVec weight_direction;          // m; the weight is -c m*
  std::vector<IntVec> hyperplane;   // lattice basis of t_w = ker(m*) in t
  std::map<std::string, int> chart_sign;  // +1 -> exp(x/c), -1 -> -exp(x/c)
};

struct BMomentCodomain {
  WeightedAdjacencyGraph graph;
  std::size_t dim = 0;
  std::vector<std::string> charts;  // one copy of t* per graph vertex
  std::vector<CodomainEdge> edges;
  bool identity = false;  // single vertex: (t*, empty, id)
};

// Throws InvalidGraph.
BMomentCodomain build_codomain(const WeightedAdjacencyGraph& g, std::size_t dim);

struct Component {
  Polytope polytope;
  std::map<std::size_t, std::size_t> infinity_facets;  // edge index -> facet index
};

class BPolytope {
 public:
  // Structural validation only (graph shape and weights, component ids,
  // marked facets present with inward normal m). Throws InvalidGraph or
  // InvalidBPolytope. Lattice conditions are checked by is_b_delzant.
  BPolytope(WeightedAdjacencyGraph graph, std::vector<Component> components);

  // A Delzant polytope viewed as a b-polytope with one vertex and no edges.
  static BPolytope trivial(Polytope p, const std::string& id = "v1");

  const WeightedAdjacencyGraph& graph() const { return graph_; }
  GraphShape shape() const { return shape_; }
  std::size_t dim() const { return components_.front().polytope.dim(); }
  // Aligned with graph().vertices.
  const std::vector<Component>& components() const { return components_; }
  const Component& component(const std::string& id) const;

  // Vertices not lying on any marked facet, per component.
  std::vector<std::size_t> finite_vertices(std::size_t component) const;
  std::size_t finite_vertex_count() const;

  // Translation along the collar and the collar length are not intrinsic;
  // this fixes both so that equivalent b-polytopes compare equal.
  BPolytope canonical() const;

  friend bool operator==(const BPolytope& a, const BPolytope& b);

 private:
  WeightedAdjacencyGraph graph_;
  std::vector<Component> components_;
  GraphShape shape_ = GraphShape::Line;
};

// Collar data of one edge: both marked facets are strict parallel with the
// same crossing direction w, and their slices agree in the chart of m.
struct EdgeCollar {
  IntVec w;
  std::array<Rational, 2> levels;  // marked facet levels <x, m> per end
  Polytope slice;
};

// Throws SliceMismatch / NotStrictParallel describing the first violation.
EdgeCollar edge_collar(const BPolytope& bp, std::size_t edge);

struct BDelzantCheck {
  bool b_delzant = false;
  std::string component;
  std::optional<std::size_t> edge;
  std::optional<VertexCertificate> witness;
  std::string reason;
};

BDelzantCheck is_b_delzant(const BPolytope& bp);

struct Block {
  std::string vertex;
  Polytope polytope;
  std::map<std::size_t, std::size_t> cut_facets;  // edge index -> facet index
  std::vector<ParallelHyperplane> interfaces;     // strict parallel certificates
};

struct PlanStep {
  std::size_t edge;
  std::array<std::size_t, 2> blocks;  // block index per edge end
  Rational c;
  IntVec m;
  std::array<Rational, 2> levels;
};

struct ReassemblyPlan {
  WeightedAdjacencyGraph graph;
  std::vector<PlanStep> steps;
};

struct Decomposition {
  std::vector<Block> blocks;  // one per graph vertex, in vertex order
  ReassemblyPlan plan;
};

using CutLevels = std::map<std::size_t, std::array<Rational, 2>>;

// Admissible open interval of cut levels for one edge end.
std::array<Rational, 2> cut_level_range(const BPolytope& bp, std::size_t edge, std::size_t end);
// Default cut level for one edge end (midpoint of the admissible range,
// or of its lower half when the component has no finite vertex).
Rational default_cut_level(const BPolytope& bp, std::size_t edge, std::size_t end);

// Throws BadCutLevel or DecompositionFailure.
Decomposition decompose(const BPolytope& bp, const CutLevels& levels = {});
// Rebuilds a b-polytope from decomposed blocks; inverse of decompose up to
// canonical().
BPolytope reassemble(const Decomposition& d);

struct AffinePlacement {
  IntMat linear;  // acts on points of t*
  RatVec translation;
};

struct DrawnVertex {
  std::string component;
  RatVec chart_point;
  RatVec point;
  std::vector<IntVec> chart_edges;
  std::vector<IntVec> edges;
};

struct GluedDrawing {
  std::vector<std::string> order;  // components along the path
  std::vector<AffinePlacement> placements;  // aligned with order
  std::vector<Polytope> drawn;              // aligned with order
  std::vector<DrawnVertex> finite_vertices;
};

// Line graphs only (UnsupportedLoop otherwise).
GluedDrawing glued_drawing(const BPolytope& bp);

}  // namespace delzant
