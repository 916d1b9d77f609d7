#pragma once

#include "trop/curve.hpp"
#include "trop/ultrametric.hpp"

#include <map>

namespace trop {

// Integer-sloped piecewise affine function on a curve: exact values at the
// finite vertices and one integer slope per edge, measured along the stored
// tail->head direction. Values at vertices at infinity are implied by the
// incident slope (finite limit for slope 0, -inf for negative slope).
struct PiecewiseAffineFunction {
  std::map<std::size_t, Rat> values;
  std::map<std::size_t, long long> slopes;
};

// Elementary modification: the source lives in T^{r+1}, projects onto the
// target (drop the last coordinate), and carries one downward ray per
// rebalanced vertex.
struct ModificationMap {
  TropicalCurve source;
  TropicalCurve target;                  // the base curve, possibly subdivided
  std::vector<std::size_t> vertex_lift;  // target vertex id -> source vertex id
  std::vector<std::size_t> edge_lift;    // target edge id -> source edge id
  struct Ray {
    std::size_t base_vertex;  // target vertex the ray hangs under
    std::size_t ray_edge;     // source edge id
    std::size_t inf_vertex;   // source vertex id at infinity
    long long weight;
  };
  std::vector<Ray> added_rays;
};

// Tree of discs: embedded tropicalization of the line with respect to the n
// points described by the matrix, one coordinate per point. Canonical form.
TropicalCurve tropicalize_direct(const LogDistanceMatrix& m);

// Value at z of the distance function to an extra point b, given the column
// of log-distances from b to the curve's defining points. z must lie on the
// curve; the defining formula is evaluated through every coordinate that
// determines it and all readings are checked against each other.
Rat eval_P(const TropicalCurve& x, const std::vector<Rat>& b_column, const ExtendedPoint& z);

// Tropical modification of x along p: lifts the curve to the graph of p and
// appends downward rays where balancing requires them.
ModificationMap modify(const TropicalCurve& x, const PiecewiseAffineFunction& p);

// One point at a time: starts from the line and performs one modification per
// additional point. Result is canonical and must coincide with
// tropicalize_direct on the same matrix.
TropicalCurve tropicalize_incremental(const LogDistanceMatrix& m);

struct IncrementalTrace {
  TropicalCurve curve;                // canonical final curve
  std::vector<ModificationMap> steps; // one per added point beyond the first
};
IncrementalTrace tropicalize_incremental_trace(const LogDistanceMatrix& m);

// Coordinate projection onto a subset of the marked points; contracted cells
// collapse and lengths rescale by the direction content. `keep` uses 0-based
// point indices.
TropicalCurve project_transition(const TropicalCurve& x, const std::vector<std::size_t>& keep);

// Restriction of z -> max_j(<m_j, z> + c_j) to a curve: subdivides each edge
// at the kinks of the upper envelope and returns the induced function on the
// subdivided curve. Used to build arbitrary valid modification inputs.
struct AffineTerm {
  std::vector<long long> m;
  Rat c;
};
struct Restriction {
  TropicalCurve curve;
  PiecewiseAffineFunction paf;
};
Restriction restrict_max_affine(const TropicalCurve& x, const std::vector<AffineTerm>& terms);

}  // namespace trop
