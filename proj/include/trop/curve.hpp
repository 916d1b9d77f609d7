#pragma once

#include "trop/common.hpp"

#include <optional>

namespace trop {

// Point of T^r = [-inf, inf)^r with extended rational coordinates.
struct ExtendedPoint {
  std::vector<LogValue> coords;

  bool at_infinity() const {
    for (const auto& c : coords)
      if (c.is_neg_inf()) return true;
    return false;
  }
  friend bool operator==(const ExtendedPoint& a, const ExtendedPoint& b) {
    return a.coords == b.coords;
  }
  friend bool operator!=(const ExtendedPoint& a, const ExtendedPoint& b) { return !(a == b); }
  friend bool operator<(const ExtendedPoint& a, const ExtendedPoint& b) {
    // lexicographic, -inf below every rational
    for (std::size_t i = 0; i < a.coords.size() && i < b.coords.size(); ++i) {
      if (a.coords[i] < b.coords[i]) return true;
      if (b.coords[i] < a.coords[i]) return false;
    }
    return a.coords.size() < b.coords.size();
  }
};

// Closed 1-cell. head == nullopt means the edge is a free end: an unbounded
// ray leaving T^r (no limit point). length == nullopt means infinite length.
struct Edge {
  std::size_t tail = 0;
  std::optional<std::size_t> head;
  std::vector<long long> direction;  // primitive integer vector, tail towards head
  std::optional<Rat> length;         // positive rational, or nullopt for infinite
  long long weight = 1;

  bool bounded() const { return length.has_value(); }
  bool free_end() const { return !head.has_value(); }
  friend bool operator==(const Edge& a, const Edge& b) {
    return a.tail == b.tail && a.head == b.head && a.direction == b.direction &&
           a.length == b.length && a.weight == b.weight;
  }
};

enum class EdgeKind {
  Bounded,     // finite tail, finite head
  ToInfinity,  // finite tail, head a vertex at infinity
  FreeRay,     // finite tail, free end
  Line         // tail a vertex at infinity, free end (unbounded both ways)
};

// Embedded weighted metric graph in T^r.
struct TropicalCurve {
  std::size_t r = 0;
  std::vector<ExtendedPoint> vertices;
  std::vector<Edge> edges;

  friend bool operator==(const TropicalCurve& a, const TropicalCurve& b) {
    return a.r == b.r && a.vertices == b.vertices && a.edges == b.edges;
  }
};

EdgeKind edge_kind(const TropicalCurve& c, const Edge& e);

// Outgoing primitive direction of edge e seen from the endpoint `at_tail`.
std::vector<long long> outgoing_direction(const Edge& e, bool at_tail);

// Edge ends incident to each vertex: (edge id, is_tail) pairs.
std::vector<std::vector<std::pair<std::size_t, bool>>> incidence(const TropicalCurve& c);

// Structural invariants (coordinate consistency, primitivity, valence of
// vertices at infinity, connectivity; with geometry also pairwise edge
// disjointness and vertex/interior separation). Empty result means valid.
std::vector<std::string> curve_structure_errors(const TropicalCurve& c,
                                                bool check_geometry = true);
void validate_curve(const TropicalCurve& c, bool check_geometry = true);

struct BalancingDefect {
  std::size_t vertex;
  std::vector<long long> defect;  // sum of weight * outgoing primitive direction
};
struct BalancingReport {
  bool balanced = false;
  std::vector<BalancingDefect> defects;  // finite vertices with nonzero sum
};
BalancingReport check_balancing(const TropicalCurve& c);

// Local dimension: rank of the incident primitive directions at a finite
// vertex, 0 at a vertex at infinity.
std::size_t vertex_dim(const TropicalCurve& c, std::size_t v);

struct SmoothnessWitness {
  std::size_t vertex;
  std::size_t valence;
  std::size_t dim;
};
struct SmoothReport {
  bool smooth = false;
  bool weights_one = false;
  std::vector<SmoothnessWitness> bad_vertices;      // valence != dim + 1
  std::vector<std::size_t> non_unit_weight_edges;
};
SmoothReport check_smooth(const TropicalCurve& c);

struct Location {
  enum class Kind { Vertex, Interior, Absent } kind = Kind::Absent;
  std::size_t index = 0;  // vertex id or edge id
};
Location locate_point(const TropicalCurve& c, const ExtendedPoint& p);

// Point tail + t * direction of an edge with finite tail.
ExtendedPoint point_along(const TropicalCurve& c, std::size_t edge, const Rat& t);

struct SubdivisionResult {
  TropicalCurve curve;
  std::size_t new_vertex;
  std::size_t low_edge;   // piece keeping the original edge id (tail side)
  std::size_t high_edge;  // appended piece (head side)
};

// Split an edge at parameter t from its tail, 0 < t < length. Requires a
// finite tail; for the doubly unbounded line use subdivide_at_point.
SubdivisionResult subdivide_at(const TropicalCurve& c, std::size_t edge, const Rat& t);

// Split an edge at an explicit interior point (works for every edge kind).
SubdivisionResult subdivide_at_point(const TropicalCurve& c, std::size_t edge,
                                     const ExtendedPoint& p);

// Canonical form: merge through finite 2-valent vertices joining two edges of
// equal weight and opposite directions (kept when merging would lose the
// anchor of a doubly unbounded edge), then sort vertices lexicographically
// and edges by (tail, head, direction). Canonical forms are equal iff the
// curves are equal.
TropicalCurve canonicalize(const TropicalCurve& c);
bool canonical_equal(const TropicalCurve& a, const TropicalCurve& b);

}  // namespace trop
