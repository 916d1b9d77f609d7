#pragma once

#include "trop/curve.hpp"
#include "trop/linalg.hpp"
#include "trop/skeleton.hpp"
#include "trop/tropicalize.hpp"

namespace trop {

// A region of a curve or skeleton graph: cell ids of the vertices and edges
// it contains, plus the subset of vertices where it is cut off (its boundary
// inside the ambient space). Vertices at infinity can belong to a region but
// never to its boundary.
struct RegionSpec {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;
  std::vector<std::size_t> boundary;

  bool operator==(const RegionSpec&) const = default;
};

void validate_region(const TropicalCurve& c, const RegionSpec& s);
void validate_region(const SkeletonGraph& g, const RegionSpec& s);

RegionSpec whole_region(const TropicalCurve& c);
RegionSpec whole_region(const SkeletonGraph& g);

struct CohomologyTable {
  int h[2][2] = {{0, 0}, {0, 0}};    // h[p][q]
  int hc[2][2] = {{0, 0}, {0, 0}};   // compactly supported

  bool operator==(const CohomologyTable& o) const {
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        if (h[p][q] != o.h[p][q] || hc[p][q] != o.hc[p][q]) return false;
    return true;
  }
};

// Combinatorial core of a region: its cells, boundary flags, and for every
// edge endpoint a row expressing "value of a local form on this edge's
// tail->head direction" in the endpoint vertex's chosen basis of one-forms.
struct CellGraph {
  struct Vertex {
    bool at_infinity = false;
    bool in_boundary = false;
    std::size_t f1 = 0;  // dimension of the one-form stalk
  };
  struct End {
    bool present = false;      // false: free end, no vertex
    std::size_t vertex = 0;
    std::vector<Rat> row;      // length f1 of the vertex
  };
  struct CEdge {
    End tail, head;
  };
  std::vector<Vertex> vertices;
  std::vector<CEdge> edges;
};

CellGraph cell_graph(const TropicalCurve& c, const RegionSpec& s);
CellGraph cell_graph(const SkeletonGraph& g, const RegionSpec& s);
// Same region, but every stalk replaced by the valence-based model (local
// forms = weights on outgoing slots summing to zero). For comparison tests.
CellGraph cell_graph_abstract(const TropicalCurve& c, const RegionSpec& s);

void flip_edge_orientation(CellGraph& g, std::size_t edge);

// Two-term complex computing either the ordinary or the compactly supported
// cohomology of the region in one form degree p.
struct SheafComplex {
  std::vector<std::size_t> cell_dims;       // one block per 0-cell
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<Rat>> d;          // rows x cols
  std::size_t core_vertices = 0, core_edges = 0;
};

SheafComplex build_complex(const CellGraph& g, int p, bool compact_support);

CohomologyTable table_of(const CellGraph& g);
CohomologyTable cohomology_table(const TropicalCurve& c, const RegionSpec& s);
CohomologyTable cohomology_table(const SkeletonGraph& g, const RegionSpec& s);
CohomologyTable cohomology_table_abstract(const TropicalCurve& c, const RegionSpec& s);

// Duality h^{p,q} == hc^{1-p,1-q} of one table.
bool pd_check(const CohomologyTable& t);

struct EulerReport {
  bool ok = false;
  long long chi = 0;          // h^{0,0} - h^{0,1}
  long long cells = 0;        // core vertices minus core edges
};
EulerReport euler_check(const TropicalCurve& c, const RegionSpec& s);
EulerReport euler_check(const SkeletonGraph& g, const RegionSpec& s);

// Region of the modification source lying over a region of its target:
// lifted cells plus, over every interior vertex that grew a ray, the ray and
// its endpoint at infinity.
RegionSpec preimage_region(const ModificationMap& mod, const RegionSpec& on_target);

// Random connected-ish region, for property tests. May leave out parts of the
// ambient space and may puncture interior vertices into boundary ones.
RegionSpec random_region(const TropicalCurve& c, Rng& rng);
RegionSpec random_region(const SkeletonGraph& g, Rng& rng);

// Compact simply-connected region on a curve: a core tree of vertices and
// edges, with every escaping edge cut at an interior point. Free rays kept in
// the core count toward k like cuts do.
struct SimpleRegion {
  TropicalCurve ambient;  // input curve with the cut subdivisions applied
  RegionSpec region;
  std::size_t k = 0;      // boundary points plus free ends
};
SimpleRegion make_simple_region(const TropicalCurve& c,
                                const std::vector<std::size_t>& core_vertices,
                                const std::vector<std::size_t>& core_edges,
                                const Rat& cut_param);

}  // namespace trop
