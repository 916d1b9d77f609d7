#pragma once

#include "trop/cohomology.hpp"
#include "trop/skeleton.hpp"

namespace trop {

// Predicted table for the whole skeleton of a totally degenerate curve of
// genus g: h = hc = [[1, g], [g, 1]].
CohomologyTable theorem_table_global(std::size_t g);

// Predicted table for a compact simply-connected region with k >= 1 endpoints
// (boundary points plus free ends): h = [[1,0],[k-1,0]], hc = [[0,k-1],[0,1]].
CohomologyTable theorem_table_simple(std::size_t k);

// Compact simply-connected region in a skeleton graph: a core tree plus a cut
// stub on every escaping edge end. Edges leaving the core are subdivided so
// the cut points are genuine vertices; k counts the cut points.
struct SimpleSkeletonRegion {
  SkeletonGraph ambient;  // input graph with the cut subdivisions applied
  RegionSpec region;
  std::size_t k = 0;
};
SimpleSkeletonRegion make_simple_region(const SkeletonGraph& g,
                                        const std::vector<std::size_t>& core_vertices,
                                        const std::vector<std::size_t>& core_edges);

// Random core tree inside g, turned into a simple region.
SimpleSkeletonRegion random_simple_region(const SkeletonGraph& g, Rng& rng);

struct SkeletonVerification {
  std::size_t g = 0;
  CohomologyTable global_table;
  bool global_ok = false;
  std::size_t regions_checked = 0;
  bool simple_ok = false;
  bool duality_ok = false;
  bool ok = false;
};

// Checks the whole-skeleton table against the genus prediction, a sample of
// simple regions against the endpoint-count prediction, and duality on all of
// them.
SkeletonVerification verify_skeleton(const SkeletonGraph& g, std::uint64_t seed = 1,
                                     std::size_t region_samples = 4);

}  // namespace trop
