#pragma once

#include "trop/common.hpp"

#include <cstddef>
#include <vector>

namespace trop {

// Finite connected multigraph with positive rational edge lengths. Loops and
// parallel edges are allowed. Vertex ids are 0..num_vertices-1, edge ids are
// positions in `edges`.
struct SkeletonEdge {
  std::size_t a = 0, b = 0;
  Rat length{1};

  bool operator==(const SkeletonEdge&) const = default;
};

struct SkeletonGraph {
  std::size_t num_vertices = 0;
  std::vector<SkeletonEdge> edges;

  bool operator==(const SkeletonGraph&) const = default;
};

void validate_skeleton(const SkeletonGraph& g);

// First Betti number: edges - vertices + 1 for a connected graph.
std::size_t genus(const SkeletonGraph& g);

// Splits every loop edge into `points + 1` arcs (at least two interior points
// are required before a loop can sit inside a region).
SkeletonGraph subdivide_loops(const SkeletonGraph& g, std::size_t points = 2);

// Splits one edge at an interior point at fraction t of its length (0<t<1).
// The piece at the `a` end keeps the edge id, the other piece is appended,
// the new vertex gets the next free id.
SkeletonGraph subdivide_skeleton_edge(const SkeletonGraph& g, std::size_t edge, const Rat& t);

// Connected random multigraph of the requested genus.
SkeletonGraph random_skeleton(std::size_t g, Rng& rng);

}  // namespace trop
