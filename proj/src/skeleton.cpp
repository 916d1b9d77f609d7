#include "trop/skeleton.hpp"

#include <numeric>

namespace trop {

void validate_skeleton(const SkeletonGraph& g) {
  require(g.num_vertices > 0, "skeleton: no vertices");
  for (const auto& e : g.edges) {
    require(e.a < g.num_vertices && e.b < g.num_vertices, "skeleton: edge end out of range");
    require(e.length > 0, "skeleton: edge length must be positive");
  }
  std::vector<std::size_t> parent(g.num_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<bool> touched(g.num_vertices, false);
  for (const auto& e : g.edges) {
    parent[find(e.a)] = find(e.b);
    touched[e.a] = touched[e.b] = true;
  }
  if (g.num_vertices == 1) {
    // A single vertex with no edges is still a connected metric graph.
  } else {
    for (std::size_t v = 0; v < g.num_vertices; ++v) {
      require(touched[v], "skeleton: isolated vertex");
      require(find(v) == find(0), "skeleton: graph is not connected");
    }
  }
}

std::size_t genus(const SkeletonGraph& g) {
  validate_skeleton(g);
  return g.edges.size() + 1 - g.num_vertices;
}

SkeletonGraph subdivide_skeleton_edge(const SkeletonGraph& g, std::size_t edge, const Rat& t) {
  require(edge < g.edges.size(), "subdivide: edge out of range");
  require(t > 0 && t < 1, "subdivide: split point must be interior");
  SkeletonGraph out = g;
  std::size_t mid = out.num_vertices++;
  SkeletonEdge& low = out.edges[edge];
  SkeletonEdge high;
  high.a = mid;
  high.b = low.b;
  high.length = low.length * (Rat(1) - t);
  low.b = mid;
  low.length = low.length * t;
  out.edges.push_back(high);
  return out;
}

SkeletonGraph subdivide_loops(const SkeletonGraph& g, std::size_t points) {
  validate_skeleton(g);
  require(points >= 2, "a loop needs at least two interior points");
  SkeletonGraph out = g;
  const std::size_t original = g.edges.size();
  for (std::size_t e = 0; e < original; ++e) {
    if (g.edges[e].a != g.edges[e].b) continue;
    // Split into points+1 arcs; each split takes an equal share of the rest.
    std::size_t cur = e;
    for (std::size_t i = 0; i < points; ++i) {
      Rat t = Rat(1, static_cast<long long>(points + 1 - i));
      out = subdivide_skeleton_edge(out, cur, t);
      cur = out.edges.size() - 1;
    }
  }
  validate_skeleton(out);
  return out;
}

SkeletonGraph random_skeleton(std::size_t g, Rng& rng) {
  SkeletonGraph out;
  std::size_t min_v = (g == 0) ? 2 : 1;
  out.num_vertices = min_v + rng.below(6);
  auto random_length = [&]() { return Rat(1 + rng.below(4), 1 + rng.below(3)); };

  for (std::size_t v = 1; v < out.num_vertices; ++v) {
    SkeletonEdge e;
    e.a = rng.below(v);
    e.b = v;
    e.length = random_length();
    out.edges.push_back(e);
  }
  for (std::size_t i = 0; i < g; ++i) {
    SkeletonEdge e;
    e.a = rng.below(out.num_vertices);
    e.b = rng.below(out.num_vertices);
    e.length = random_length();
    out.edges.push_back(e);
  }
  validate_skeleton(out);
  invariant(genus(out) == g, "random skeleton has the wrong genus");
  return out;
}

}  // namespace trop
