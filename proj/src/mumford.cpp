#include "trop/mumford.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace trop {

CohomologyTable theorem_table_global(std::size_t g) {
  CohomologyTable t;
  int gi = static_cast<int>(g);
  t.h[0][0] = 1;
  t.h[0][1] = gi;
  t.h[1][0] = gi;
  t.h[1][1] = 1;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) t.hc[p][q] = t.h[p][q];
  return t;
}

CohomologyTable theorem_table_simple(std::size_t k) {
  invariant(k >= 1, "a simple region has at least one endpoint");
  CohomologyTable t;
  int ki = static_cast<int>(k);
  t.h[0][0] = 1;
  t.h[0][1] = 0;
  t.h[1][0] = ki - 1;
  t.h[1][1] = 0;
  t.hc[0][0] = 0;
  t.hc[0][1] = ki - 1;
  t.hc[1][0] = 0;
  t.hc[1][1] = 1;
  return t;
}

SimpleSkeletonRegion make_simple_region(const SkeletonGraph& g,
                                        const std::vector<std::size_t>& core_vertices,
                                        const std::vector<std::size_t>& core_edges) {
  validate_skeleton(g);
  std::set<std::size_t> cv(core_vertices.begin(), core_vertices.end());
  std::set<std::size_t> ce(core_edges.begin(), core_edges.end());
  require(!cv.empty(), "core must contain a vertex");
  for (std::size_t v : cv) require(v < g.num_vertices, "core vertex out of range");
  for (std::size_t e : ce) {
    require(e < g.edges.size(), "core edge out of range");
    require(cv.count(g.edges[e].a) && cv.count(g.edges[e].b),
            "core edge endpoint missing from the core");
    require(g.edges[e].a != g.edges[e].b, "core contains a cycle");
  }

  // Connected and acyclic.
  {
    std::map<std::size_t, std::size_t> rank;
    for (std::size_t v : cv) rank.emplace(v, rank.size());
    std::vector<std::size_t> parent(rank.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (std::size_t e : ce) {
      std::size_t a = find(rank.at(g.edges[e].a)), b = find(rank.at(g.edges[e].b));
      require(a != b, "core contains a cycle");
      parent[b] = a;
    }
    for (std::size_t i = 0; i < parent.size(); ++i)
      require(find(i) == find(0), "core is not connected");
  }

  SkeletonGraph x = g;
  std::vector<std::size_t> cut_vertices, stub_edges;
  const std::size_t original = g.edges.size();
  for (std::size_t e = 0; e < original; ++e) {
    if (ce.count(e)) continue;
    bool a_core = cv.count(g.edges[e].a) > 0;
    bool b_core = cv.count(g.edges[e].b) > 0;
    if (!a_core && !b_core) continue;

    if (a_core && b_core) {
      // Covers loops at a core vertex and parallel edges between core
      // vertices: two cuts leave one stub at each end, middle arc excluded.
      SkeletonGraph x1 = subdivide_skeleton_edge(x, e, Rat(1, 3));
      std::size_t cut1 = x1.num_vertices - 1;
      std::size_t mid_edge = x1.edges.size() - 1;
      x = subdivide_skeleton_edge(x1, mid_edge, Rat(1, 2));
      std::size_t cut2 = x.num_vertices - 1;
      std::size_t stub2 = x.edges.size() - 1;
      cut_vertices.push_back(cut1);
      cut_vertices.push_back(cut2);
      stub_edges.push_back(e);      // [a, cut1]
      stub_edges.push_back(stub2);  // [cut2, b]
    } else {
      // One cut; the stub is the piece at the core end.
      if (a_core) {
        x = subdivide_skeleton_edge(x, e, Rat(1, 2));
        cut_vertices.push_back(x.num_vertices - 1);
        stub_edges.push_back(e);
      } else {
        x = subdivide_skeleton_edge(x, e, Rat(1, 2));
        cut_vertices.push_back(x.num_vertices - 1);
        stub_edges.push_back(x.edges.size() - 1);
      }
    }
  }

  SimpleSkeletonRegion out;
  out.region.vertices.assign(cv.begin(), cv.end());
  out.region.vertices.insert(out.region.vertices.end(), cut_vertices.begin(), cut_vertices.end());
  out.region.edges.assign(ce.begin(), ce.end());
  out.region.edges.insert(out.region.edges.end(), stub_edges.begin(), stub_edges.end());
  out.region.boundary = cut_vertices;
  std::sort(out.region.vertices.begin(), out.region.vertices.end());
  std::sort(out.region.edges.begin(), out.region.edges.end());
  std::sort(out.region.boundary.begin(), out.region.boundary.end());
  out.k = cut_vertices.size();
  validate_region(x, out.region);
  out.ambient = std::move(x);
  return out;
}

SimpleSkeletonRegion random_simple_region(const SkeletonGraph& g, Rng& rng) {
  // Grow a random subtree, then cut everything that escapes.
  std::set<std::size_t> cv{rng.below(g.num_vertices)};
  std::set<std::size_t> ce;
  auto inc = [&](std::size_t v) {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].a == v || g.edges[e].b == v) out.push_back(e);
    return out;
  };
  bool growing = true;
  while (growing) {
    growing = false;
    std::vector<std::pair<std::size_t, std::size_t>> frontier;  // (edge, new vertex)
    for (std::size_t v : cv)
      for (std::size_t e : inc(v)) {
        if (ce.count(e) || g.edges[e].a == g.edges[e].b) continue;
        std::size_t other = (g.edges[e].a == v) ? g.edges[e].b : g.edges[e].a;
        if (!cv.count(other)) frontier.emplace_back(e, other);
      }
    if (!frontier.empty() && rng.chance(2, 3)) {
      auto [e, v] = frontier[rng.below(frontier.size())];
      if (!cv.count(v)) {
        cv.insert(v);
        ce.insert(e);
        growing = true;
      }
    }
  }
  return make_simple_region(g, std::vector<std::size_t>(cv.begin(), cv.end()),
                            std::vector<std::size_t>(ce.begin(), ce.end()));
}

SkeletonVerification verify_skeleton(const SkeletonGraph& g, std::uint64_t seed,
                                     std::size_t region_samples) {
  SkeletonVerification out;
  out.g = genus(g);

  SkeletonGraph sub = subdivide_loops(g, 2);
  out.global_table = cohomology_table(sub, whole_region(sub));
  out.global_ok = (out.global_table == theorem_table_global(out.g));
  out.duality_ok = pd_check(out.global_table);

  Rng rng(seed);
  out.simple_ok = true;
  for (std::size_t i = 0; i < region_samples; ++i) {
    SimpleSkeletonRegion sr = random_simple_region(sub, rng);
    if (sr.k == 0) {
      // The subtree swallowed the whole graph; only genus 0 allows that.
      if (out.g != 0) out.simple_ok = false;
      continue;
    }
    CohomologyTable t = cohomology_table(sr.ambient, sr.region);
    if (!(t == theorem_table_simple(sr.k))) out.simple_ok = false;
    if (!pd_check(t)) out.duality_ok = false;
    ++out.regions_checked;
  }
  out.ok = out.global_ok && out.simple_ok && out.duality_ok;
  return out;
}

}  // namespace trop
