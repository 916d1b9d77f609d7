#include "trop/cohomology.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace trop {

namespace {

std::string num_str(std::size_t i) {
  std::ostringstream os;
  os << i;
  return os.str();
}

void check_ids(const std::vector<std::size_t>& ids, std::size_t bound, const char* what) {
  std::set<std::size_t> seen;
  for (std::size_t id : ids) {
    require(id < bound, std::string("region: ") + what + " id out of range");
    require(seen.insert(id).second, std::string("region: duplicate ") + what + " id");
  }
}

}  // namespace

void validate_region(const TropicalCurve& c, const RegionSpec& s) {
  check_ids(s.vertices, c.vertices.size(), "vertex");
  check_ids(s.edges, c.edges.size(), "edge");
  check_ids(s.boundary, c.vertices.size(), "boundary vertex");
  require(!s.vertices.empty(), "region: no vertices");

  std::set<std::size_t> vs(s.vertices.begin(), s.vertices.end());
  std::set<std::size_t> es(s.edges.begin(), s.edges.end());
  std::set<std::size_t> bs(s.boundary.begin(), s.boundary.end());
  for (std::size_t b : bs) {
    require(vs.count(b), "region: boundary vertex not in the region");
    require(!c.vertices[b].at_infinity(), "region: boundary vertex at infinity");
  }

  for (std::size_t e : es) {
    require(vs.count(c.edges[e].tail), "region: edge " + num_str(e) + " leaves the vertex set");
    if (c.edges[e].head)
      require(vs.count(*c.edges[e].head), "region: edge " + num_str(e) + " leaves the vertex set");
  }

  auto inc = incidence(c);
  for (std::size_t v : vs) {
    bool has_region_edge = false;
    for (auto& [e, at_head] : inc[v]) {
      (void)at_head;
      if (es.count(e)) has_region_edge = true;
    }
    if (bs.count(v)) {
      require(has_region_edge, "region: boundary vertex " + num_str(v) + " touches no region edge");
    } else {
      for (auto& [e, at_head] : inc[v]) {
        (void)at_head;
        require(es.count(e), "region: vertex " + num_str(v) +
                                 " is interior but ambient edge " + num_str(e) + " is missing");
      }
      require(has_region_edge, "region: vertex " + num_str(v) + " touches no region edge");
    }
  }
}

namespace {

std::vector<std::vector<std::pair<std::size_t, bool>>> skeleton_incidence(const SkeletonGraph& g) {
  std::vector<std::vector<std::pair<std::size_t, bool>>> inc(g.num_vertices);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    inc[g.edges[e].a].emplace_back(e, false);
    inc[g.edges[e].b].emplace_back(e, true);
  }
  return inc;
}

}  // namespace

void validate_region(const SkeletonGraph& g, const RegionSpec& s) {
  check_ids(s.vertices, g.num_vertices, "vertex");
  check_ids(s.edges, g.edges.size(), "edge");
  check_ids(s.boundary, g.num_vertices, "boundary vertex");
  require(!s.vertices.empty(), "region: no vertices");

  std::set<std::size_t> vs(s.vertices.begin(), s.vertices.end());
  std::set<std::size_t> es(s.edges.begin(), s.edges.end());
  std::set<std::size_t> bs(s.boundary.begin(), s.boundary.end());
  for (std::size_t b : bs) require(vs.count(b), "region: boundary vertex not in the region");
  for (std::size_t e : es) {
    require(g.edges[e].a != g.edges[e].b,
            "region: loop edge " + num_str(e) + "; subdivide loops before taking regions");
    require(vs.count(g.edges[e].a) && vs.count(g.edges[e].b),
            "region: edge " + num_str(e) + " leaves the vertex set");
  }

  auto inc = skeleton_incidence(g);
  for (std::size_t v : vs) {
    bool has_region_edge = false;
    for (auto& [e, at_head] : inc[v]) {
      (void)at_head;
      if (es.count(e)) has_region_edge = true;
    }
    // A vertex isolated in the ambient graph is a whole component: open on
    // its own, with no edge to demand.
    if (inc[v].empty() && !bs.count(v)) continue;
    if (bs.count(v)) {
      require(has_region_edge, "region: boundary vertex " + num_str(v) + " touches no region edge");
    } else {
      for (auto& [e, at_head] : inc[v]) {
        (void)at_head;
        require(es.count(e), "region: vertex " + num_str(v) +
                                 " is interior but ambient edge " + num_str(e) + " is missing");
      }
      require(has_region_edge, "region: vertex " + num_str(v) + " touches no region edge");
    }
  }
}

RegionSpec whole_region(const TropicalCurve& c) {
  RegionSpec s;
  for (std::size_t v = 0; v < c.vertices.size(); ++v) s.vertices.push_back(v);
  for (std::size_t e = 0; e < c.edges.size(); ++e) s.edges.push_back(e);
  return s;
}

RegionSpec whole_region(const SkeletonGraph& g) {
  RegionSpec s;
  for (std::size_t v = 0; v < g.num_vertices; ++v) s.vertices.push_back(v);
  for (std::size_t e = 0; e < g.edges.size(); ++e) s.edges.push_back(e);
  return s;
}

namespace {

// Slot-model stalk: one-forms are weights on the outgoing edge slots summing
// to zero; the first val-1 slots form the basis, the last reads (-1,...,-1).
std::vector<Rat> slot_row(std::size_t slot, std::size_t valence) {
  std::vector<Rat> row(valence - 1, Rat(0));
  if (slot + 1 < valence)
    row[slot] = 1;
  else
    for (auto& x : row) x = -1;
  return row;
}

CellGraph abstract_cells(const std::vector<bool>& at_infinity,
                         const std::vector<std::vector<std::pair<std::size_t, bool>>>& inc,
                         const RegionSpec& s) {
  CellGraph g;
  std::map<std::size_t, std::size_t> vmap;
  std::set<std::size_t> bs(s.boundary.begin(), s.boundary.end());
  // slot index of (edge, role) at its vertex, role false=tail/a, true=head/b
  std::map<std::pair<std::size_t, bool>, std::pair<std::size_t, std::size_t>> slot_of;

  for (std::size_t v : s.vertices) {
    CellGraph::Vertex cv;
    cv.at_infinity = at_infinity[v];
    cv.in_boundary = bs.count(v) > 0;
    std::size_t val = inc[v].size();
    cv.f1 = (cv.at_infinity || cv.in_boundary || val == 0) ? 0 : val - 1;
    vmap[v] = g.vertices.size();
    g.vertices.push_back(cv);

    std::vector<std::pair<std::size_t, bool>> slots = inc[v];
    std::sort(slots.begin(), slots.end());
    for (std::size_t i = 0; i < slots.size(); ++i) slot_of[slots[i]] = {v, i};
  }

  for (std::size_t e : s.edges) {
    CellGraph::CEdge ce;
    auto fill = [&](bool role, CellGraph::End& end) {
      auto it = slot_of.find({e, role});
      invariant(it != slot_of.end(), "region edge end without a slot");
      auto [v, slot] = it->second;
      end.present = true;
      end.vertex = vmap.at(v);
      const auto& cv = g.vertices[end.vertex];
      if (cv.f1 > 0) {
        std::size_t val = inc[v].size();
        end.row = slot_row(slot, val);
        if (role) /* head: value on tail->head is minus the outgoing reading */
          for (auto& x : end.row) x = -x;
      }
      return true;
    };
    fill(false, ce.tail);
    // Free ends have no head slot; the caller encodes them by omitting the
    // (e, true) incidence.
    if (slot_of.count({e, true}))
      fill(true, ce.head);
    else
      ce.head.present = false;
    g.edges.push_back(ce);
  }
  return g;
}

}  // namespace

CellGraph cell_graph(const TropicalCurve& c, const RegionSpec& s) {
  validate_region(c, s);
  CellGraph g;
  auto inc = incidence(c);
  std::set<std::size_t> bs(s.boundary.begin(), s.boundary.end());
  std::map<std::size_t, std::size_t> vmap;
  std::map<std::size_t, SpanTracker> span;  // by ambient vertex id

  for (std::size_t v : s.vertices) {
    CellGraph::Vertex cv;
    cv.at_infinity = c.vertices[v].at_infinity();
    cv.in_boundary = bs.count(v) > 0;
    if (!cv.at_infinity && !cv.in_boundary) {
      SpanTracker tr(c.r);
      std::vector<std::pair<std::size_t, bool>> slots = inc[v];
      std::sort(slots.begin(), slots.end());
      for (auto& [e, at_head] : slots) {
        std::vector<Rat> d(c.r);
        auto out = outgoing_direction(c.edges[e], !at_head);
        for (std::size_t k = 0; k < c.r; ++k) d[k] = Rat(out[k]);
        tr.insert(d);
      }
      cv.f1 = tr.rank();
      span.emplace(v, std::move(tr));
    }
    vmap[v] = g.vertices.size();
    g.vertices.push_back(cv);
  }

  for (std::size_t e : s.edges) {
    CellGraph::CEdge ce;
    const Edge& ed = c.edges[e];
    std::vector<Rat> dir(c.r);
    for (std::size_t k = 0; k < c.r; ++k) dir[k] = Rat(ed.direction[k]);

    ce.tail.present = true;
    ce.tail.vertex = vmap.at(ed.tail);
    if (g.vertices[ce.tail.vertex].f1 > 0) ce.tail.row = span.at(ed.tail).coordinates(dir);

    if (ed.head) {
      ce.head.present = true;
      ce.head.vertex = vmap.at(*ed.head);
      if (g.vertices[ce.head.vertex].f1 > 0) ce.head.row = span.at(*ed.head).coordinates(dir);
    } else {
      ce.head.present = false;
    }
    g.edges.push_back(ce);
  }
  return g;
}

CellGraph cell_graph(const SkeletonGraph& g, const RegionSpec& s) {
  validate_region(g, s);
  std::vector<bool> at_inf(g.num_vertices, false);
  auto inc = skeleton_incidence(g);
  return abstract_cells(at_inf, inc, s);
}

CellGraph cell_graph_abstract(const TropicalCurve& c, const RegionSpec& s) {
  validate_region(c, s);
  std::vector<bool> at_inf(c.vertices.size());
  for (std::size_t v = 0; v < c.vertices.size(); ++v) at_inf[v] = c.vertices[v].at_infinity();
  // Free ends carry no slot, so the incidence here lists only real ends.
  std::vector<std::vector<std::pair<std::size_t, bool>>> inc(c.vertices.size());
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    inc[c.edges[e].tail].emplace_back(e, false);
    if (c.edges[e].head) inc[*c.edges[e].head].emplace_back(e, true);
  }
  return abstract_cells(at_inf, inc, s);
}

void flip_edge_orientation(CellGraph& g, std::size_t edge) {
  invariant(edge < g.edges.size(), "flip: edge out of range");
  auto& e = g.edges[edge];
  std::swap(e.tail, e.head);
  for (auto& x : e.tail.row) x = -x;
  for (auto& x : e.head.row) x = -x;
}

SheafComplex build_complex(const CellGraph& g, int p, bool compact_support) {
  invariant(p == 0 || p == 1, "form degree must be 0 or 1");
  SheafComplex sc;

  // Column blocks for the kept vertices.
  std::vector<std::size_t> offset(g.vertices.size(), SIZE_MAX);
  std::size_t col = 0, zero_cells = 0;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.vertices[v].in_boundary) continue;
    std::size_t dim = (p == 0) ? 1 : g.vertices[v].f1;
    offset[v] = col;
    col += dim;
    sc.cell_dims.push_back(dim);
    ++zero_cells;
  }

  struct Trim {
    std::size_t column;
  };
  // In the ordinary complex every lost end (free, or cut off at the boundary)
  // is replaced by a point just inside the edge.
  std::vector<std::array<std::optional<Trim>, 2>> trims(g.edges.size());
  if (!compact_support) {
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      for (int side = 0; side < 2; ++side) {
        const CellGraph::End& end = side ? g.edges[e].head : g.edges[e].tail;
        bool lost = !end.present || g.vertices[end.vertex].in_boundary;
        if (lost) {
          trims[e][side] = Trim{col};
          col += 1;
          sc.cell_dims.push_back(1);
          ++zero_cells;
        }
      }
    }
  }

  sc.cols = col;
  sc.rows = g.edges.size();
  sc.d.assign(sc.rows, std::vector<Rat>(sc.cols, Rat(0)));

  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (int side = 0; side < 2; ++side) {
      const CellGraph::End& end = side ? g.edges[e].head : g.edges[e].tail;
      Rat sign = side ? Rat(1) : Rat(-1);
      if (!compact_support && trims[e][side]) {
        sc.d[e][trims[e][side]->column] = sign;
        continue;
      }
      if (!end.present) continue;                       // compact: free end vanishes
      if (g.vertices[end.vertex].in_boundary) continue; // compact: cut end vanishes
      std::size_t off = offset[end.vertex];
      if (p == 0) {
        sc.d[e][off] += sign;
      } else {
        for (std::size_t k = 0; k < end.row.size(); ++k) sc.d[e][off + k] += sign * end.row[k];
      }
    }
  }

  sc.core_vertices = zero_cells;
  sc.core_edges = sc.rows;
  return sc;
}

CohomologyTable table_of(const CellGraph& g) {
  CohomologyTable t;
  for (int p = 0; p < 2; ++p) {
    SheafComplex ord = build_complex(g, p, false);
    RankProfile rp = rank_profile(ord.d, ord.rows, ord.cols);
    t.h[p][0] = static_cast<int>(rp.kernel);
    t.h[p][1] = static_cast<int>(rp.cokernel);

    SheafComplex cpt = build_complex(g, p, true);
    RankProfile rc = rank_profile(cpt.d, cpt.rows, cpt.cols);
    t.hc[p][0] = static_cast<int>(rc.kernel);
    t.hc[p][1] = static_cast<int>(rc.cokernel);
  }
  return t;
}

CohomologyTable cohomology_table(const TropicalCurve& c, const RegionSpec& s) {
  return table_of(cell_graph(c, s));
}

CohomologyTable cohomology_table(const SkeletonGraph& g, const RegionSpec& s) {
  return table_of(cell_graph(g, s));
}

CohomologyTable cohomology_table_abstract(const TropicalCurve& c, const RegionSpec& s) {
  return table_of(cell_graph_abstract(c, s));
}

bool pd_check(const CohomologyTable& t) {
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      if (t.h[p][q] != t.hc[1 - p][1 - q]) return false;
  return true;
}

namespace {

EulerReport euler_of(const CellGraph& g) {
  EulerReport r;
  SheafComplex ord = build_complex(g, 0, false);
  RankProfile rp = rank_profile(ord.d, ord.rows, ord.cols);
  r.chi = static_cast<long long>(rp.kernel) - static_cast<long long>(rp.cokernel);
  r.cells = static_cast<long long>(ord.core_vertices) - static_cast<long long>(ord.core_edges);
  r.ok = (r.chi == r.cells);
  return r;
}

}  // namespace

EulerReport euler_check(const TropicalCurve& c, const RegionSpec& s) {
  return euler_of(cell_graph(c, s));
}

EulerReport euler_check(const SkeletonGraph& g, const RegionSpec& s) {
  return euler_of(cell_graph(g, s));
}

RegionSpec preimage_region(const ModificationMap& mod, const RegionSpec& on_target) {
  validate_region(mod.target, on_target);
  RegionSpec out;
  for (std::size_t v : on_target.vertices) out.vertices.push_back(mod.vertex_lift[v]);
  for (std::size_t e : on_target.edges) out.edges.push_back(mod.edge_lift[e]);
  for (std::size_t b : on_target.boundary) out.boundary.push_back(mod.vertex_lift[b]);

  std::set<std::size_t> vs(on_target.vertices.begin(), on_target.vertices.end());
  std::set<std::size_t> bs(on_target.boundary.begin(), on_target.boundary.end());
  for (const auto& ray : mod.added_rays) {
    if (vs.count(ray.base_vertex) && !bs.count(ray.base_vertex)) {
      out.edges.push_back(ray.ray_edge);
      out.vertices.push_back(ray.inf_vertex);
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  std::sort(out.edges.begin(), out.edges.end());
  std::sort(out.boundary.begin(), out.boundary.end());
  validate_region(mod.source, out);
  return out;
}

namespace {

template <typename Inc>
RegionSpec random_region_impl(std::size_t num_vertices, std::size_t num_edges, const Inc& inc,
                              const std::vector<std::size_t>& edge_tail,
                              const std::vector<std::optional<std::size_t>>& edge_head,
                              const std::vector<bool>& at_inf, Rng& rng) {
  invariant(num_edges > 0, "random region needs edges");
  std::set<std::size_t> chosen;
  auto grow = [&](std::size_t seed) {
    std::vector<std::size_t> stack{seed};
    chosen.insert(seed);
    while (!stack.empty()) {
      std::size_t e = stack.back();
      stack.pop_back();
      std::vector<std::size_t> ends{edge_tail[e]};
      if (edge_head[e]) ends.push_back(*edge_head[e]);
      for (std::size_t v : ends)
        for (auto& [ne, at_head] : inc[v]) {
          (void)at_head;
          if (!chosen.count(ne) && rng.chance(2, 3)) {
            chosen.insert(ne);
            stack.push_back(ne);
          }
        }
    }
  };
  grow(rng.below(num_edges));
  if (chosen.size() < num_edges && rng.chance(1, 4)) grow(rng.below(num_edges));

  RegionSpec s;
  std::set<std::size_t> vs;
  for (std::size_t e : chosen) {
    vs.insert(edge_tail[e]);
    if (edge_head[e]) vs.insert(*edge_head[e]);
  }
  for (std::size_t v : vs) {
    bool cut = false;
    for (auto& [e, at_head] : inc[v]) {
      (void)at_head;
      if (!chosen.count(e)) cut = true;
    }
    if (!cut && !at_inf[v] && rng.chance(1, 8)) cut = true;  // puncture
    if (cut) {
      invariant(!at_inf[v], "vertex at infinity cannot be a boundary point");
      s.boundary.push_back(v);
    }
  }
  s.vertices.assign(vs.begin(), vs.end());
  s.edges.assign(chosen.begin(), chosen.end());
  return s;
}

}  // namespace

RegionSpec random_region(const TropicalCurve& c, Rng& rng) {
  auto inc = incidence(c);
  std::vector<std::size_t> tails;
  std::vector<std::optional<std::size_t>> heads;
  std::vector<bool> at_inf;
  for (const auto& e : c.edges) {
    tails.push_back(e.tail);
    heads.push_back(e.head);
  }
  for (const auto& v : c.vertices) at_inf.push_back(v.at_infinity());
  RegionSpec s = random_region_impl(c.vertices.size(), c.edges.size(), inc, tails, heads, at_inf, rng);
  validate_region(c, s);
  return s;
}

RegionSpec random_region(const SkeletonGraph& g, Rng& rng) {
  auto inc = skeleton_incidence(g);
  std::vector<std::size_t> tails;
  std::vector<std::optional<std::size_t>> heads;
  for (const auto& e : g.edges) {
    invariant(e.a != e.b, "random region: subdivide loops first");
    tails.push_back(e.a);
    heads.push_back(e.b);
  }
  std::vector<bool> at_inf(g.num_vertices, false);
  RegionSpec s = random_region_impl(g.num_vertices, g.edges.size(), inc, tails, heads, at_inf, rng);
  validate_region(g, s);
  return s;
}

SimpleRegion make_simple_region(const TropicalCurve& c,
                                const std::vector<std::size_t>& core_vertices,
                                const std::vector<std::size_t>& core_edges,
                                const Rat& cut_param) {
  validate_curve(c);
  require(cut_param > 0 && cut_param < Rat(1, 2), "cut parameter must lie in (0, 1/2)");
  std::set<std::size_t> cv(core_vertices.begin(), core_vertices.end());
  std::set<std::size_t> ce(core_edges.begin(), core_edges.end());
  require(!cv.empty(), "core must contain a vertex");
  for (std::size_t v : cv) require(v < c.vertices.size(), "core vertex out of range");
  for (std::size_t e : ce) require(e < c.edges.size(), "core edge out of range");

  std::size_t free_ends = 0;
  for (std::size_t e : ce) {
    require(cv.count(c.edges[e].tail), "core edge endpoint missing from the core");
    if (c.edges[e].head)
      require(cv.count(*c.edges[e].head), "core edge endpoint missing from the core");
    else
      ++free_ends;
  }

  // The core must be a connected tree.
  {
    std::map<std::size_t, std::size_t> rank;
    for (std::size_t v : cv) rank.emplace(v, rank.size());
    std::vector<std::size_t> parent(rank.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (std::size_t e : ce)
      if (c.edges[e].head) {
        std::size_t a = find(rank.at(c.edges[e].tail)), b = find(rank.at(*c.edges[e].head));
        require(a != b, "core contains a cycle");
        parent[b] = a;
      }
    std::size_t root = find(0);
    for (std::size_t i = 0; i < parent.size(); ++i)
      require(find(i) == root, "core is not connected");
  }

  auto inc = incidence(c);
  for (std::size_t v : cv)
    if (c.vertices[v].at_infinity())
      for (auto& [e, at_head] : inc[v]) {
        (void)at_head;
        require(ce.count(e), "core vertex at infinity with its edge outside the core");
      }

  TropicalCurve x = c;
  std::vector<std::size_t> cut_vertices, stub_edges;
  const std::size_t original_edges = c.edges.size();
  for (std::size_t e = 0; e < original_edges; ++e) {
    if (ce.count(e)) continue;
    const bool tail_core = cv.count(c.edges[e].tail) > 0;
    const bool head_core = c.edges[e].head && cv.count(*c.edges[e].head) > 0;
    if (!tail_core && !head_core) continue;

    if (tail_core && head_core) {
      Rat len = *c.edges[e].length;
      SubdivisionResult s1 = subdivide_at(x, e, cut_param * len);
      x = s1.curve;
      SubdivisionResult s2 =
          subdivide_at(x, s1.high_edge, len * (Rat(1) - 2 * cut_param));
      x = s2.curve;
      cut_vertices.push_back(s1.new_vertex);
      cut_vertices.push_back(s2.new_vertex);
      stub_edges.push_back(e);             // [tail, cut1]
      stub_edges.push_back(s2.high_edge);  // [cut2, head]
    } else if (tail_core) {
      Rat t = c.edges[e].length ? cut_param * *c.edges[e].length : cut_param;
      SubdivisionResult s1 = subdivide_at(x, e, t);
      x = s1.curve;
      cut_vertices.push_back(s1.new_vertex);
      stub_edges.push_back(e);  // [tail, cut]
    } else {
      Rat len = *c.edges[e].length;  // head is a vertex, and the tail is not core
      SubdivisionResult s1 = subdivide_at(x, e, len * (Rat(1) - cut_param));
      x = s1.curve;
      cut_vertices.push_back(s1.new_vertex);
      stub_edges.push_back(s1.high_edge);  // [cut, head]
    }
  }

  SimpleRegion out;
  out.region.vertices.assign(cv.begin(), cv.end());
  out.region.vertices.insert(out.region.vertices.end(), cut_vertices.begin(), cut_vertices.end());
  out.region.edges.assign(ce.begin(), ce.end());
  out.region.edges.insert(out.region.edges.end(), stub_edges.begin(), stub_edges.end());
  out.region.boundary = cut_vertices;
  std::sort(out.region.vertices.begin(), out.region.vertices.end());
  std::sort(out.region.edges.begin(), out.region.edges.end());
  std::sort(out.region.boundary.begin(), out.region.boundary.end());
  out.k = cut_vertices.size() + free_ends;
  validate_region(x, out.region);
  out.ambient = std::move(x);
  return out;
}

}  // namespace trop
