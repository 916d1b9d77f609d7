#include "trop/tropicalize.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace trop {

namespace {

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

std::string idx_str(std::size_t i) {
  std::ostringstream os;
  os << i;
  return os.str();
}

}  // namespace

TropicalCurve tropicalize_direct(const LogDistanceMatrix& m) {
  UltrametricReport rep = validate_ultrametric(m);
  require(rep.ok, "tropicalize: input matrix is not a valid ultrametric log-distance matrix");
  const std::size_t n = m.size();

  TropicalCurve c;
  c.r = n;

  // One coordinate per marked point; the point's own coordinate reads -inf.
  std::vector<std::size_t> leaf_id(n);
  for (std::size_t i = 0; i < n; ++i) {
    ExtendedPoint p;
    p.coords.resize(n);
    for (std::size_t j = 0; j < n; ++j)
      p.coords[j] = (j == i) ? LogValue::neg_inf() : m.at(i, j);
    leaf_id[i] = c.vertices.size();
    c.vertices.push_back(p);
  }

  if (n == 1) {
    Edge e;
    e.tail = leaf_id[0];
    e.head = std::nullopt;
    e.direction = {1};
    e.length = std::nullopt;
    e.weight = 1;
    c.edges.push_back(e);
    c = canonicalize(c);
    validate_curve(c);
    return c;
  }

  // Merge clusters bottom-up at increasing distance. Every pairwise distance
  // is a merge height; each cluster keeps the vertex created when it formed
  // (none for singletons) and the height it formed at.
  std::set<Rat> height_set;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) height_set.insert(m.at(i, j).value());

  Dsu dsu(n);
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};
  std::vector<std::size_t> cluster_vertex(n, SIZE_MAX);  // by root; SIZE_MAX = singleton
  std::vector<Rat> cluster_height(n, Rat(0));

  for (const Rat& h : height_set) {
    // Roots joined by a pair at exactly this distance merge simultaneously.
    std::vector<std::pair<std::size_t, std::size_t>> joins;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (m.at(i, j).value() == h) {
          std::size_t a = dsu.find(i), b = dsu.find(j);
          if (a != b) joins.emplace_back(a, b);
        }
    if (joins.empty()) continue;

    // Group the joins into simultaneous merge events.
    std::map<std::size_t, std::vector<std::size_t>> groups;  // post-merge root -> old roots
    {
      Dsu local(n);
      std::set<std::size_t> involved;
      for (auto& [a, b] : joins) {
        local.unite(a, b);
        involved.insert(a);
        involved.insert(b);
      }
      for (std::size_t root : involved) groups[local.find(root)].push_back(root);
    }

    for (auto& [key, old_roots] : groups) {
      (void)key;
      invariant(old_roots.size() >= 2, "merge event with fewer than two clusters");
      std::vector<std::size_t> pts;
      for (std::size_t root : old_roots)
        pts.insert(pts.end(), members[root].begin(), members[root].end());
      std::sort(pts.begin(), pts.end());

      ExtendedPoint vp;
      vp.coords.resize(n);
      {
        std::vector<bool> inside(n, false);
        for (std::size_t p : pts) inside[p] = true;
        std::size_t rep0 = pts[0];
        for (std::size_t k = 0; k < n; ++k)
          vp.coords[k] = inside[k] ? LogValue(h) : m.at(rep0, k);
      }
      std::size_t vid = c.vertices.size();
      c.vertices.push_back(vp);

      for (std::size_t root : old_roots) {
        if (cluster_vertex[root] == SIZE_MAX) {
          invariant(members[root].size() == 1, "singleton cluster with several points");
          std::size_t pt = members[root][0];
          Edge e;
          e.tail = vid;
          e.head = leaf_id[pt];
          e.direction.assign(n, 0);
          e.direction[pt] = -1;
          e.length = std::nullopt;
          e.weight = 1;
          c.edges.push_back(e);
        } else {
          Edge e;
          e.tail = cluster_vertex[root];
          e.head = vid;
          e.direction.assign(n, 0);
          for (std::size_t p : members[root]) e.direction[p] = 1;
          e.length = h - cluster_height[root];
          invariant(*e.length > 0, "nonpositive distance between merge heights");
          e.weight = 1;
          c.edges.push_back(e);
        }
      }

      std::size_t nr = old_roots[0];
      for (std::size_t i = 1; i < old_roots.size(); ++i) dsu.unite(nr, old_roots[i]);
      nr = dsu.find(nr);
      members[nr] = pts;
      cluster_vertex[nr] = vid;
      cluster_height[nr] = h;
    }
  }

  std::size_t root = dsu.find(0);
  for (std::size_t i = 1; i < n; ++i)
    invariant(dsu.find(i) == root, "clusters did not merge into one tree");
  invariant(cluster_vertex[root] != SIZE_MAX, "missing top cluster vertex");

  Edge top;
  top.tail = cluster_vertex[root];
  top.head = std::nullopt;
  top.direction.assign(n, 1);
  top.length = std::nullopt;
  top.weight = 1;
  c.edges.push_back(top);

  c = canonicalize(c);
  validate_curve(c);
  return c;
}

namespace {

// Recover the log-distance column of point i from its leaf vertex: the unique
// vertex whose only -inf coordinate sits at position i.
std::vector<std::size_t> find_leaves(const TropicalCurve& x) {
  std::vector<std::size_t> leaf(x.r, SIZE_MAX);
  for (std::size_t v = 0; v < x.vertices.size(); ++v) {
    const auto& coords = x.vertices[v].coords;
    std::size_t inf_count = 0, inf_pos = 0;
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (coords[k].is_neg_inf()) {
        ++inf_count;
        inf_pos = k;
      }
    if (inf_count == 1) {
      invariant(leaf[inf_pos] == SIZE_MAX, "two leaves for the same marked point");
      leaf[inf_pos] = v;
    } else {
      invariant(inf_count == 0, "vertex at infinity in several coordinates");
    }
  }
  for (std::size_t i = 0; i < x.r; ++i)
    invariant(leaf[i] != SIZE_MAX, "no leaf vertex for marked point " + idx_str(i));
  return leaf;
}

}  // namespace

Rat eval_P(const TropicalCurve& x, const std::vector<Rat>& b_column, const ExtendedPoint& z) {
  require(b_column.size() == x.r, "eval: column size does not match the curve's coordinate count");
  require(z.coords.size() == x.r, "eval: point dimension does not match the curve");

  Location loc = locate_point(x, z);
  require(loc.kind != Location::Kind::Absent, "eval: point does not lie on the curve");

  // The column must extend the matrix the curve was built from: the three
  // log-distances among {i, j, b} must keep the two largest equal.
  std::vector<std::size_t> leaf = find_leaves(x);
  auto dist = [&](std::size_t i, std::size_t j) -> Rat {
    const LogValue& lv = x.vertices[leaf[i]].coords[j];
    invariant(lv.is_finite(), "leaf coordinate unexpectedly infinite");
    return lv.value();
  };
  for (std::size_t i = 0; i < x.r; ++i)
    for (std::size_t j = i + 1; j < x.r; ++j) {
      Rat a = dist(i, j), bi = b_column[i], bj = b_column[j];
      Rat top = std::max(a, std::max(bi, bj));
      int at_top = (a == top) + (bi == top) + (bj == top);
      require(at_top >= 2, "eval: column does not extend the matrix ultrametrically");
    }

  // Reading through a coordinate where the minimum is attained.
  Rat result(0);
  bool have = false;
  Rat zmin(0);
  bool zmin_set = false;
  for (std::size_t i = 0; i < x.r; ++i) {
    const LogValue& zi = z.coords[i];
    bool is_min;
    if (zi.is_neg_inf()) {
      is_min = true;
    } else {
      is_min = true;
      for (std::size_t j = 0; j < x.r && is_min; ++j)
        if (z.coords[j] < zi) is_min = false;
    }
    if (!is_min) continue;
    Rat val = zi.is_neg_inf() ? b_column[i] : std::max(zi.value(), b_column[i]);
    if (!have) {
      result = val;
      have = true;
    } else {
      invariant(val == result, "eval: readings through minimizing coordinates disagree");
    }
    if (zi.is_finite() && (!zmin_set || zi.value() < zmin)) {
      zmin = zi.value();
      zmin_set = true;
    }
  }
  invariant(have, "eval: no minimizing coordinate");

  // Cross-check: through any coordinate where max(z_j, col_j) is attained by
  // exactly one of the two operands, the same value must come out.
  for (std::size_t j = 0; j < x.r; ++j) {
    const LogValue& zj = z.coords[j];
    if (zj.is_neg_inf()) {
      invariant(b_column[j] == result, "eval: reading at a leaf coordinate disagrees");
      continue;
    }
    if (zj.value() != b_column[j]) {
      Rat val = std::max(zj.value(), b_column[j]);
      invariant(val == result, "eval: reading through a strict maximum disagrees");
    }
  }
  return result;
}

ModificationMap modify(const TropicalCurve& x, const PiecewiseAffineFunction& p) {
  validate_curve(x);
  bool has_finite = false;
  for (const auto& v : x.vertices)
    if (!v.at_infinity()) has_finite = true;
  require(has_finite, "modify: curve has no finite vertex to anchor the lift");
  for (const auto& e : x.edges)
    require(!x.vertices[e.tail].at_infinity(),
            "modify: edges without a finite endpoint are not supported");

  // Function sanity: a value for every finite vertex, a slope for every edge,
  // affine agreement along bounded edges, and no climb toward infinity.
  for (std::size_t v = 0; v < x.vertices.size(); ++v) {
    if (x.vertices[v].at_infinity()) {
      require(!p.values.count(v), "modify: value assigned to a vertex at infinity");
    } else {
      require(p.values.count(v), "modify: missing value at vertex " + idx_str(v));
    }
  }
  require(p.values.size() <= x.vertices.size(), "modify: value at unknown vertex");
  for (std::size_t e = 0; e < x.edges.size(); ++e)
    require(p.slopes.count(e), "modify: missing slope on edge " + idx_str(e));
  require(p.slopes.size() == x.edges.size(), "modify: slope on unknown edge");
  for (std::size_t ei = 0; ei < x.edges.size(); ++ei) {
    const Edge& e = x.edges[ei];
    long long s = p.slopes.at(ei);
    if (e.bounded() && !x.vertices[*e.head].at_infinity()) {
      Rat lhs = p.values.at(*e.head) - p.values.at(e.tail);
      require(lhs == Rat(s) * *e.length, "modify: values and slope disagree on edge " + idx_str(ei));
    } else if (e.head && x.vertices[*e.head].at_infinity()) {
      require(s <= 0, "modify: positive slope toward a vertex at infinity");
    }
  }

  ModificationMap out;
  out.target = x;

  TropicalCurve& s = out.source;
  s.r = x.r + 1;

  out.vertex_lift.resize(x.vertices.size());
  for (std::size_t v = 0; v < x.vertices.size(); ++v) {
    ExtendedPoint q;
    q.coords = x.vertices[v].coords;
    if (!x.vertices[v].at_infinity()) {
      q.coords.push_back(LogValue(p.values.at(v)));
    } else {
      // Valence one: the unique incident edge decides the limit value.
      std::size_t ei = SIZE_MAX;
      for (std::size_t k = 0; k < x.edges.size(); ++k)
        if (x.edges[k].head && *x.edges[k].head == v) ei = k;
      invariant(ei != SIZE_MAX, "vertex at infinity with no incident edge");
      long long sl = p.slopes.at(ei);
      if (sl < 0)
        q.coords.push_back(LogValue::neg_inf());
      else
        q.coords.push_back(LogValue(p.values.at(x.edges[ei].tail)));
    }
    out.vertex_lift[v] = s.vertices.size();
    s.vertices.push_back(q);
  }

  out.edge_lift.resize(x.edges.size());
  for (std::size_t ei = 0; ei < x.edges.size(); ++ei) {
    const Edge& e = x.edges[ei];
    Edge le;
    le.tail = out.vertex_lift[e.tail];
    le.head = e.head ? std::optional<std::size_t>(out.vertex_lift[*e.head]) : std::nullopt;
    le.direction = e.direction;
    le.direction.push_back(p.slopes.at(ei));
    le.length = e.length;
    le.weight = e.weight;
    out.edge_lift[ei] = s.edges.size();
    s.edges.push_back(le);
  }

  // Rebalance: the lift can only bend in the new coordinate, and only convexly
  // (excess pointing up); each bend is absorbed by a downward ray.
  for (std::size_t v = 0; v < x.vertices.size(); ++v) {
    if (x.vertices[v].at_infinity()) continue;
    std::vector<long long> defect(s.r, 0);
    for (std::size_t ei = 0; ei < s.edges.size(); ++ei) {
      const Edge& le = s.edges[ei];
      std::size_t lv = out.vertex_lift[v];
      if (le.tail == lv) {
        for (std::size_t k = 0; k < s.r; ++k) defect[k] += le.weight * le.direction[k];
      }
      if (le.head && *le.head == lv) {
        for (std::size_t k = 0; k < s.r; ++k) defect[k] -= le.weight * le.direction[k];
      }
    }
    for (std::size_t k = 0; k + 1 < s.r; ++k)
      require(defect[k] == 0,
              "modify: defect at vertex " + idx_str(v) + " is not confined to the new coordinate");
    long long c = defect[s.r - 1];
    require(c >= 0, "modify: defect at vertex " + idx_str(v) + " would need an upward ray");
    if (c == 0) continue;

    ExtendedPoint q;
    q.coords = x.vertices[v].coords;
    q.coords.push_back(LogValue::neg_inf());
    std::size_t iv = s.vertices.size();
    s.vertices.push_back(q);

    Edge ray;
    ray.tail = out.vertex_lift[v];
    ray.head = iv;
    ray.direction.assign(s.r, 0);
    ray.direction[s.r - 1] = -1;
    ray.length = std::nullopt;
    ray.weight = c;
    std::size_t re = s.edges.size();
    s.edges.push_back(ray);

    out.added_rays.push_back(ModificationMap::Ray{v, re, iv, c});
  }

  validate_curve(s);
  BalancingReport br = check_balancing(s);
  invariant(br.balanced, "modify: lifted curve is not balanced");
  return out;
}

namespace {

Rat paf_at(const TropicalCurve& x, const std::vector<Rat>& b_column, std::size_t vertex) {
  return eval_P(x, b_column, x.vertices[vertex]);
}

// Slope of the distance function along an edge, from exact samples. Bounded
// edges are checked affine through their midpoint; unbounded ones through two
// unit steps.
long long derive_slope(const TropicalCurve& x, const std::vector<Rat>& b_column, std::size_t ei) {
  const Edge& e = x.edges[ei];
  invariant(!x.vertices[e.tail].at_infinity(), "slope derivation needs a finite tail");
  Rat at_tail = paf_at(x, b_column, e.tail);
  if (e.length) {
    Rat at_head = paf_at(x, b_column, *e.head);
    Rat slope = (at_head - at_tail) / *e.length;
    invariant(denominator(slope) == 1, "distance function has non-integer slope");
    Rat mid_val = eval_P(x, b_column, point_along(x, ei, *e.length / 2));
    invariant(mid_val == at_tail + slope * (*e.length / 2),
              "distance function bends inside an edge");
    return static_cast<long long>(numerator(slope));
  }
  Rat v1 = eval_P(x, b_column, point_along(x, ei, Rat(1)));
  Rat v2 = eval_P(x, b_column, point_along(x, ei, Rat(2)));
  Rat s1 = v1 - at_tail;
  Rat s2 = v2 - v1;
  invariant(s1 == s2, "distance function bends along an unbounded edge");
  invariant(denominator(s1) == 1, "distance function has non-integer slope");
  return static_cast<long long>(numerator(s1));
}

}  // namespace

IncrementalTrace tropicalize_incremental_trace(const LogDistanceMatrix& m) {
  UltrametricReport rep = validate_ultrametric(m);
  require(rep.ok, "tropicalize: input matrix is not a valid ultrametric log-distance matrix");
  const std::size_t n = m.size();

  IncrementalTrace trace;
  TropicalCurve x;
  x.r = 1;
  {
    ExtendedPoint p;
    p.coords = {LogValue::neg_inf()};
    x.vertices.push_back(p);
    Edge e;
    e.tail = 0;
    e.head = std::nullopt;
    e.direction = {1};
    e.length = std::nullopt;
    e.weight = 1;
    x.edges.push_back(e);
  }
  validate_curve(x);

  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Rat> col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = m.at(i, k).value();
    ExtendedPoint zs;
    zs.coords.resize(k);
    for (std::size_t i = 0; i < k; ++i) zs.coords[i] = LogValue(col[i]);

    Location loc = locate_point(x, zs);
    std::size_t zv;
    if (loc.kind == Location::Kind::Interior) {
      SubdivisionResult sub = subdivide_at_point(x, loc.index, zs);
      x = sub.curve;
      zv = sub.new_vertex;
    } else {
      invariant(loc.kind == Location::Kind::Vertex,
                "new point's projection misses the previous curve");
      zv = loc.index;
    }

    PiecewiseAffineFunction p;
    for (std::size_t v = 0; v < x.vertices.size(); ++v)
      if (!x.vertices[v].at_infinity()) p.values[v] = paf_at(x, col, v);
    for (std::size_t ei = 0; ei < x.edges.size(); ++ei) p.slopes[ei] = derive_slope(x, col, ei);

    ModificationMap step = modify(x, p);
    invariant(step.added_rays.size() == 1, "adding one point must create exactly one ray");
    invariant(step.added_rays[0].base_vertex == zv, "new ray sits at the wrong vertex");
    invariant(step.added_rays[0].weight == 1, "new ray must have weight one");

    x = step.source;
    trace.steps.push_back(std::move(step));
  }

  BalancingReport br = check_balancing(x);
  invariant(br.balanced, "incremental tropicalization lost balancing");
  trace.curve = canonicalize(x);
  validate_curve(trace.curve);
  return trace;
}

TropicalCurve tropicalize_incremental(const LogDistanceMatrix& m) {
  return tropicalize_incremental_trace(m).curve;
}

TropicalCurve project_transition(const TropicalCurve& x, const std::vector<std::size_t>& keep) {
  validate_curve(x);
  require(!keep.empty(), "project: must keep at least one coordinate");
  for (std::size_t i = 0; i + 1 < keep.size(); ++i)
    require(keep[i] < keep[i + 1], "project: kept coordinates must be strictly increasing");
  require(keep.back() < x.r, "project: kept coordinate out of range");

  auto restrict_pt = [&](const ExtendedPoint& p) {
    ExtendedPoint q;
    q.coords.reserve(keep.size());
    for (std::size_t k : keep) q.coords.push_back(p.coords[k]);
    return q;
  };
  auto restrict_dir = [&](const std::vector<long long>& d) {
    std::vector<long long> q;
    q.reserve(keep.size());
    for (std::size_t k : keep) q.push_back(d[k]);
    return q;
  };

  // Cells whose direction dies get contracted.
  Dsu dsu(x.vertices.size());
  for (const Edge& e : x.edges) {
    std::vector<long long> d = restrict_dir(e.direction);
    bool zero = std::all_of(d.begin(), d.end(), [](long long v) { return v == 0; });
    if (zero && e.head) dsu.unite(e.tail, *e.head);
  }

  TropicalCurve out;
  out.r = keep.size();
  std::vector<std::size_t> image(x.vertices.size(), SIZE_MAX);
  for (std::size_t v = 0; v < x.vertices.size(); ++v) {
    std::size_t root = dsu.find(v);
    ExtendedPoint q = restrict_pt(x.vertices[v]);
    if (image[root] == SIZE_MAX) {
      image[root] = out.vertices.size();
      out.vertices.push_back(q);
    } else {
      invariant(out.vertices[image[root]] == q, "project: contracted cell is not constant");
    }
    image[v] = image[root];
  }

  for (const Edge& e : x.edges) {
    std::vector<long long> d = restrict_dir(e.direction);
    bool zero = std::all_of(d.begin(), d.end(), [](long long v) { return v == 0; });
    if (zero) continue;  // contracted (free rays flattening to a point just vanish)

    BigInt g(0);
    for (long long v : d) g = boost::multiprecision::gcd(g, BigInt(v < 0 ? -v : v));
    invariant(g > 0, "project: zero content on a surviving direction");
    Edge pe;
    for (long long v : d) pe.direction.push_back(v / static_cast<long long>(g));
    pe.tail = image[e.tail];
    pe.head = e.head ? std::optional<std::size_t>(image[*e.head]) : std::nullopt;
    pe.length = e.length ? std::optional<Rat>(*e.length * Rat(g)) : std::nullopt;
    pe.weight = e.weight;

    // A free ray can flatten onto a downward ray; its far end then closes up
    // at a fresh vertex at infinity.
    bool has_positive = std::any_of(pe.direction.begin(), pe.direction.end(),
                                    [](long long v) { return v > 0; });
    if (!pe.head && !has_positive) {
      ExtendedPoint lim;
      const ExtendedPoint& base = out.vertices[pe.tail];
      for (std::size_t k = 0; k < out.r; ++k)
        lim.coords.push_back(pe.direction[k] < 0 ? LogValue::neg_inf() : base.coords[k]);
      pe.head = out.vertices.size();
      out.vertices.push_back(lim);
    }

    // Keep a finite tail whenever there is one.
    if (pe.head && out.vertices[pe.tail].at_infinity() && !out.vertices[*pe.head].at_infinity()) {
      std::swap(pe.tail, *pe.head);
      for (auto& v : pe.direction) v = -v;
    }
    out.edges.push_back(pe);
  }

  out = canonicalize(out);
  validate_curve(out);
  return out;
}

Restriction restrict_max_affine(const TropicalCurve& x, const std::vector<AffineTerm>& terms) {
  validate_curve(x);
  require(!terms.empty(), "restriction: empty term list");
  for (const auto& t : terms)
    require(t.m.size() == x.r, "restriction: term dimension does not match the curve");
  for (const Edge& e : x.edges)
    require(!x.vertices[e.tail].at_infinity(),
            "restriction: edges without a finite endpoint are not supported");

  // Value at a finite point.
  auto value_at = [&](const std::vector<Rat>& z) {
    Rat best(0);
    bool have = false;
    for (const auto& t : terms) {
      Rat v = t.c;
      for (std::size_t k = 0; k < x.r; ++k) v += Rat(t.m[k]) * z[k];
      if (!have || v > best) {
        best = v;
        have = true;
      }
    }
    return best;
  };

  TropicalCurve work = x;

  // Subdivide each edge at the kinks of the restricted envelope. Edge ids
  // shift under subdivision, so edges are processed by walking the list; a
  // subdivision re-examines the lower piece (same id, now kink-free interior)
  // and appends the upper piece for a later pass.
  std::size_t ei = 0;
  while (ei < work.edges.size()) {
    const Edge e = work.edges[ei];
    const ExtendedPoint& tail = work.vertices[e.tail];
    std::vector<Rat> base(x.r);
    bool tail_finite = true;
    for (std::size_t k = 0; k < x.r; ++k) {
      if (!tail.coords[k].is_finite()) tail_finite = false;
    }
    invariant(tail_finite, "restriction: infinite tail after validation");
    for (std::size_t k = 0; k < x.r; ++k) base[k] = tail.coords[k].value();

    // Per-term affine data in the edge parameter: A + t*B.
    std::vector<std::pair<Rat, Rat>> lines;
    for (const auto& t : terms) {
      Rat a = t.c, b(0);
      for (std::size_t k = 0; k < x.r; ++k) {
        a += Rat(t.m[k]) * base[k];
        b += Rat(t.m[k]) * Rat(e.direction[k]);
      }
      lines.emplace_back(a, b);
    }

    std::optional<Rat> hi;
    if (e.length) hi = *e.length;

    std::set<Rat> candidates;
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        if (lines[i].second == lines[j].second) continue;
        Rat t = (lines[j].first - lines[i].first) / (lines[i].second - lines[j].second);
        if (t > 0 && (!hi || t < *hi)) candidates.insert(t);
      }

    // Envelope slope on the open interval right of t, sampled at a midpoint.
    auto slope_after = [&](const Rat& t, const std::optional<Rat>& next) {
      Rat mid = next ? Rat((t + *next) / 2) : Rat(t + 1);
      Rat best_val(0), best_slope(0);
      bool have = false;
      for (auto& [a, b] : lines) {
        Rat v = a + mid * b;
        if (!have || v > best_val || (v == best_val && b > best_slope)) {
          best_val = v;
          best_slope = b;
          have = true;
        }
      }
      return best_slope;
    };

    std::vector<Rat> ts(candidates.begin(), candidates.end());
    Rat first_kink(0);
    bool found = false;
    for (std::size_t i = 0; i < ts.size() && !found; ++i) {
      Rat before = slope_after(i == 0 ? Rat(0) : ts[i - 1], std::optional<Rat>(ts[i]));
      std::optional<Rat> next = (i + 1 < ts.size()) ? std::optional<Rat>(ts[i + 1]) : hi;
      Rat after = slope_after(ts[i], next);
      if (before != after) {
        first_kink = ts[i];
        found = true;
      }
    }

    if (found) {
      work = subdivide_at(work, ei, first_kink).curve;
      continue;  // re-run the same id: the lower piece may hold further kinks
    }
    ++ei;
  }

  Restriction out;
  out.paf.values.clear();
  for (std::size_t v = 0; v < work.vertices.size(); ++v) {
    if (work.vertices[v].at_infinity()) continue;
    std::vector<Rat> z(x.r);
    for (std::size_t k = 0; k < x.r; ++k) z[k] = work.vertices[v].coords[k].value();
    out.paf.values[v] = value_at(z);
  }
  for (std::size_t e2 = 0; e2 < work.edges.size(); ++e2) {
    const Edge& e = work.edges[e2];
    std::vector<Rat> base(x.r), probe(x.r);
    for (std::size_t k = 0; k < x.r; ++k) base[k] = work.vertices[e.tail].coords[k].value();
    Rat step = e.length ? *e.length / 2 : Rat(1);
    for (std::size_t k = 0; k < x.r; ++k) probe[k] = base[k] + step * Rat(e.direction[k]);
    Rat slope = (value_at(probe) - value_at(base)) / step;
    invariant(denominator(slope) == 1, "restriction: non-integer slope after subdivision");
    long long s = static_cast<long long>(numerator(slope));
    if (e.head && work.vertices[*e.head].at_infinity())
      require(s <= 0, "restriction: function climbs toward a vertex at infinity");
    out.paf.slopes[e2] = s;
  }
  out.curve = work;
  return out;
}

}  // namespace trop
