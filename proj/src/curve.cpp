#include "trop/curve.hpp"

#include "trop/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace trop {

namespace {

bool vertex_finite(const TropicalCurve& c, std::size_t v) {
  return !c.vertices[v].at_infinity();
}

long long content(const std::vector<long long>& d) {
  long long g = 0;
  for (long long x : d) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

std::vector<long long> negate(std::vector<long long> d) {
  for (auto& x : d) x = -x;
  return d;
}

std::size_t positive_entries(const std::vector<long long>& d) {
  std::size_t n = 0;
  for (long long x : d)
    if (x > 0) ++n;
  return n;
}

}  // namespace

EdgeKind edge_kind(const TropicalCurve& c, const Edge& e) {
  bool tail_inf = c.vertices[e.tail].at_infinity();
  if (e.free_end()) return tail_inf ? EdgeKind::Line : EdgeKind::FreeRay;
  if (tail_inf) throw InvariantError("edge with infinite tail and a head vertex");
  return c.vertices[*e.head].at_infinity() ? EdgeKind::ToInfinity : EdgeKind::Bounded;
}

std::vector<long long> outgoing_direction(const Edge& e, bool at_tail) {
  return at_tail ? e.direction : negate(e.direction);
}

std::vector<std::vector<std::pair<std::size_t, bool>>> incidence(const TropicalCurve& c) {
  std::vector<std::vector<std::pair<std::size_t, bool>>> inc(c.vertices.size());
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    inc[c.edges[i].tail].push_back({i, true});
    if (c.edges[i].head) inc[*c.edges[i].head].push_back({i, false});
  }
  return inc;
}

namespace {

// Finite-coordinate parameterization of an edge: points are base + t*dir.
struct EdgeParam {
  std::vector<Rat> base;
  std::vector<Rat> dir;
  bool full_line = false;   // t ranges over all of Q
  std::optional<Rat> hi;    // upper bound when bounded; lower bound is 0
};

EdgeParam edge_param(const TropicalCurve& c, const Edge& e) {
  EdgeParam p;
  const std::size_t r = c.r;
  p.dir.reserve(r);
  for (long long x : e.direction) p.dir.push_back(Rat(x));
  if (c.vertices[e.tail].at_infinity()) {
    // doubly unbounded line: anchor along the finite coordinates
    p.full_line = true;
    p.base.reserve(r);
    for (std::size_t k = 0; k < r; ++k)
      p.base.push_back(e.direction[k] == 0 ? c.vertices[e.tail].coords[k].value() : Rat(0));
    return p;
  }
  p.base.reserve(r);
  for (const auto& lv : c.vertices[e.tail].coords) p.base.push_back(lv.value());
  if (e.length) p.hi = *e.length;
  return p;
}

// Vertex id sitting at parameter t of the edge's closure, if any.
std::optional<std::size_t> endpoint_at_param(const Edge& e, const EdgeParam& p, const Rat& t) {
  if (!p.full_line && t == 0) return e.tail;
  if (p.hi && t == *p.hi && e.head) return e.head;
  return std::nullopt;
}

bool param_in_closure(const EdgeParam& p, const Rat& t) {
  if (p.full_line) return true;
  if (t < 0) return false;
  if (p.hi && t > *p.hi) return false;
  return true;
}

bool param_strictly_interior(const EdgeParam& p, const Rat& t) {
  if (p.full_line) return true;
  if (t <= 0) return false;
  if (p.hi && t >= *p.hi) return false;
  return true;
}

}  // namespace

namespace {

void edge_errors(const TropicalCurve& c, std::size_t idx, std::vector<std::string>& errs) {
  const Edge& e = c.edges[idx];
  const std::string tag = "edge " + std::to_string(idx) + ": ";
  if (e.tail >= c.vertices.size()) {
    errs.push_back(tag + "tail id out of range");
    return;
  }
  if (e.head && *e.head >= c.vertices.size()) {
    errs.push_back(tag + "head id out of range");
    return;
  }
  if (e.direction.size() != c.r) {
    errs.push_back(tag + "direction has wrong dimension");
    return;
  }
  long long g = content(e.direction);
  if (g == 0) {
    errs.push_back(tag + "direction is zero");
    return;
  }
  if (g != 1) errs.push_back(tag + "direction is not primitive");
  if (e.weight < 1) errs.push_back(tag + "weight must be a positive integer");
  if (e.length && *e.length <= 0) errs.push_back(tag + "length must be positive");

  const ExtendedPoint& tail = c.vertices[e.tail];
  bool tail_inf = tail.at_infinity();

  if (tail_inf) {
    // only the doubly unbounded line may have an infinite tail
    if (e.head) {
      errs.push_back(tag + "a vertex at infinity can only be the tail of a free end");
      return;
    }
    if (e.length) errs.push_back(tag + "doubly unbounded edge must have infinite length");
    std::size_t pos = 0;
    for (std::size_t k = 0; k < c.r; ++k) {
      if (e.direction[k] < 0)
        errs.push_back(tag + "direction must be nonnegative towards the infinite tail");
      bool coord_inf = tail.coords[k].is_neg_inf();
      if ((e.direction[k] > 0) != coord_inf)
        errs.push_back(tag + "direction positive exactly at the tail's -inf coordinates");
      if (e.direction[k] > 0) ++pos;
    }
    if (pos > 1)
      errs.push_back(tag +
                     "doubly unbounded edge with more than one moving coordinate is not "
                     "representable (anchor would be lost)");
    return;
  }

  if (e.free_end()) {
    if (e.length) errs.push_back(tag + "free end must have infinite length");
    if (positive_entries(e.direction) == 0)
      errs.push_back(tag + "free end direction needs a positive entry");
    return;
  }

  const ExtendedPoint& head = c.vertices[*e.head];
  if (head.at_infinity()) {
    if (e.length) errs.push_back(tag + "edge to a vertex at infinity must have infinite length");
    for (std::size_t k = 0; k < c.r; ++k) {
      if (e.direction[k] > 0) {
        errs.push_back(tag + "direction towards a vertex at infinity cannot be positive");
        break;
      }
    }
    for (std::size_t k = 0; k < c.r; ++k) {
      bool coord_inf = head.coords[k].is_neg_inf();
      if ((e.direction[k] < 0) != coord_inf) {
        errs.push_back(tag + "head -inf coordinates must match negative direction entries");
        break;
      }
      if (e.direction[k] == 0 && head.coords[k] != tail.coords[k]) {
        errs.push_back(tag + "head must agree with tail on constant coordinates");
        break;
      }
    }
    return;
  }

  // bounded edge between finite vertices
  if (!e.length) {
    errs.push_back(tag + "edge between finite vertices must have finite length");
    return;
  }
  for (std::size_t k = 0; k < c.r; ++k) {
    Rat expect = tail.coords[k].value() + *e.length * Rat(e.direction[k]);
    if (head.coords[k].value() != expect) {
      errs.push_back(tag + "head coordinates differ from tail + length * direction");
      break;
    }
  }
}

void geometry_errors(const TropicalCurve& c, std::vector<std::string>& errs) {
  std::vector<EdgeParam> params;
  params.reserve(c.edges.size());
  for (const Edge& e : c.edges) params.push_back(edge_param(c, e));

  // no vertex in the relative interior of an edge
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    if (c.vertices[v].at_infinity()) continue;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      const Edge& e = c.edges[i];
      if (e.tail == v || (e.head && *e.head == v)) continue;
      const EdgeParam& p = params[i];
      std::optional<Rat> t;
      bool on = true;
      for (std::size_t k = 0; k < c.r && on; ++k) {
        Rat want = c.vertices[v].coords[k].value() - p.base[k];
        if (p.dir[k] == 0) {
          if (want != 0) on = false;
        } else {
          Rat tk = want / p.dir[k];
          if (t && *t != tk)
            on = false;
          else
            t = tk;
        }
      }
      if (on && t && param_in_closure(p, *t))
        errs.push_back("vertex " + std::to_string(v) + " lies inside edge " + std::to_string(i));
    }
  }

  // pairwise: closures may only meet in a shared endpoint vertex
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    for (std::size_t j = i + 1; j < c.edges.size(); ++j) {
      const EdgeParam &a = params[i], &b = params[j];
      const std::string tag =
          "edges " + std::to_string(i) + " and " + std::to_string(j) + " ";
      bool parallel = c.edges[i].direction == c.edges[j].direction ||
                      c.edges[i].direction == negate(c.edges[j].direction);
      if (parallel) {
        bool same_sign = c.edges[i].direction == c.edges[j].direction;
        // offset must be a rational multiple of the direction to share a line
        std::optional<Rat> off;
        bool same_line = true;
        for (std::size_t k = 0; k < c.r && same_line; ++k) {
          Rat w = b.base[k] - a.base[k];
          if (a.dir[k] == 0) {
            if (w != 0) same_line = false;
          } else {
            Rat ck = w / a.dir[k];
            if (off && *off != ck)
              same_line = false;
            else
              off = ck;
          }
        }
        if (!same_line) continue;
        Rat cshift = off.value_or(Rat(0));
        // map b's parameter interval into a's parameter
        // t_a = cshift + (same_sign ? t_b : -t_b)
        // intervals: a: [0, a.hi] (or everything), b mapped accordingly
        struct Iv {
          bool lo_inf, hi_inf;
          Rat lo, hi;
        };
        auto a_iv = Iv{a.full_line, a.full_line || !a.hi, Rat(0), a.hi ? *a.hi : Rat(0)};
        Iv b_iv;
        if (b.full_line)
          b_iv = Iv{true, true, Rat(0), Rat(0)};
        else if (same_sign)
          b_iv = Iv{false, !b.hi, cshift, b.hi ? cshift + *b.hi : Rat(0)};
        else
          b_iv = Iv{!b.hi, false, b.hi ? cshift - *b.hi : Rat(0), cshift};
        bool lo_inf = a_iv.lo_inf && b_iv.lo_inf;
        bool hi_inf = a_iv.hi_inf && b_iv.hi_inf;
        Rat lo, hi;
        if (!lo_inf) {
          if (a_iv.lo_inf)
            lo = b_iv.lo;
          else if (b_iv.lo_inf)
            lo = a_iv.lo;
          else
            lo = std::max(a_iv.lo, b_iv.lo);
        }
        if (!hi_inf) {
          if (a_iv.hi_inf)
            hi = b_iv.hi;
          else if (b_iv.hi_inf)
            hi = a_iv.hi;
          else
            hi = std::min(a_iv.hi, b_iv.hi);
        }
        if (!lo_inf && !hi_inf && lo > hi) continue;  // disjoint
        if (lo_inf || hi_inf || lo < hi) {
          errs.push_back(tag + "overlap along a common line");
          continue;
        }
        // single touching point at parameter lo of a
        Rat ta = lo;
        Rat tb = same_sign ? ta - cshift : cshift - ta;
        auto va = endpoint_at_param(c.edges[i], a, ta);
        auto vb = endpoint_at_param(c.edges[j], b, tb);
        if (!(va && vb && *va == *vb))
          errs.push_back(tag + "touch at a point that is not a shared vertex");
        continue;
      }

      // independent directions: solve base_a + s*dir_a = base_b + t*dir_b
      std::optional<std::pair<std::size_t, std::size_t>> rows;
      for (std::size_t k = 0; k < c.r && !rows; ++k)
        for (std::size_t l = k + 1; l < c.r && !rows; ++l)
          if (a.dir[k] * b.dir[l] != a.dir[l] * b.dir[k]) rows = {k, l};
      invariant(rows.has_value(), "independent directions with no invertible 2x2 block");
      auto [k, l] = *rows;
      Rat det = a.dir[k] * (-b.dir[l]) - (-b.dir[k]) * a.dir[l];
      Rat wk = b.base[k] - a.base[k];
      Rat wl = b.base[l] - a.base[l];
      Rat s = (wk * (-b.dir[l]) - (-b.dir[k]) * wl) / det;
      Rat t = (a.dir[k] * wl - wk * a.dir[l]) / det;
      bool consistent = true;
      for (std::size_t m = 0; m < c.r && consistent; ++m)
        if (a.base[m] + s * a.dir[m] != b.base[m] + t * b.dir[m]) consistent = false;
      if (!consistent) continue;
      if (!param_in_closure(a, s) || !param_in_closure(b, t)) continue;
      auto va = endpoint_at_param(c.edges[i], a, s);
      auto vb = endpoint_at_param(c.edges[j], b, t);
      if (!(va && vb && *va == *vb))
        errs.push_back(tag + "cross at a point that is not a shared vertex");
    }
  }
}

}  // namespace

std::vector<std::string> curve_structure_errors(const TropicalCurve& c, bool check_geometry) {
  std::vector<std::string> errs;
  if (c.r < 1) errs.push_back("ambient dimension r must be at least 1");
  if (c.vertices.empty()) errs.push_back("curve has no vertices");
  if (c.edges.empty()) errs.push_back("curve has no edges");
  for (std::size_t v = 0; v < c.vertices.size(); ++v)
    if (c.vertices[v].coords.size() != c.r)
      errs.push_back("vertex " + std::to_string(v) + " has wrong coordinate count");
  if (!errs.empty()) return errs;

  for (std::size_t v = 0; v < c.vertices.size(); ++v)
    for (std::size_t w = v + 1; w < c.vertices.size(); ++w)
      if (c.vertices[v] == c.vertices[w])
        errs.push_back("vertices " + std::to_string(v) + " and " + std::to_string(w) +
                       " coincide");

  for (std::size_t i = 0; i < c.edges.size(); ++i) edge_errors(c, i, errs);
  if (!errs.empty()) return errs;

  auto inc = incidence(c);
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    if (inc[v].empty()) errs.push_back("vertex " + std::to_string(v) + " is isolated");
    if (c.vertices[v].at_infinity() && inc[v].size() != 1)
      errs.push_back("vertex at infinity " + std::to_string(v) + " must have valence 1");
  }

  // connectivity over edge endpoints
  std::vector<std::size_t> parent(c.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : c.edges)
    if (e.head) parent[find(e.tail)] = find(*e.head);
  for (std::size_t v = 1; v < c.vertices.size(); ++v)
    if (find(v) != find(0)) {
      errs.push_back("curve is not connected");
      break;
    }

  if (check_geometry && errs.empty()) geometry_errors(c, errs);
  return errs;
}

void validate_curve(const TropicalCurve& c, bool check_geometry) {
  auto errs = curve_structure_errors(c, check_geometry);
  if (!errs.empty()) {
    std::string msg = "invalid curve:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw ValidationError(msg);
  }
}

BalancingReport check_balancing(const TropicalCurve& c) {
  BalancingReport rep;
  auto inc = incidence(c);
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    if (c.vertices[v].at_infinity()) continue;  // exempt
    std::vector<long long> sum(c.r, 0);
    for (auto [ei, at_tail] : inc[v]) {
      auto out = outgoing_direction(c.edges[ei], at_tail);
      for (std::size_t k = 0; k < c.r; ++k) sum[k] += c.edges[ei].weight * out[k];
    }
    bool zero = std::all_of(sum.begin(), sum.end(), [](long long x) { return x == 0; });
    if (!zero) rep.defects.push_back({v, std::move(sum)});
  }
  rep.balanced = rep.defects.empty();
  return rep;
}

std::size_t vertex_dim(const TropicalCurve& c, std::size_t v) {
  if (c.vertices[v].at_infinity()) return 0;
  auto inc = incidence(c);
  std::vector<std::vector<BigInt>> rows;
  for (auto [ei, at_tail] : inc[v]) {
    (void)at_tail;  // sign does not change the span
    std::vector<BigInt> row;
    for (long long x : c.edges[ei].direction) row.push_back(BigInt(x));
    rows.push_back(std::move(row));
  }
  return int_rank(std::move(rows));
}

SmoothReport check_smooth(const TropicalCurve& c) {
  SmoothReport rep;
  for (std::size_t i = 0; i < c.edges.size(); ++i)
    if (c.edges[i].weight != 1) rep.non_unit_weight_edges.push_back(i);
  rep.weights_one = rep.non_unit_weight_edges.empty();

  auto inc = incidence(c);
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    std::size_t val = inc[v].size();
    std::size_t dim = vertex_dim(c, v);
    if (val != dim + 1) rep.bad_vertices.push_back({v, val, dim});
  }
  rep.smooth = rep.weights_one && rep.bad_vertices.empty();
  return rep;
}

Location locate_point(const TropicalCurve& c, const ExtendedPoint& p) {
  require(p.coords.size() == c.r, "locate_point: wrong coordinate count");
  for (std::size_t v = 0; v < c.vertices.size(); ++v)
    if (c.vertices[v] == p) return {Location::Kind::Vertex, v};
  if (p.at_infinity()) return {Location::Kind::Absent, 0};

  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    EdgeParam ep = edge_param(c, c.edges[i]);
    std::optional<Rat> t;
    bool on = true;
    for (std::size_t k = 0; k < c.r && on; ++k) {
      Rat want = p.coords[k].value() - ep.base[k];
      if (ep.dir[k] == 0) {
        if (want != 0) on = false;
      } else {
        Rat tk = want / ep.dir[k];
        if (t && *t != tk)
          on = false;
        else
          t = tk;
      }
    }
    if (on && t && param_strictly_interior(ep, *t)) return {Location::Kind::Interior, i};
  }
  return {Location::Kind::Absent, 0};
}

ExtendedPoint point_along(const TropicalCurve& c, std::size_t edge, const Rat& t) {
  const Edge& e = c.edges[edge];
  require(!c.vertices[e.tail].at_infinity(), "point_along: edge tail is at infinity");
  ExtendedPoint p;
  p.coords.reserve(c.r);
  for (std::size_t k = 0; k < c.r; ++k)
    p.coords.push_back(LogValue(c.vertices[e.tail].coords[k].value() + t * Rat(e.direction[k])));
  return p;
}

SubdivisionResult subdivide_at(const TropicalCurve& c, std::size_t edge, const Rat& t) {
  require(edge < c.edges.size(), "subdivide_at: edge id out of range");
  const Edge& e = c.edges[edge];
  require(!c.vertices[e.tail].at_infinity(),
          "subdivide_at: parameter from an infinite tail is undefined, use a point");
  require(t > 0, "subdivide_at: parameter must be strictly positive");
  if (e.length) require(t < *e.length, "subdivide_at: parameter must be below the length");
  return subdivide_at_point(c, edge, point_along(c, edge, t));
}

SubdivisionResult subdivide_at_point(const TropicalCurve& c, std::size_t edge,
                                     const ExtendedPoint& p) {
  require(edge < c.edges.size(), "subdivide: edge id out of range");
  require(!p.at_infinity(), "subdivide: split point must be finite");
  SubdivisionResult res;
  res.curve = c;
  const Edge e = c.edges[edge];

  res.curve.vertices.push_back(p);
  res.new_vertex = res.curve.vertices.size() - 1;

  if (c.vertices[e.tail].at_infinity()) {
    // doubly unbounded line: [infinite tail, p] and [p, free)
    Edge low;
    low.tail = res.new_vertex;
    low.head = e.tail;
    low.direction = negate(e.direction);
    low.length = std::nullopt;
    low.weight = e.weight;
    Edge high;
    high.tail = res.new_vertex;
    high.head = std::nullopt;
    high.direction = e.direction;
    high.length = std::nullopt;
    high.weight = e.weight;
    res.curve.edges[edge] = low;
    res.curve.edges.push_back(high);
  } else {
    // parameter of p along the edge
    std::optional<Rat> t;
    for (std::size_t k = 0; k < c.r; ++k)
      if (e.direction[k] != 0) {
        t = (p.coords[k].value() - c.vertices[e.tail].coords[k].value()) / Rat(e.direction[k]);
        break;
      }
    invariant(t.has_value(), "subdivide: edge with zero direction");
    ExtendedPoint expect = point_along(c, edge, *t);
    require(expect == p, "subdivide: point does not lie on the edge");
    require(*t > 0, "subdivide: point is not interior");
    if (e.length) require(*t < *e.length, "subdivide: point is not interior");

    Edge low;
    low.tail = e.tail;
    low.head = res.new_vertex;
    low.direction = e.direction;
    low.length = *t;
    low.weight = e.weight;
    Edge high;
    high.tail = res.new_vertex;
    high.head = e.head;
    high.direction = e.direction;
    high.length = e.length ? std::optional<Rat>(*e.length - *t) : std::nullopt;
    high.weight = e.weight;
    res.curve.edges[edge] = low;
    res.curve.edges.push_back(high);
  }
  res.low_edge = edge;
  res.high_edge = res.curve.edges.size() - 1;
  return res;
}

namespace {

void normalize_edge_orientation(const TropicalCurve& c, Edge& e) {
  if (!e.head) return;  // free ends are already canonical
  bool tail_inf = c.vertices[e.tail].at_infinity();
  bool head_inf = c.vertices[*e.head].at_infinity();
  bool flip = false;
  if (tail_inf && !head_inf)
    flip = true;
  else if (!tail_inf && !head_inf && c.vertices[*e.head] < c.vertices[e.tail])
    flip = true;
  if (flip) {
    std::swap(e.tail, *e.head);
    e.direction = negate(e.direction);
  }
}

// Try to erase one removable finite 2-valent vertex; true if a merge happened.
bool merge_once(TropicalCurve& c) {
  auto inc = incidence(c);
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    if (c.vertices[v].at_infinity() || inc[v].size() != 2) continue;
    auto [ea, a_tail] = inc[v][0];
    auto [eb, b_tail] = inc[v][1];
    if (ea == eb) continue;
    const Edge &A = c.edges[ea], &B = c.edges[eb];
    if (A.weight != B.weight) continue;
    auto out_a = outgoing_direction(A, a_tail);
    auto out_b = outgoing_direction(B, b_tail);
    if (out_a != negate(out_b)) continue;

    // far endpoints (nullopt = free end)
    std::optional<std::size_t> far_a = a_tail ? A.head : std::optional<std::size_t>(A.tail);
    std::optional<std::size_t> far_b = b_tail ? B.head : std::optional<std::size_t>(B.tail);
    if (!far_a && !far_b) continue;  // line with two free ends: v is its anchor

    Edge merged;
    merged.weight = A.weight;
    if (A.length && B.length)
      merged.length = *A.length + *B.length;
    else
      merged.length = std::nullopt;
    if (far_b) {
      merged.tail = *far_b;
      merged.head = far_a;
      merged.direction = out_a;
    } else {
      merged.tail = *far_a;
      merged.head = far_b;
      merged.direction = out_b;
    }
    // merging across an infinite vertex towards a free end produces a doubly
    // unbounded edge; skip when that edge cannot carry its anchor
    if (!merged.head && c.vertices[merged.tail].at_infinity() &&
        positive_entries(merged.direction) > 1)
      continue;
    if (merged.head && c.vertices[merged.tail].at_infinity() &&
        c.vertices[*merged.head].at_infinity())
      continue;  // would join two vertices at infinity: not a representable edge

    // remove v and the two old edges, append the merged edge
    std::size_t hi = std::max(ea, eb), lo = std::min(ea, eb);
    c.edges.erase(c.edges.begin() + static_cast<long>(hi));
    c.edges.erase(c.edges.begin() + static_cast<long>(lo));
    c.edges.push_back(merged);
    c.vertices.erase(c.vertices.begin() + static_cast<long>(v));
    for (Edge& e : c.edges) {
      if (e.tail > v) --e.tail;
      if (e.head && *e.head > v) --*e.head;
    }
    return true;
  }
  return false;
}

}  // namespace

TropicalCurve canonicalize(const TropicalCurve& c) {
  TropicalCurve out = c;
  while (merge_once(out)) {
  }

  for (Edge& e : out.edges) normalize_edge_orientation(out, e);

  // sort vertices lexicographically; coordinates are pairwise distinct
  std::vector<std::size_t> order(out.vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.vertices[a] < out.vertices[b]; });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::vector<ExtendedPoint> verts(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) verts[i] = out.vertices[order[i]];
  out.vertices = std::move(verts);
  for (Edge& e : out.edges) {
    e.tail = rank[e.tail];
    if (e.head) e.head = rank[*e.head];
  }

  std::sort(out.edges.begin(), out.edges.end(), [](const Edge& a, const Edge& b) {
    if (a.tail != b.tail) return a.tail < b.tail;
    std::size_t ha = a.head ? *a.head : static_cast<std::size_t>(-1);
    std::size_t hb = b.head ? *b.head : static_cast<std::size_t>(-1);
    if (ha != hb) return ha < hb;
    if (a.direction != b.direction) return a.direction < b.direction;
    if (a.length.has_value() != b.length.has_value()) return a.length.has_value();
    if (a.length && b.length && *a.length != *b.length) return *a.length < *b.length;
    return a.weight < b.weight;
  });
  return out;
}

bool canonical_equal(const TropicalCurve& a, const TropicalCurve& b) {
  return canonicalize(a) == canonicalize(b);
}

}  // namespace trop
