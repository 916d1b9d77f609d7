#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "trop/tropicalize.hpp"
#include "trop/ultrametric.hpp"

using namespace trop;

namespace {

LogValue fin(long long n, long long d = 1) { return LogValue(Rat(n, d)); }
LogValue ninf() { return LogValue::neg_inf(); }
ExtendedPoint pt(std::vector<LogValue> v) { return ExtendedPoint{std::move(v)}; }

TropicalCurve line1() {
  TropicalCurve c;
  c.r = 1;
  c.vertices = {pt({ninf()})};
  c.edges = {Edge{0, std::nullopt, {1}, std::nullopt, 1}};
  return c;
}

TropicalCurve star2() {
  TropicalCurve c;
  c.r = 2;
  c.vertices = {pt({fin(0), fin(0)}), pt({ninf(), fin(0)}), pt({fin(0), ninf()})};
  c.edges = {
      Edge{0, 1, {-1, 0}, std::nullopt, 1},
      Edge{0, 2, {0, -1}, std::nullopt, 1},
      Edge{0, std::nullopt, {1, 1}, std::nullopt, 1},
  };
  return c;
}

// A point z lies in the image of the line under (max(log|c - a_i|, t))_i iff
// the formula with c = a_j, j a coordinate where the minimum of z is attained,
// and t = that minimum reproduces z. Independent of the tree construction.
bool in_image(const LogDistanceMatrix& m, const ExtendedPoint& z) {
  std::size_t n = m.size();
  if (z.coords.size() != n) return false;
  std::size_t j = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (z.coords[i] < z.coords[j]) j = i;
  const LogValue& t = z.coords[j];
  for (std::size_t i = 0; i < n; ++i)
    if (z.coords[i] != max(m.at(j, i), t)) return false;
  return true;
}

ExtendedPoint sample(const LogDistanceMatrix& m, std::size_t j, const LogValue& t) {
  std::vector<LogValue> v;
  for (std::size_t i = 0; i < m.size(); ++i) v.push_back(max(m.at(j, i), t));
  return ExtendedPoint{std::move(v)};
}

std::vector<LogValue> height_grid() {
  std::vector<LogValue> g = {ninf()};
  for (auto q : {Rat(-8), Rat(-7, 2), Rat(-2), Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 3),
                 Rat(1), Rat(5, 2), Rat(8)})
    g.push_back(LogValue(q));
  return g;
}

// Midpoint of an edge, one unit out for unbounded edges with a finite tail,
// the origin of the coordinate for a doubly unbounded edge.
ExtendedPoint edge_probe(const TropicalCurve& c, std::size_t e) {
  const Edge& ed = c.edges[e];
  if (c.vertices[ed.tail].at_infinity()) {
    std::vector<LogValue> v = c.vertices[ed.tail].coords;
    for (std::size_t k = 0; k < c.r; ++k)
      if (ed.direction[k] != 0) v[k] = fin(0);
    return ExtendedPoint{std::move(v)};
  }
  return point_along(c, e, ed.length ? Rat(*ed.length / 2) : Rat(1));
}

}  // namespace

TEST_CASE("one marked point gives the doubly unbounded line") {
  LogDistanceMatrix m;
  m.entries = {{ninf()}};
  auto c = tropicalize_direct(m);
  CHECK(canonical_equal(c, line1()));
}

TEST_CASE("two points at log-distance zero give the three-valent star") {
  auto c = tropicalize_direct(from_padic_points(5, {Rat(0), Rat(1)}));
  CHECK(canonical_equal(c, star2()));
  CHECK(check_balancing(c).balanced);
  CHECK(check_smooth(c).smooth);
}

TEST_CASE("three 5-adic points give the nested cluster tree") {
  auto m = from_padic_points(5, {Rat(0), Rat(1), Rat(5)});
  auto c = tropicalize_direct(m);
  CHECK(c.r == 3);
  CHECK(c.vertices.size() == 5);
  CHECK(c.edges.size() == 5);
  // Cluster vertices at both merge heights.
  CHECK(locate_point(c, pt({fin(-1), fin(0), fin(-1)})).kind == Location::Kind::Vertex);
  CHECK(locate_point(c, pt({fin(0), fin(0), fin(0)})).kind == Location::Kind::Vertex);
  // Leaves of the three points.
  CHECK(locate_point(c, pt({ninf(), fin(0), fin(-1)})).kind == Location::Kind::Vertex);
  CHECK(locate_point(c, pt({fin(0), ninf(), fin(0)})).kind == Location::Kind::Vertex);
  CHECK(locate_point(c, pt({fin(-1), fin(0), ninf()})).kind == Location::Kind::Vertex);
  // The bounded trunk between the merge heights.
  bool trunk = false;
  for (auto& e : c.edges)
    if (e.length && *e.length == Rat(1)) trunk = true;
  CHECK(trunk);
  CHECK(check_balancing(c).balanced);
  CHECK(check_smooth(c).smooth);
}

TEST_CASE("construction matches the seminorm image point for point") {
  for (std::size_t n = 1; n <= 7; ++n)
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      auto m = random_ultrametric(n, seed);
      auto c = tropicalize_direct(m);
      validate_curve(c);

      // Every sampled image point lies on the curve.
      for (std::size_t j = 0; j < n; ++j)
        for (auto& t : height_grid()) {
          auto z = sample(m, j, t);
          CHECK(locate_point(c, z).kind != Location::Kind::Absent);
        }

      // Every vertex and every edge probe lies in the image.
      for (auto& v : c.vertices) CHECK(in_image(m, v));
      for (std::size_t e = 0; e < c.edges.size(); ++e) CHECK(in_image(m, edge_probe(c, e)));

      // Perturbed probes leave the image unless they land back on the curve.
      for (std::size_t e = 0; e < c.edges.size(); ++e) {
        auto z = edge_probe(c, e);
        for (std::size_t k = 0; k < c.r; ++k) {
          if (!z.coords[k].is_finite()) continue;
          auto w = z;
          w.coords[k] = LogValue(w.coords[k].value() + Rat(1, 7));
          CHECK(in_image(m, w) == (locate_point(c, w).kind != Location::Kind::Absent));
        }
      }
    }
}

TEST_CASE("rejects matrices that fail validation") {
  LogDistanceMatrix m;
  m.entries = {{ninf(), fin(1), fin(2)}, {fin(1), ninf(), fin(3)}, {fin(2), fin(3), ninf()}};
  CHECK(!validate_ultrametric(m).ok);
  CHECK_THROWS_AS(tropicalize_direct(m), ValidationError);
}

TEST_CASE("distance function on the line is a single maximum") {
  auto l = line1();
  CHECK(eval_P(l, {Rat(0)}, pt({fin(-5)})) == Rat(0));
  CHECK(eval_P(l, {Rat(0)}, pt({fin(3)})) == Rat(3));
  CHECK(eval_P(l, {Rat(0)}, pt({ninf()})) == Rat(0));
}

TEST_CASE("distance function matches the seminorm formula on samples") {
  for (std::size_t n = 4; n <= 7; ++n)
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto m = random_ultrametric(n, seed);
      auto lead = m.leading(n - 1);
      auto c = tropicalize_direct(lead);
      std::vector<Rat> b;
      for (std::size_t i = 0; i + 1 < n; ++i) b.push_back(m.at(i, n - 1).value());
      for (std::size_t j = 0; j + 1 < n; ++j)
        for (auto& t : height_grid()) {
          auto z = sample(lead, j, t);
          Rat expected = max(LogValue(b[j]), t).value();
          CHECK(eval_P(c, b, z) == expected);
        }
    }
}

TEST_CASE("distance function rejects bad inputs") {
  auto c = star2();
  CHECK_THROWS_AS(eval_P(c, {Rat(0)}, pt({fin(0), fin(0)})), ValidationError);
  // Distances to the new point must extend the matrix ultrametrically.
  CHECK_THROWS_AS(eval_P(c, {Rat(-1), Rat(-2)}, pt({fin(0), fin(0)})), ValidationError);
  CHECK_THROWS(eval_P(c, {Rat(0), Rat(0)}, pt({fin(4), fin(2)})));
}

TEST_CASE("modification along max(z, 0) rebalances with one downward ray") {
  auto base = subdivide_at_point(line1(), 0, pt({fin(0)}));
  std::size_t v = base.new_vertex;
  PiecewiseAffineFunction p;
  p.values[v] = Rat(0);
  p.slopes[base.low_edge] = 0;
  p.slopes[base.high_edge] = 1;

  auto map = modify(base.curve, p);
  CHECK(map.source.r == 2);
  CHECK(canonical_equal(map.source, star2()));
  REQUIRE(map.added_rays.size() == 1);
  auto& ray = map.added_rays[0];
  CHECK(ray.weight == 1);
  CHECK(map.source.vertices[map.vertex_lift[v]] == pt({fin(0), fin(0)}));
  CHECK(ray.base_vertex == map.vertex_lift[v]);
  CHECK(map.source.vertices[ray.inf_vertex] == pt({fin(0), ninf()}));
  CHECK(map.source.edges[ray.ray_edge].direction == std::vector<long long>{0, -1});
  CHECK(check_balancing(map.source).balanced);

  // Lifted vertices project back onto the base curve.
  for (std::size_t i = 0; i < base.curve.vertices.size(); ++i) {
    auto& lifted = map.source.vertices[map.vertex_lift[i]];
    for (std::size_t k = 0; k < base.curve.r; ++k)
      CHECK(lifted.coords[k] == base.curve.vertices[i].coords[k]);
  }
}

TEST_CASE("globally affine functions modify without new rays") {
  auto c = star2();
  PiecewiseAffineFunction p;
  p.values[0] = Rat(0);
  p.slopes[0] = -1;
  p.slopes[1] = 0;
  p.slopes[2] = 1;
  auto map = modify(c, p);
  CHECK(map.added_rays.empty());
  CHECK(map.source.vertices[map.vertex_lift[0]] == pt({fin(0), fin(0), fin(0)}));
  // Negative slope toward a vertex at infinity drags the lift to -inf.
  CHECK(map.source.vertices[map.vertex_lift[1]] == pt({ninf(), fin(0), ninf()}));
  CHECK(map.source.vertices[map.vertex_lift[2]] == pt({fin(0), ninf(), fin(0)}));
  CHECK(check_balancing(map.source).balanced);
  CHECK(canonical_equal(project_transition(map.source, {0, 1}), c));
}

TEST_CASE("modification rejects inconsistent or unliftable data") {
  auto c = star2();

  PiecewiseAffineFunction missing;
  missing.slopes[0] = 0;
  missing.slopes[1] = 0;
  missing.slopes[2] = 0;
  CHECK_THROWS_AS(modify(c, missing), ValidationError);

  PiecewiseAffineFunction up;
  up.values[0] = Rat(0);
  up.slopes[0] = 1;  // climbs toward the vertex at infinity
  up.slopes[1] = 0;
  up.slopes[2] = 0;
  CHECK_THROWS_AS(modify(c, up), ValidationError);

  // Slope and endpoint values must agree on a bounded edge.
  auto s = subdivide_at(c, 2, Rat(3));
  PiecewiseAffineFunction off;
  off.values[0] = Rat(0);
  off.values[s.new_vertex] = Rat(5);
  off.slopes[0] = 0;
  off.slopes[1] = 0;
  off.slopes[s.low_edge] = 1;
  off.slopes[s.high_edge] = 1;
  CHECK_THROWS_AS(modify(s.curve, off), ValidationError);

  // Downward kink would need an upward ray.
  auto base = subdivide_at_point(line1(), 0, pt({fin(0)}));
  PiecewiseAffineFunction valley;
  valley.values[base.new_vertex] = Rat(0);
  valley.slopes[base.low_edge] = -1;
  valley.slopes[base.high_edge] = 0;
  CHECK_THROWS_AS(modify(base.curve, valley), ValidationError);

  // Defect outside the new coordinate: unbalanced base curve.
  TropicalCurve lone;
  lone.r = 2;
  lone.vertices = {pt({fin(0), fin(0)})};
  lone.edges = {Edge{0, std::nullopt, {1, 0}, std::nullopt, 1}};
  PiecewiseAffineFunction flat;
  flat.values[0] = Rat(0);
  flat.slopes[0] = 0;
  CHECK_THROWS_AS(modify(lone, flat), ValidationError);

  // A doubly unbounded edge has no finite anchor to lift from.
  PiecewiseAffineFunction on_line;
  on_line.slopes[0] = 0;
  CHECK_THROWS_AS(modify(line1(), on_line), ValidationError);
}

TEST_CASE("incremental construction retraces the direct one") {
  for (std::size_t n = 1; n <= 7; ++n)
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
      auto m = random_ultrametric(n, seed);
      auto inc = tropicalize_incremental(m);
      CHECK(canonical_equal(inc, tropicalize_direct(m)));
    }
}

TEST_CASE("the third 5-adic point enters through one ray at its branch point") {
  auto m = from_padic_points(5, {Rat(0), Rat(1), Rat(5)});
  auto trace = tropicalize_incremental_trace(m);
  CHECK(canonical_equal(trace.curve, tropicalize_direct(m)));
  REQUIRE(trace.steps.size() == 2);

  auto& last = trace.steps.back();
  REQUIRE(last.added_rays.size() == 1);
  auto& ray = last.added_rays[0];
  CHECK(ray.weight == 1);
  CHECK(last.source.vertices[ray.base_vertex] == pt({fin(-1), fin(0), fin(-1)}));
  CHECK(canonical_equal(project_transition(last.source, {0, 1}), last.target));

  LogDistanceMatrix one;
  one.entries = {{ninf()}};
  CHECK(tropicalize_incremental_trace(one).steps.empty());
}

TEST_CASE("projection onto marked subsets recovers the smaller trees") {
  auto m = from_padic_points(5, {Rat(0), Rat(1), Rat(5)});
  auto c = tropicalize_direct(m);
  CHECK(canonical_equal(project_transition(c, {0, 1}), tropicalize_direct(m.leading(2))));
  CHECK(canonical_equal(project_transition(c, {0, 2}),
                        tropicalize_direct(from_padic_points(5, {Rat(0), Rat(5)}))));
  CHECK(canonical_equal(project_transition(c, {1}), line1()));

  CHECK_THROWS_AS(project_transition(c, {}), ValidationError);
  CHECK_THROWS_AS(project_transition(c, {0, 3}), ValidationError);
  CHECK_THROWS_AS(project_transition(c, {1, 0}), ValidationError);
}

TEST_CASE("projection respects random curves coordinate by coordinate") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto m = random_ultrametric(5, seed);
    auto c = tropicalize_direct(m);
    CHECK(canonical_equal(project_transition(c, {0, 1, 2, 3}),
                          tropicalize_direct(m.leading(4))));
  }
}

TEST_CASE("restricting max(z, 0) to the line places one kink") {
  // The anchor vertex sits away from the kink so every edge has a finite tail.
  auto anchored = subdivide_at_point(line1(), 0, pt({fin(-2)})).curve;
  auto res =
      restrict_max_affine(anchored, {AffineTerm{{1}, Rat(0)}, AffineTerm{{0}, Rat(0)}});
  CHECK(res.curve.vertices.size() == 3);
  CHECK(res.curve.edges.size() == 3);
  CHECK(canonical_equal(res.curve, subdivide_at_point(line1(), 0, pt({fin(0)})).curve));
  auto loc = locate_point(res.curve, pt({fin(0)}));
  REQUIRE(loc.kind == Location::Kind::Vertex);
  CHECK(res.paf.values.at(loc.index) == Rat(0));
  for (std::size_t e = 0; e < res.curve.edges.size(); ++e) {
    bool outward = !res.curve.edges[e].head.has_value();
    CHECK(res.paf.slopes.at(e) == (outward ? 1 : 0));
  }
  // The restriction composes with modification back to the star.
  CHECK(canonical_equal(modify(res.curve, res.paf).source, star2()));
}

TEST_CASE("dominated terms leave no spurious kinks") {
  auto anchored = subdivide_at_point(line1(), 0, pt({fin(-2)})).curve;
  auto res = restrict_max_affine(
      anchored,
      {AffineTerm{{1}, Rat(0)}, AffineTerm{{0}, Rat(0)}, AffineTerm{{1}, Rat(-5)}});
  CHECK(res.curve.vertices.size() == 3);

  auto flat = restrict_max_affine(star2(), {AffineTerm{{1, 0}, Rat(5)}});
  CHECK(canonical_equal(flat.curve, star2()));
  CHECK(flat.paf.values.at(0) == Rat(5));
  CHECK(flat.paf.slopes.at(0) == -1);
  CHECK(flat.paf.slopes.at(1) == 0);
  CHECK(flat.paf.slopes.at(2) == 1);
}

TEST_CASE("a kink on the free ray subdivides it") {
  auto res = restrict_max_affine(star2(),
                                 {AffineTerm{{1, 1}, Rat(0)}, AffineTerm{{0, 0}, Rat(1)}});
  CHECK(res.curve.vertices.size() == 4);
  auto loc = locate_point(res.curve, pt({fin(1, 2), fin(1, 2)}));
  REQUIRE(loc.kind == Location::Kind::Vertex);
  CHECK(res.paf.values.at(loc.index) == Rat(1));
  auto center = locate_point(res.curve, pt({fin(0), fin(0)}));
  REQUIRE(center.kind == Location::Kind::Vertex);
  CHECK(res.paf.values.at(center.index) == Rat(1));
}

TEST_CASE("restriction rejects terms that climb toward infinity") {
  CHECK_THROWS_AS(restrict_max_affine(star2(), {AffineTerm{{-1, 0}, Rat(0)}}),
                  ValidationError);
  CHECK_THROWS_AS(restrict_max_affine(star2(), {}), ValidationError);
  CHECK_THROWS_AS(restrict_max_affine(star2(), {AffineTerm{{1}, Rat(0)}}), ValidationError);
}
