#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trop/cohomology.hpp"
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

// Line anchored at -inf with finite vertices at 0 and 5.
TropicalCurve segment_line() {
  auto a = subdivide_at_point(line1(), 0, pt({fin(0)}));
  auto b = subdivide_at(a.curve, a.high_edge, Rat(5));
  return b.curve;
}

CohomologyTable table(int h00, int h01, int h10, int h11, int c00, int c01, int c10,
                      int c11) {
  CohomologyTable t;
  t.h[0][0] = h00;
  t.h[0][1] = h01;
  t.h[1][0] = h10;
  t.h[1][1] = h11;
  t.hc[0][0] = c00;
  t.hc[0][1] = c01;
  t.hc[1][0] = c10;
  t.hc[1][1] = c11;
  return t;
}

}  // namespace

TEST_CASE("the whole line has only constants and a top compact class") {
  auto expected = table(1, 0, 0, 0, 0, 0, 0, 1);
  CHECK(cohomology_table(line1(), whole_region(line1())) == expected);
  auto c = tropicalize_direct(from_padic_points(5, {Rat(0), Rat(1), Rat(5)}));
  CHECK(cohomology_table(c, whole_region(c)) == expected);
  CHECK(cohomology_table(star2(), whole_region(star2())) == expected);
}

TEST_CASE("open interval inside one edge") {
  auto c = segment_line();
  std::size_t a = 1, b = 2;  // subdivision order: 0 is the vertex at -inf
  REQUIRE(c.vertices[a] == pt({fin(0)}));
  REQUIRE(c.vertices[b] == pt({fin(5)}));
  std::size_t mid = 1;  // [0 -> 5]
  REQUIRE(c.edges[mid].length == Rat(5));

  RegionSpec s;
  s.vertices = {a, b};
  s.edges = {mid};
  s.boundary = {a, b};
  validate_region(c, s);

  CHECK(cohomology_table(c, s) == table(1, 0, 1, 0, 0, 1, 0, 1));
  CHECK(pd_check(cohomology_table(c, s)));

  auto eu = euler_check(c, s);
  CHECK(eu.ok);
  CHECK(eu.chi == 1);
  CHECK(eu.cells == 1);
}

TEST_CASE("half-open segment out to the vertex at infinity") {
  auto c = segment_line();
  RegionSpec s;
  s.vertices = {0, 1};
  s.edges = {0};
  s.boundary = {1};
  validate_region(c, s);
  CHECK(cohomology_table(c, s) == table(1, 0, 0, 0, 0, 0, 0, 1));
  CHECK(pd_check(cohomology_table(c, s)));
}

TEST_CASE("star of three half-open branches at a smooth vertex") {
  auto sr = make_simple_region(star2(), {0}, {}, Rat(1, 3));
  CHECK(sr.k == 3);
  validate_region(sr.ambient, sr.region);
  auto t = cohomology_table(sr.ambient, sr.region);
  CHECK(t == table(1, 0, 2, 0, 0, 2, 0, 1));
  CHECK(pd_check(t));

  auto eu = euler_check(sr.ambient, sr.region);
  CHECK(eu.ok);
  CHECK(eu.chi == 1);
}

TEST_CASE("free rays kept in the core count like boundary points") {
  auto sr = make_simple_region(star2(), {0}, {2}, Rat(1, 3));
  CHECK(sr.k == 3);
  CHECK(cohomology_table(sr.ambient, sr.region) == table(1, 0, 2, 0, 0, 2, 0, 1));

  auto two = make_simple_region(star2(), {0, 1}, {0}, Rat(1, 3));
  CHECK(two.k == 2);
  CHECK(cohomology_table(two.ambient, two.region) == table(1, 0, 1, 0, 0, 1, 0, 1));
}

TEST_CASE("simple regions demand a connected core anchored in the curve") {
  CHECK_THROWS_AS(make_simple_region(segment_line(), {1, 2}, {}, Rat(1, 3)),
                  ValidationError);
  CHECK_THROWS_AS(make_simple_region(star2(), {0, 1}, {}, Rat(1, 3)), ValidationError);
  CHECK_THROWS_AS(make_simple_region(star2(), {0}, {}, Rat(1, 2)), ValidationError);
  CHECK_THROWS_AS(make_simple_region(star2(), {9}, {}, Rat(1, 3)), ValidationError);
}

TEST_CASE("region validation enforces openness and a working boundary") {
  auto c = star2();

  RegionSpec not_open;
  not_open.vertices = {0};
  CHECK_THROWS_AS(validate_region(c, not_open), ValidationError);

  RegionSpec idle_boundary;
  idle_boundary.vertices = {0};
  idle_boundary.boundary = {0};
  CHECK_THROWS_AS(validate_region(c, idle_boundary), ValidationError);

  RegionSpec dangling;
  dangling.vertices = {0};
  dangling.edges = {0};
  dangling.boundary = {0};
  CHECK_THROWS_AS(validate_region(c, dangling), ValidationError);

  RegionSpec stray_boundary;
  stray_boundary.vertices = {0, 1, 2};
  stray_boundary.edges = {0, 1, 2};
  stray_boundary.boundary = {1};  // vertex at infinity cannot be a cut point
  CHECK_THROWS_AS(validate_region(c, stray_boundary), ValidationError);

  RegionSpec dup;
  dup.vertices = {0, 0, 1, 2};
  dup.edges = {0, 1, 2};
  CHECK_THROWS_AS(validate_region(c, dup), ValidationError);
}

TEST_CASE("preimage of a region under modification keeps its table") {
  // Lift of max(z, 0) over the subdivided line.
  auto base = subdivide_at_point(line1(), 0, pt({fin(0)}));
  PiecewiseAffineFunction p;
  p.values[base.new_vertex] = Rat(0);
  p.slopes[base.low_edge] = 0;
  p.slopes[base.high_edge] = 1;
  auto map = modify(base.curve, p);

  auto whole = whole_region(base.curve);
  auto up = preimage_region(map, whole);
  validate_region(map.source, up);
  CHECK(cohomology_table(map.source, up) == cohomology_table(base.curve, whole));
  // The rebalancing ray and its endpoint enter the preimage.
  CHECK(up.vertices.size() == base.curve.vertices.size() + 1);
  CHECK(up.edges.size() == base.curve.edges.size() + 1);

  // Cut at the modified vertex: no ray is added over a boundary point.
  RegionSpec half;
  half.vertices = {0, base.new_vertex};
  half.edges = {base.low_edge};
  half.boundary = {base.new_vertex};
  validate_region(base.curve, half);
  auto up_half = preimage_region(map, half);
  validate_region(map.source, up_half);
  CHECK(up_half.vertices.size() == 2);
  CHECK(cohomology_table(map.source, up_half) == cohomology_table(base.curve, half));
}

TEST_CASE("random regions are valid and satisfy duality") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto m = random_ultrametric(2 + seed % 5, seed);
    auto c = tropicalize_direct(m);
    Rng rng(seed * 911);
    auto s = random_region(c, rng);
    validate_region(c, s);
    auto t = cohomology_table(c, s);
    CHECK(pd_check(t));
    CHECK(euler_check(c, s).ok);
  }
}

TEST_CASE("the abstract stalk model agrees with the embedded one") {
  auto c = tropicalize_direct(from_padic_points(5, {Rat(0), Rat(1), Rat(5)}));
  CHECK(cohomology_table_abstract(c, whole_region(c)) ==
        cohomology_table(c, whole_region(c)));

  auto sub = subdivide_at(star2(), 2, Rat(3)).curve;
  CHECK(cohomology_table_abstract(sub, whole_region(sub)) ==
        cohomology_table(sub, whole_region(sub)));
}

TEST_CASE("tables ignore the chosen edge orientations") {
  auto c = tropicalize_direct(from_padic_points(5, {Rat(0), Rat(1), Rat(5)}));
  auto g = cell_graph(c, whole_region(c));
  auto before = table_of(g);
  for (std::size_t e = 0; e < g.edges.size(); ++e) flip_edge_orientation(g, e);
  CHECK(table_of(g) == before);
}

TEST_CASE("tables ignore subdivision points") {
  auto c = star2();
  auto whole = whole_region(c);
  auto t0 = cohomology_table(c, whole);
  auto s = subdivide_at(c, 2, Rat(3));
  CHECK(cohomology_table(s.curve, whole_region(s.curve)) == t0);

  // Refine a region across the subdivision the same way.
  RegionSpec region;
  region.vertices = {0, 1, 2};
  region.edges = {0, 1, 2};
  auto t1 = cohomology_table(c, region);
  RegionSpec refined;
  refined.vertices = {0, 1, 2, s.new_vertex};
  refined.edges = {0, 1, s.low_edge, s.high_edge};
  CHECK(cohomology_table(s.curve, refined) == t1);
}

TEST_CASE("complexes expose their cell counts") {
  auto g = cell_graph(star2(), whole_region(star2()));
  // Compact support: all three vertices, the free end term dropped.
  auto compact0 = build_complex(g, 0, true);
  CHECK(compact0.cols == 3);
  CHECK(compact0.rows == 3);
  // Ordinary: a trim cell stands in for the free ray end.
  auto ordinary0 = build_complex(g, 0, false);
  CHECK(ordinary0.cols == 4);
  CHECK(ordinary0.rows == 3);
  // One-forms: a two-dimensional stalk at the center, none at infinity.
  auto compact1 = build_complex(g, 1, true);
  CHECK(compact1.cols == 2);
  CHECK(compact1.rows == 3);
}
