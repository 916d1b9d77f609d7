#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trop/mumford.hpp"

using namespace trop;

namespace {

SkeletonGraph segment() {
  SkeletonGraph g;
  g.num_vertices = 2;
  g.edges = {SkeletonEdge{0, 1, Rat(1)}};
  return g;
}

SkeletonGraph circle() {
  SkeletonGraph g;
  g.num_vertices = 1;
  g.edges = {SkeletonEdge{0, 0, Rat(1)}};
  return g;
}

SkeletonGraph theta() {
  SkeletonGraph g;
  g.num_vertices = 2;
  g.edges = {SkeletonEdge{0, 1, Rat(1)}, SkeletonEdge{0, 1, Rat(2)},
             SkeletonEdge{0, 1, Rat(3)}};
  return g;
}

SkeletonGraph banana(std::size_t k) {
  SkeletonGraph g;
  g.num_vertices = 2;
  for (std::size_t i = 0; i < k; ++i) g.edges.push_back(SkeletonEdge{0, 1, Rat(i + 1)});
  return g;
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

TEST_CASE("predicted whole-skeleton tables") {
  CHECK(theorem_table_global(0) == table(1, 0, 0, 1, 1, 0, 0, 1));
  CHECK(theorem_table_global(1) == table(1, 1, 1, 1, 1, 1, 1, 1));
  CHECK(theorem_table_global(2) == table(1, 2, 2, 1, 1, 2, 2, 1));
  CHECK(theorem_table_global(5) == table(1, 5, 5, 1, 1, 5, 5, 1));
  CHECK(pd_check(theorem_table_global(3)));
}

TEST_CASE("predicted simple-region tables") {
  CHECK(theorem_table_simple(1) == table(1, 0, 0, 0, 0, 0, 0, 1));
  CHECK(theorem_table_simple(2) == table(1, 0, 1, 0, 0, 1, 0, 1));
  CHECK(theorem_table_simple(3) == table(1, 0, 2, 0, 0, 2, 0, 1));
  CHECK(theorem_table_simple(4) == table(1, 0, 3, 0, 0, 3, 0, 1));
  CHECK(pd_check(theorem_table_simple(2)));
}

TEST_CASE("genus counts independent cycles") {
  CHECK(genus(segment()) == 0);
  CHECK(genus(circle()) == 1);
  CHECK(genus(theta()) == 2);
  CHECK(genus(banana(4)) == 3);
  SkeletonGraph point;
  point.num_vertices = 1;
  CHECK(genus(point) == 0);
}

TEST_CASE("skeleton validation") {
  validate_skeleton(segment());
  validate_skeleton(circle());
  validate_skeleton(theta());

  SkeletonGraph bad = segment();
  bad.edges[0].b = 5;
  CHECK_THROWS_AS(validate_skeleton(bad), ValidationError);

  SkeletonGraph split;
  split.num_vertices = 4;
  split.edges = {SkeletonEdge{0, 1, Rat(1)}, SkeletonEdge{2, 3, Rat(1)}};
  CHECK_THROWS_AS(validate_skeleton(split), ValidationError);

  SkeletonGraph lonely;
  lonely.num_vertices = 2;
  lonely.edges = {SkeletonEdge{0, 0, Rat(1)}};
  CHECK_THROWS_AS(validate_skeleton(lonely), ValidationError);

  SkeletonGraph zero = segment();
  zero.edges[0].length = Rat(0);
  CHECK_THROWS_AS(validate_skeleton(zero), ValidationError);

  SkeletonGraph empty;
  CHECK_THROWS_AS(validate_skeleton(empty), ValidationError);
}

TEST_CASE("subdividing loops preserves genus and removes self-edges") {
  auto g = subdivide_loops(circle());
  validate_skeleton(g);
  CHECK(genus(g) == 1);
  CHECK(g.num_vertices == 3);
  CHECK(g.edges.size() == 3);
  for (auto& e : g.edges) CHECK(e.a != e.b);
  Rat total(0);
  for (auto& e : g.edges) total += e.length;
  CHECK(total == Rat(1));

  auto t = subdivide_loops(theta());
  CHECK(t.num_vertices == 2);  // no loops, untouched
  CHECK(genus(t) == 2);
}

TEST_CASE("subdividing one skeleton edge") {
  auto g = segment();
  auto s = subdivide_skeleton_edge(g, 0, Rat(1, 3));
  validate_skeleton(s);
  CHECK(s.num_vertices == 3);
  REQUIRE(s.edges.size() == 2);
  CHECK(s.edges[0].length == Rat(1, 3));
  CHECK(s.edges[1].length == Rat(2, 3));
  CHECK(s.edges[0].a == 0);
  CHECK(genus(s) == 0);
  CHECK_THROWS_AS(subdivide_skeleton_edge(g, 0, Rat(0)), ValidationError);
  CHECK_THROWS_AS(subdivide_skeleton_edge(g, 0, Rat(1)), ValidationError);
  CHECK_THROWS_AS(subdivide_skeleton_edge(g, 5, Rat(1, 2)), ValidationError);
}

TEST_CASE("whole-skeleton tables match the genus prediction") {
  auto seg = segment();
  CHECK(cohomology_table(seg, whole_region(seg)) == theorem_table_global(0));

  auto c = subdivide_loops(circle());
  CHECK(cohomology_table(c, whole_region(c)) == theorem_table_global(1));

  auto t = theta();
  auto tab = cohomology_table(t, whole_region(t));
  CHECK(tab == theorem_table_global(2));
  CHECK(tab.h[1][0] == 2);

  auto b = banana(4);
  CHECK(cohomology_table(b, whole_region(b)) == theorem_table_global(3));
}

TEST_CASE("regions of a raw loop are rejected until it is subdivided") {
  auto c = circle();
  CHECK_THROWS_AS(cohomology_table(c, whole_region(c)), ValidationError);
}

TEST_CASE("euler characteristic on skeleton regions") {
  auto t = theta();
  auto eu = euler_check(t, whole_region(t));
  CHECK(eu.ok);
  CHECK(eu.chi == -1);
  CHECK(eu.cells == -1);
}

TEST_CASE("one cut vertex of the theta graph gives three branches") {
  auto sr = make_simple_region(theta(), {0}, {});
  CHECK(sr.k == 3);
  CHECK(sr.k == sr.region.boundary.size());
  validate_region(sr.ambient, sr.region);
  CHECK(cohomology_table(sr.ambient, sr.region) == theorem_table_simple(3));
}

TEST_CASE("an excluded edge between two core vertices is cut twice") {
  auto sr = make_simple_region(theta(), {0, 1}, {0});
  CHECK(sr.k == 4);
  CHECK(sr.k == sr.region.boundary.size());
  CHECK(cohomology_table(sr.ambient, sr.region) == theorem_table_simple(4));
}

TEST_CASE("an escaping loop is cut on both sides of its base vertex") {
  auto sr = make_simple_region(circle(), {0}, {});
  CHECK(sr.k == 2);
  CHECK(cohomology_table(sr.ambient, sr.region) == theorem_table_simple(2));
}

TEST_CASE("bananas cut at one end give stars of every width") {
  for (std::size_t k = 2; k <= 6; ++k) {
    auto sr = make_simple_region(banana(k), {0}, {});
    CHECK(sr.k == k);
    CHECK(cohomology_table(sr.ambient, sr.region) == theorem_table_simple(k));
  }
}

TEST_CASE("cores with cycles are rejected") {
  CHECK_THROWS_AS(make_simple_region(circle(), {0}, {0}), ValidationError);
  CHECK_THROWS_AS(make_simple_region(theta(), {0, 1}, {0, 1}), ValidationError);
  CHECK_THROWS_AS(make_simple_region(theta(), {0, 1}, {}), ValidationError);
  CHECK_THROWS_AS(make_simple_region(theta(), {5}, {}), ValidationError);
}

TEST_CASE("skeleton verification confirms the tables end to end") {
  for (auto g : {segment(), circle(), theta(), banana(5)}) {
    auto v = verify_skeleton(g, 3, 4);
    CHECK(v.ok);
    CHECK(v.global_ok);
    CHECK(v.duality_ok);
    CHECK(v.simple_ok);
    CHECK(v.global_table == theorem_table_global(v.g));
  }
}

TEST_CASE("random skeletons hit the requested genus") {
  for (std::size_t g = 0; g <= 4; ++g)
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      Rng rng(seed * 101 + g);
      auto s = random_skeleton(g, rng);
      validate_skeleton(s);
      CHECK(genus(s) == g);
    }
}

TEST_CASE("random simple regions stay simple") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Rng rng(seed);
    auto s = subdivide_loops(random_skeleton(seed % 4, rng));
    auto sr = random_simple_region(s, rng);
    validate_region(sr.ambient, sr.region);
    auto tab = cohomology_table(sr.ambient, sr.region);
    if (sr.k == 0) {
      CHECK(genus(sr.ambient) == 0);
      CHECK(tab == theorem_table_global(0));
    } else {
      CHECK(tab == theorem_table_simple(sr.k));
    }
  }
}
