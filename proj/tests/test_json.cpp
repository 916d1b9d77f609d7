#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trop/json_io.hpp"
#include "trop/tropicalize.hpp"
#include "trop/ultrametric.hpp"

using namespace trop;

namespace {

LogValue ninf() { return LogValue::neg_inf(); }

template <typename T, typename Decode>
void roundtrip(const T& value, Decode decode) {
  std::string text = json_text(encode(value));
  T back = decode(parse_json_text(text));
  CHECK(back == value);
  CHECK(json_text(encode(back)) == text);
}

}  // namespace

TEST_CASE("rational strings are canonical") {
  CHECK(rat_to_string(Rat(-3, 7)) == "-3/7");
  CHECK(rat_to_string(Rat(4)) == "4");
  CHECK(rat_to_string(Rat(0)) == "0");
  CHECK(parse_rat("17/3") == Rat(17, 3));
  CHECK(parse_rat("-5") == Rat(-5));
  CHECK_THROWS_AS(parse_rat("2/4"), ValidationError);
  CHECK_THROWS_AS(parse_rat("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rat("-0"), ValidationError);
  CHECK_THROWS_AS(parse_rat("01"), ValidationError);
  CHECK_THROWS_AS(parse_rat("+3"), ValidationError);
  CHECK_THROWS_AS(parse_rat("1.5"), ValidationError);
  CHECK_THROWS_AS(parse_rat(""), ValidationError);
  CHECK_THROWS_AS(parse_rat("3/-4"), ValidationError);
  CHECK(parse_log_value("-inf") == ninf());
  CHECK(log_value_to_string(ninf()) == "-inf");
  CHECK(log_value_to_string(LogValue(Rat(1, 2))) == "1/2");
  CHECK_THROWS_AS(parse_log_value("inf"), ValidationError);
}

TEST_CASE("matrix files have a frozen canonical layout") {
  auto m = from_padic_points(5, {Rat(0), Rat(1)});
  std::string expected =
      "{\n"
      "  \"n\": 2,\n"
      "  \"labels\": [\n"
      "    \"0\",\n"
      "    \"1\"\n"
      "  ],\n"
      "  \"L\": [\n"
      "    [\n"
      "      \"-inf\",\n"
      "      \"0\"\n"
      "    ],\n"
      "    [\n"
      "      \"0\",\n"
      "      \"-inf\"\n"
      "    ]\n"
      "  ]\n"
      "}\n";
  CHECK(json_text(encode(m)) == expected);
  roundtrip(m, decode_matrix);
}

TEST_CASE("matrices without labels omit the field") {
  auto m = random_ultrametric(5, 3);
  CHECK(!encode(m).contains("labels"));
  roundtrip(m, decode_matrix);
}

TEST_CASE("matrix decoding is strict") {
  auto good = encode(from_padic_points(5, {Rat(0), Rat(1)}));

  auto j = good;
  j["L"][0][1] = "2/4";
  CHECK_THROWS_AS(decode_matrix(j), ValidationError);

  j = good;
  j["L"][0][0] = "inf";
  CHECK_THROWS_AS(decode_matrix(j), ValidationError);

  j = good;
  j["n"] = 3;
  CHECK_THROWS_AS(decode_matrix(j), ValidationError);

  j = good;
  j["extra"] = 1;
  CHECK_THROWS_AS(decode_matrix(j), ValidationError);

  j = good;
  j.erase("L");
  CHECK_THROWS_AS(decode_matrix(j), ValidationError);

  CHECK_THROWS_AS(parse_json_text("{not json"), ValidationError);
}

TEST_CASE("curve files round-trip byte for byte") {
  auto c = tropicalize_direct(from_padic_points(5, {Rat(0), Rat(1), Rat(5)}));
  roundtrip(c, decode_curve);

  TropicalCurve line;
  line.r = 1;
  line.vertices = {ExtendedPoint{{ninf()}}};
  line.edges = {Edge{0, std::nullopt, {1}, std::nullopt, 1}};
  roundtrip(line, decode_curve);
  auto j = encode(line);
  CHECK(j["edges"][0]["head"] == "free");
  CHECK(j["edges"][0]["length"] == "inf");
}

TEST_CASE("curve decoding is strict") {
  auto good = encode(tropicalize_direct(from_padic_points(5, {Rat(0), Rat(1)})));

  auto j = good;
  j["vertices"][0]["id"] = 7;
  CHECK_THROWS_AS(decode_curve(j), ValidationError);

  j = good;
  j["edges"][0]["length"] = "-inf";
  CHECK_THROWS_AS(decode_curve(j), ValidationError);

  j = good;
  j["edges"][0]["weight"] = 0;
  CHECK_THROWS_AS(decode_curve(j), ValidationError);

  j = good;
  j["edges"][0]["weight"] = Json(2.5);
  CHECK_THROWS_AS(decode_curve(j), ValidationError);

  j = good;
  j["edges"][0]["head"] = "loose";
  CHECK_THROWS_AS(decode_curve(j), ValidationError);

  j = good;
  j["edges"][0]["direction"] = Json::array({1});
  CHECK_THROWS_AS(decode_curve(j), ValidationError);

  j = good;
  j["vertices"][0]["coords"] = Json::array({"0"});
  CHECK_THROWS_AS(decode_curve(j), ValidationError);

  j = good;
  j["vertices"][0]["note"] = "hi";
  CHECK_THROWS_AS(decode_curve(j), ValidationError);
}

TEST_CASE("piecewise affine data round-trips") {
  PiecewiseAffineFunction p;
  p.values[1] = Rat(-7, 2);
  p.values[4] = Rat(0);
  p.slopes[0] = -2;
  p.slopes[3] = 5;
  std::string text = json_text(encode(p));
  auto back = decode_paf(parse_json_text(text));
  CHECK(back.values == p.values);
  CHECK(back.slopes == p.slopes);
  CHECK(json_text(encode(back)) == text);

  auto j = encode(p);
  j["values"]["007"] = "1";
  CHECK_THROWS_AS(decode_paf(j), ValidationError);
}

TEST_CASE("regions, tables, and skeletons round-trip") {
  RegionSpec s;
  s.vertices = {0, 2, 3};
  s.edges = {1};
  s.boundary = {2};
  roundtrip(s, decode_region);

  CohomologyTable t;
  t.h[0][0] = 1;
  t.h[1][0] = 2;
  t.hc[0][1] = 2;
  t.hc[1][1] = 1;
  roundtrip(t, decode_table);
  auto jt = encode(t);
  CHECK(jt["h"][1][0] == 2);
  jt["h"][0][0] = -1;
  CHECK_THROWS_AS(decode_table(jt), ValidationError);

  SkeletonGraph g;
  g.num_vertices = 2;
  g.edges = {SkeletonEdge{0, 1, Rat(1)}, SkeletonEdge{0, 1, Rat(5, 2)}};
  roundtrip(g, decode_skeleton);

  auto jg = encode(g);
  CHECK(jg["vertices"] == Json::array({0, 1}));
  jg["edges"][1]["id"] = 0;
  CHECK_THROWS_AS(decode_skeleton(jg), ValidationError);

  jg = encode(g);
  jg["edges"][0]["length"] = "0";
  CHECK_THROWS_AS(validate_skeleton(decode_skeleton(jg)), ValidationError);
}
