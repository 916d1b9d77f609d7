#include "trop/json_io.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

namespace trop {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

void expect_object(const Json& j, const std::string& where,
                   const std::vector<std::string>& required,
                   const std::vector<std::string>& optional = {}) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& k : required)
    if (!j.contains(k)) bad(where, "missing key '" + k + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (std::find(required.begin(), required.end(), k) == required.end() &&
        std::find(optional.begin(), optional.end(), k) == optional.end())
      bad(where, "unknown key '" + k + "'");
  }
}

std::size_t get_index(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) bad(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

long long get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long long>();
}

Rat get_rat(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a rational encoded as a string");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const ValidationError& e) {
    bad(where, e.what());
  }
}

LogValue get_log_value(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a rational or \"-inf\" encoded as a string");
  try {
    return parse_log_value(j.get<std::string>());
  } catch (const ValidationError& e) {
    bad(where, e.what());
  }
}

std::string at(const std::string& where, const std::string& key) { return where + "." + key; }
std::string at(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

std::vector<std::size_t> get_index_array(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_index(j[i], at(where, i)));
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

Json encode(const LogDistanceMatrix& m) {
  Json j;
  j["n"] = m.size();
  if (!m.labels.empty()) j["labels"] = m.labels;
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(log_value_to_string(m.at(i, k)));
    rows.push_back(row);
  }
  j["L"] = rows;
  return j;
}

LogDistanceMatrix decode_matrix(const Json& j) {
  expect_object(j, "matrix", {"n", "L"}, {"labels"});
  std::size_t n = get_index(j["n"], "matrix.n");
  if (n == 0) bad("matrix.n", "must be positive");
  LogDistanceMatrix m;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) bad("matrix.labels", "expected an array");
    for (std::size_t i = 0; i < j["labels"].size(); ++i) {
      if (!j["labels"][i].is_string()) bad(at("matrix.labels", i), "expected a string");
      m.labels.push_back(j["labels"][i].get<std::string>());
    }
    if (m.labels.size() != n) bad("matrix.labels", "size does not match n");
  }
  if (!j["L"].is_array() || j["L"].size() != n) bad("matrix.L", "expected n rows");
  m.entries.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = j["L"][i];
    if (!row.is_array() || row.size() != n) bad(at("matrix.L", i), "expected n entries");
    m.entries[i].resize(n);
    for (std::size_t k = 0; k < n; ++k)
      m.entries[i][k] = get_log_value(row[k], at(at("matrix.L", i), k));
  }
  return m;
}

Json encode(const TropicalCurve& c) {
  Json j;
  j["r"] = c.r;
  Json vs = Json::array();
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    Json jv;
    jv["id"] = v;
    Json coords = Json::array();
    for (const auto& x : c.vertices[v].coords) coords.push_back(log_value_to_string(x));
    jv["coords"] = coords;
    vs.push_back(jv);
  }
  j["vertices"] = vs;
  Json es = Json::array();
  for (const Edge& e : c.edges) {
    Json je;
    je["tail"] = e.tail;
    if (e.head)
      je["head"] = *e.head;
    else
      je["head"] = "free";
    je["direction"] = e.direction;
    je["length"] = e.length ? rat_to_string(*e.length) : std::string("inf");
    je["weight"] = e.weight;
    es.push_back(je);
  }
  j["edges"] = es;
  return j;
}

TropicalCurve decode_curve(const Json& j) {
  expect_object(j, "curve", {"r", "vertices", "edges"});
  TropicalCurve c;
  c.r = get_index(j["r"], "curve.r");
  if (!j["vertices"].is_array()) bad("curve.vertices", "expected an array");
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const Json& jv = j["vertices"][i];
    std::string where = at("curve.vertices", i);
    expect_object(jv, where, {"id", "coords"});
    if (get_index(jv["id"], at(where, "id")) != i)
      bad(at(where, "id"), "vertex ids must be 0,1,2,... in order");
    const Json& coords = jv["coords"];
    if (!coords.is_array() || coords.size() != c.r)
      bad(at(where, "coords"), "expected r coordinates");
    ExtendedPoint p;
    for (std::size_t k = 0; k < c.r; ++k)
      p.coords.push_back(get_log_value(coords[k], at(at(where, "coords"), k)));
    c.vertices.push_back(p);
  }
  if (!j["edges"].is_array()) bad("curve.edges", "expected an array");
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const Json& je = j["edges"][i];
    std::string where = at("curve.edges", i);
    expect_object(je, where, {"tail", "head", "direction", "length", "weight"});
    Edge e;
    e.tail = get_index(je["tail"], at(where, "tail"));
    if (je["head"].is_string()) {
      if (je["head"].get<std::string>() != "free")
        bad(at(where, "head"), "expected a vertex id or \"free\"");
      e.head = std::nullopt;
    } else {
      e.head = get_index(je["head"], at(where, "head"));
    }
    if (!je["direction"].is_array() || je["direction"].size() != c.r)
      bad(at(where, "direction"), "expected r integer entries");
    for (std::size_t k = 0; k < c.r; ++k)
      e.direction.push_back(get_int(je["direction"][k], at(at(where, "direction"), k)));
    if (je["length"].is_string() && je["length"].get<std::string>() == "inf") {
      e.length = std::nullopt;
    } else {
      e.length = get_rat(je["length"], at(where, "length"));
    }
    long long w = get_int(je["weight"], at(where, "weight"));
    if (w < 1) bad(at(where, "weight"), "weight must be a positive integer");
    e.weight = w;
    c.edges.push_back(e);
  }
  return c;
}

Json encode(const PiecewiseAffineFunction& p) {
  Json j;
  Json values = Json::object();
  for (const auto& [v, x] : p.values) values[std::to_string(v)] = rat_to_string(x);
  j["values"] = values;
  Json slopes = Json::object();
  for (const auto& [e, s] : p.slopes) slopes[std::to_string(e)] = s;
  j["slopes"] = slopes;
  return j;
}

namespace {

std::size_t parse_key_index(const std::string& key, const std::string& where) {
  if (key.empty() || key.size() > 1 + std::numeric_limits<std::size_t>::digits10)
    bad(where, "bad id key '" + key + "'");
  for (char ch : key)
    if (ch < '0' || ch > '9') bad(where, "bad id key '" + key + "'");
  if (key.size() > 1 && key[0] == '0') bad(where, "bad id key '" + key + "'");
  return static_cast<std::size_t>(std::stoull(key));
}

}  // namespace

PiecewiseAffineFunction decode_paf(const Json& j) {
  expect_object(j, "function", {"values", "slopes"});
  PiecewiseAffineFunction p;
  if (!j["values"].is_object()) bad("function.values", "expected an object");
  for (auto it = j["values"].begin(); it != j["values"].end(); ++it) {
    std::size_t v = parse_key_index(it.key(), "function.values");
    p.values[v] = get_rat(it.value(), at("function.values", it.key()));
  }
  if (!j["slopes"].is_object()) bad("function.slopes", "expected an object");
  for (auto it = j["slopes"].begin(); it != j["slopes"].end(); ++it) {
    std::size_t e = parse_key_index(it.key(), "function.slopes");
    p.slopes[e] = get_int(it.value(), at("function.slopes", it.key()));
  }
  return p;
}

Json encode(const RegionSpec& s) {
  Json j;
  j["vertices"] = s.vertices;
  j["edges"] = s.edges;
  j["boundary"] = s.boundary;
  return j;
}

RegionSpec decode_region(const Json& j) {
  expect_object(j, "region", {"vertices", "edges", "boundary"});
  RegionSpec s;
  s.vertices = get_index_array(j["vertices"], "region.vertices");
  s.edges = get_index_array(j["edges"], "region.edges");
  s.boundary = get_index_array(j["boundary"], "region.boundary");
  return s;
}

Json encode(const CohomologyTable& t) {
  Json j;
  j["h"] = Json::array({Json::array({t.h[0][0], t.h[0][1]}), Json::array({t.h[1][0], t.h[1][1]})});
  j["hc"] =
      Json::array({Json::array({t.hc[0][0], t.hc[0][1]}), Json::array({t.hc[1][0], t.hc[1][1]})});
  return j;
}

CohomologyTable decode_table(const Json& j) {
  expect_object(j, "table", {"h", "hc"});
  CohomologyTable t;
  auto fill = [&](const Json& m, int dest[2][2], const std::string& where) {
    if (!m.is_array() || m.size() != 2) bad(where, "expected a 2x2 array");
    for (int p = 0; p < 2; ++p) {
      if (!m[p].is_array() || m[p].size() != 2) bad(at(where, p), "expected a 2x2 array");
      for (int q = 0; q < 2; ++q) {
        long long x = get_int(m[p][q], at(at(where, p), q));
        if (x < 0) bad(at(at(where, p), q), "dimensions are nonnegative");
        dest[p][q] = static_cast<int>(x);
      }
    }
  };
  fill(j["h"], t.h, "table.h");
  fill(j["hc"], t.hc, "table.hc");
  return t;
}

Json encode(const SkeletonGraph& g) {
  Json j;
  Json vs = Json::array();
  for (std::size_t v = 0; v < g.num_vertices; ++v) vs.push_back(v);
  j["vertices"] = vs;
  Json es = Json::array();
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    Json je;
    je["id"] = e;
    je["ends"] = Json::array({g.edges[e].a, g.edges[e].b});
    je["length"] = rat_to_string(g.edges[e].length);
    es.push_back(je);
  }
  j["edges"] = es;
  return j;
}

SkeletonGraph decode_skeleton(const Json& j) {
  expect_object(j, "skeleton", {"vertices", "edges"});
  SkeletonGraph g;
  std::vector<std::size_t> ids = get_index_array(j["vertices"], "skeleton.vertices");
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] != i) bad("skeleton.vertices", "vertex ids must be 0,1,2,... in order");
  g.num_vertices = ids.size();
  if (!j["edges"].is_array()) bad("skeleton.edges", "expected an array");
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const Json& je = j["edges"][i];
    std::string where = at("skeleton.edges", i);
    expect_object(je, where, {"id", "ends", "length"});
    if (get_index(je["id"], at(where, "id")) != i)
      bad(at(where, "id"), "edge ids must be 0,1,2,... in order");
    if (!je["ends"].is_array() || je["ends"].size() != 2)
      bad(at(where, "ends"), "expected two vertex ids");
    SkeletonEdge e;
    e.a = get_index(je["ends"][0], at(at(where, "ends"), std::size_t(0)));
    e.b = get_index(je["ends"][1], at(at(where, "ends"), std::size_t(1)));
    e.length = get_rat(je["length"], at(where, "length"));
    g.edges.push_back(e);
  }
  return g;
}

}  // namespace trop
