#pragma once

#include "trop/cohomology.hpp"
#include "trop/curve.hpp"
#include "trop/skeleton.hpp"
#include "trop/tropicalize.hpp"
#include "trop/ultrametric.hpp"

#include <json.hpp>

#include <string>

namespace trop {

// All encoders produce a canonical layout: fixed key order, rationals in
// lowest terms as strings, "-inf" and "inf" for the infinite values. Decoders
// are strict: unknown keys, malformed numbers, or inconsistent sizes are
// validation errors naming the offending field.

using Json = nlohmann::ordered_json;

Json encode(const LogDistanceMatrix& m);
Json encode(const TropicalCurve& c);
Json encode(const PiecewiseAffineFunction& p);
Json encode(const RegionSpec& s);
Json encode(const CohomologyTable& t);
Json encode(const SkeletonGraph& g);

LogDistanceMatrix decode_matrix(const Json& j);
TropicalCurve decode_curve(const Json& j);
PiecewiseAffineFunction decode_paf(const Json& j);
RegionSpec decode_region(const Json& j);
CohomologyTable decode_table(const Json& j);
SkeletonGraph decode_skeleton(const Json& j);

// Parse/print helpers shared by the command line tool: parse wraps syntax
// errors into validation errors, print appends a trailing newline.
Json parse_json_text(const std::string& text);
std::string json_text(const Json& j);

}  // namespace trop
