#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

#include "segode/numint.hpp"
#include "segode/types.hpp"

namespace segode {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Parses text; throws Error(Schema) on malformed JSON.
Json parse_json(std::string_view text);

/// Deterministic serialization: insertion-ordered keys, every double printed
/// with 17 significant digits, non-finite doubles as null.
std::string dump(const Json& j, int indent = 2);

Json to_json(Complex c);
Json to_json(const TruncatedSeries& s);
Json to_json(const P0Hypersurface& h);
Json to_json(const NonminimalODE& ode);
Json to_json(const ReducedODE& r);
Json to_json(const State& s);
Json to_json(const Eigen::Matrix2cd& m);
/// An ord0 result: the integer, or "inf" for the infinity sentinel.
Json order_to_json(int order);

// All readers throw Error(Schema) naming the offending location. Series are
// padded with exact zeros up to `order` unless they carry an explicit
// "truncation"; missing coefficient functions read as zero.
Complex complex_from_json(const Json& j, std::string_view where);
TruncatedSeries series_from_json(const Json& j, int order, std::string_view where);
P0Hypersurface hypersurface_from_json(const Json& j, int order);
NonminimalODE ode_from_json(const Json& j, int order);
ReducedODE reduced_from_json(const Json& j, int order);
State state_from_json(const Json& j, std::string_view where);
Eigen::Matrix3cd matrix3_from_json(const Json& j);
PathSpec path_from_json(const Json& j);

double number_from_json(const Json& j, std::string_view where);
int int_from_json(const Json& j, std::string_view where);

/// Throws Error(Schema) when `j` has a key outside `allowed`.
void require_known_keys(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view where);

} // namespace segode
