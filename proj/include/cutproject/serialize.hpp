#pragma once

#include <string>

#include <json.hpp>

#include "cutproject/scheme.hpp"

namespace cutproject {

using Json = nlohmann::ordered_json;

/// Scalars: {"type":"rat","value":"p/q"}, {"type":"quad","a":..,"b":..,"D":..}
/// for a + b sqrt(D), {"type":"quad","terms":[{"radicand":s,"coef":"p/q"}]}
/// for other multiquadratic values, {"type":"float","value":x,"tol":t}.
/// Reading also accepts expression strings ("tau/3") and JSON numbers.
Json to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j);
Json to_json(const ScalarVec& v);
ScalarVec scalar_vec_from_json(const Json& j);

Json to_json(const InternalSpace& space);
InternalSpace space_from_json(const Json& j);
Json to_json(const InternalSpace& space, const HPoint& x);
HPoint hpoint_from_json(const InternalSpace& space, const Json& j);

Json to_json(const Box& b);
/// Accepts {"lo":[..],"hi":[..]} or a string such as "[0,20]".
Box box_from_json(const Json& j);

Json to_json(const Interval& iv);
Interval interval_from_json(const Json& j);

Json to_json(const Window& w);
/// Accepts the canonical form, or for one-dimensional real spaces a bare
/// interval string such as "[-1, tau-1)".
Window window_from_json(const Json& j);
Window window_from_json(const Json& j, const InternalSpace& space);

Json to_json(const CutProjectScheme& s);
CutProjectScheme scheme_from_json(const Json& j);

Json to_json(const Patch& p);
Patch patch_from_json(const Json& j);
/// One point per row, coordinates as decimal approximations followed by the
/// exact forms.
std::string to_csv(const Patch& p);

/// 64-bit FNV-1a of a string, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace cutproject
