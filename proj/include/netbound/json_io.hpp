#pragma once

// JSON forms of behaviors, models, search targets and reports.

#include <string>
#include <string_view>

#include "json.hpp"
#include "netbound/correlators.hpp"
#include "netbound/inequalities.hpp"
#include "netbound/lpfeas.hpp"
#include "netbound/trilocal.hpp"

namespace netbound {

using Json = nlohmann::ordered_json;

/// Inline JSON when the text starts with '{' or '[', otherwise a file path.
/// Throws ConfigError on unreadable files or malformed JSON.
Json load_json_argument(std::string_view text);

/// Number or string ("num/den", integer, decimal) to an exact rational.
/// Numbers go through their shortest decimal form, so 0.1 is 1/10. Throws ConfigError.
Rational rational_from_json(const Json& value);

/// Keys "EA", ..., "EABC"; missing keys are zero. Unknown keys throw ConfigError.
TriangleBehavior behavior_from_json(const Json& j);
Json behavior_to_json(const TriangleBehavior& e);
Json behavior_to_json(const BasicTriangleBehavior<double>& e);

Json distribution_to_json(const TriangleDistribution& d);

/// {"d", "dist": [alpha, beta, gamma], "respA", "respB", "respC"}. Throws ConfigError.
TrilocalModel model_from_json(const Json& j);
Json model_to_json(const TrilocalModel& m);
Json model_to_json(const TrilocalModelD& m);

/// Correlator keys give target values; an optional "weights" object gives weights.
SearchTarget target_from_json(const Json& j);

Json witness_to_json(const HexagonFreeVars& f);

template <class T>
Json report_to_json(const BasicIneqReport<T>& r) {
  Json j;
  j["name"] = r.name;
  if constexpr (std::is_same_v<T, Rational>) {
    j["lhs"] = to_fraction_string(r.lhs);
    j["rhs"] = to_fraction_string(r.rhs);
    j["margin"] = to_fraction_string(r.margin);
    j["margin_decimal"] = to_double(r.margin);
  } else {
    j["lhs"] = to_double(r.lhs);
    j["rhs"] = to_double(r.rhs);
    j["margin"] = to_double(r.margin);
  }
  j["satisfied"] = r.satisfied;
  j["status"] = status_name(r.status);
  return j;
}

}  // namespace netbound
