#include "netbound/json_io.hpp"

#include <fstream>
#include <sstream>

#include "netbound/errors.hpp"

namespace netbound {

Json load_json_argument(std::string_view text) {
  std::string content;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && (text[first] == '{' || text[first] == '[')) {
    content = std::string(text);
  } else {
    std::ifstream in{std::string(text)};
    if (!in) throw ConfigError("cannot read '" + std::string(text) + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    content = buf.str();
  }
  try {
    return Json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from_json(const Json& value) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number()) return parse_rational(value.dump());
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("expected a number or a fraction string, got " + value.dump());
}

TriangleBehavior behavior_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("behavior must be a JSON object");
  TriangleBehavior e;
  for (const auto& [key, value] : j.items()) {
    const auto c = correlator_from_key(key);
    if (!c) throw ConfigError("unknown behavior key '" + key + "'");
    e[*c] = rational_from_json(value);
  }
  if (!e.in_range()) throw ConfigError("correlators must lie in [-1,1]");
  return e;
}

Json behavior_to_json(const TriangleBehavior& e) {
  Json j;
  for (Correlator c : kAllCorrelators) j[correlator_key(c)] = to_fraction_string(e[c]);
  return j;
}

Json behavior_to_json(const BasicTriangleBehavior<double>& e) {
  Json j;
  for (Correlator c : kAllCorrelators) j[correlator_key(c)] = e[c];
  return j;
}

Json distribution_to_json(const TriangleDistribution& d) {
  Json j;
  for (const auto& o : triangle_outcomes()) j[o.label()] = to_fraction_string(d[o]);
  return j;
}

namespace {

std::vector<Rational> rational_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

std::vector<std::vector<Rational>> rational_table(const Json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of rows");
  std::vector<std::vector<Rational>> out;
  for (const auto& row : j) out.push_back(rational_vector(row, what));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("model is missing '") + key + "'");
  return j.at(key);
}

template <class T, class Convert>
Json model_json(const BasicTrilocalModel<T>& m, Convert convert) {
  const auto vec = [&](const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(convert(x));
    return a;
  };
  const auto table = [&](const std::vector<std::vector<T>>& t) {
    Json a = Json::array();
    for (const auto& row : t) a.push_back(vec(row));
    return a;
  };
  Json j;
  j["d"] = m.d;
  j["dist"] = Json::array({vec(m.dist_alpha), vec(m.dist_beta), vec(m.dist_gamma)});
  j["respA"] = table(m.resp_a);
  j["respB"] = table(m.resp_b);
  j["respC"] = table(m.resp_c);
  return j;
}

}  // namespace

TrilocalModel model_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("model must be a JSON object");
  TrilocalModel m;
  const auto& d = field(j, "d");
  if (!d.is_number_integer()) throw ConfigError("'d' must be an integer");
  m.d = d.get<int>();
  const auto& dist = field(j, "dist");
  if (!dist.is_array() || dist.size() != 3) throw ConfigError("'dist' must hold three distributions");
  m.dist_alpha = rational_vector(dist[0], "dist");
  m.dist_beta = rational_vector(dist[1], "dist");
  m.dist_gamma = rational_vector(dist[2], "dist");
  m.resp_a = rational_table(field(j, "respA"), "respA");
  m.resp_b = rational_table(field(j, "respB"), "respB");
  m.resp_c = rational_table(field(j, "respC"), "respC");
  try {
    validate(m);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  }
  return m;
}

Json model_to_json(const TrilocalModel& m) {
  return model_json(m, [](const Rational& x) { return to_fraction_string(x); });
}

Json model_to_json(const TrilocalModelD& m) {
  return model_json(m, [](double x) { return x; });
}

SearchTarget target_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("target must be a JSON object");
  SearchTarget t;
  for (const auto& [key, value] : j.items()) {
    if (key == "weights") {
      if (!value.is_object()) throw ConfigError("'weights' must be an object");
      for (const auto& [wkey, w] : value.items()) {
        const auto c = correlator_from_key(wkey);
        if (!c) throw ConfigError("unknown weight key '" + wkey + "'");
        const double weight = to_double(rational_from_json(w));
        if (weight < 0) throw ConfigError("weights must be nonnegative");
        t.weight[static_cast<std::size_t>(*c)] = weight;
      }
      continue;
    }
    const auto c = correlator_from_key(key);
    if (!c) throw ConfigError("unknown target key '" + key + "'");
    t[*c] = to_double(rational_from_json(value));
  }
  if (!t.any()) throw ConfigError("target specifies no correlator");
  return t;
}

Json witness_to_json(const HexagonFreeVars& f) {
  Json j;
  for (std::size_t i = 0; i < kNumFreeVars; ++i) {
    j[free_var_name(static_cast<FreeVar>(i))] = to_fraction_string(f.values[i]);
  }
  return j;
}

}  // namespace netbound
