#include <cmath>

#include "gma/cli/app.hpp"
#include "gma/errors.hpp"
#include "gma/toric/polytope.hpp"

namespace gma::cli {

using nlohmann::json;

namespace {

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "number") return v.is_number();
  if (t == "integer") {
    if (v.is_number_integer()) return true;
    if (!v.is_number_float()) return false;
    const double x = v.get<double>();
    return std::isfinite(x) && x == std::floor(x) && std::abs(x) < 0x1p53;
  }
  if (t == "rational") {
    if (v.is_number_integer()) return true;
    if (!v.is_string()) return false;
    try {
      toric::parse_rational(v.get<std::string>());
      return true;
    } catch (const DomainError&) {
      return false;
    }
  }
  throw StateError("schema uses unknown type " + t);
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ValidationError(path + ": " + msg);
}

}  // namespace

void validate(const json& v, const json& s, const std::string& path) {
  if (s.contains("type")) {
    const auto& t = s["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = has_type(v, t.get<std::string>());
    } else {
      for (const auto& x : t) ok = ok || has_type(v, x.get<std::string>());
    }
    if (!ok) fail(path, "expected " + t.dump() + ", got " + v.dump());
  }
  if (s.contains("const") && v != s["const"]) fail(path, "must equal " + s["const"].dump());
  if (s.contains("enum")) {
    bool ok = false;
    for (const auto& e : s["enum"]) ok = ok || e == v;
    if (!ok) fail(path, "must be one of " + s["enum"].dump());
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    if (s.contains("minimum") && x < s["minimum"].get<double>()) fail(path, "below minimum " + s["minimum"].dump());
    if (s.contains("maximum") && x > s["maximum"].get<double>()) fail(path, "above maximum " + s["maximum"].dump());
    if (s.contains("exclusiveMinimum") && !(x > s["exclusiveMinimum"].get<double>())) {
      fail(path, "must exceed " + s["exclusiveMinimum"].dump());
    }
  }
  if (v.is_array()) {
    if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) fail(path, "too few items");
    if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) fail(path, "too many items");
    if (s.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) validate(v[i], s["items"], path + "[" + std::to_string(i) + "]");
    }
  }
  if (v.is_object() && (s.contains("properties") || s.contains("additionalProperties"))) {
    const json props = s.value("properties", json::object());
    for (const auto& r : s.value("required", json::array())) {
      if (!v.contains(r.get<std::string>())) fail(path, "missing required key '" + r.get<std::string>() + "'");
    }
    const json extra = s.value("additionalProperties", json(false));
    for (const auto& [key, val] : v.items()) {
      const std::string sub = path + "." + key;
      if (props.contains(key)) {
        validate(val, props[key], sub);
      } else if (extra.is_object()) {
        validate(val, extra, sub);
      } else if (!extra.get<bool>()) {
        fail(path, "unknown key '" + key + "'");
      }
    }
  }
}

}  // namespace gma::cli
