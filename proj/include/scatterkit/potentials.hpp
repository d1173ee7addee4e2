#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <system_error>

#include "scatterkit/common.hpp"

namespace scatterkit {

enum class Family { Free, Delta, SquareWell, Sech2, Linear };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::Free: return "free";
    case Family::Delta: return "delta";
    case Family::SquareWell: return "squarewell";
    case Family::Sech2: return "sech2";
    case Family::Linear: return "linear";
  }
  return "unknown";
}

inline Family parse_family(const std::string& name) {
  if (name == "free") return Family::Free;
  if (name == "delta") return Family::Delta;
  if (name == "squarewell") return Family::SquareWell;
  if (name == "sech2") return Family::Sech2;
  if (name == "linear") return Family::Linear;
  throw InvalidArgument("unknown potential family '" + name + "'");
}

// strength: V0 (SquareWell, Sech2), g (Delta), m*g (Linear).
struct Potential {
  Family family = Family::Free;
  double strength = 0.0;
  double width = 0.0;
  double inverse_range = 1.0;

  bool operator==(const Potential&) const = default;
};

using ParamSet = std::map<std::string, double>;

namespace detail {

inline double take(const ParamSet& ps, const std::string& key, Family f) {
  auto it = ps.find(key);
  if (it == ps.end()) throw InvalidArgument(family_name(f) + ": missing parameter '" + key + "'");
  return it->second;
}

inline void only_keys(const ParamSet& ps, std::initializer_list<const char*> allowed, Family f) {
  for (const auto& [k, v] : ps) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw InvalidArgument(family_name(f) + ": unknown parameter '" + k + "'");
    if (!std::isfinite(v)) throw InvalidArgument(family_name(f) + ": parameter '" + k + "' is not finite");
  }
}

}  // namespace detail

// Delta defaults to the unit attractive case g = −1 (R = i/(k−i)).
inline Potential make_potential(Family family, const ParamSet& ps = {}) {
  Potential p;
  p.family = family;
  switch (family) {
    case Family::Free:
      detail::only_keys(ps, {}, family);
      break;
    case Family::Delta:
      detail::only_keys(ps, {"g"}, family);
      p.strength = ps.count("g") ? ps.at("g") : -1.0;
      break;
    case Family::SquareWell:
      detail::only_keys(ps, {"V0", "a"}, family);
      p.strength = detail::take(ps, "V0", family);
      p.width = detail::take(ps, "a", family);
      if (!(p.width > 0.0)) throw InvalidArgument("squarewell: width a must be positive");
      break;
    case Family::Sech2:
      detail::only_keys(ps, {"V0", "mu"}, family);
      p.strength = detail::take(ps, "V0", family);
      p.inverse_range = ps.count("mu") ? ps.at("mu") : 1.0;
      if (!(p.inverse_range > 0.0)) throw InvalidArgument("sech2: inverse range mu must be positive");
      break;
    case Family::Linear:
      detail::only_keys(ps, {"g"}, family);
      p.strength = ps.count("g") ? ps.at("g") : 1.0;
      if (!(p.strength > 0.0)) throw InvalidArgument("linear: g must be positive");
      break;
  }
  return p;
}

inline Potential free_potential() { return make_potential(Family::Free); }
inline Potential delta_potential(double g = -1.0) { return make_potential(Family::Delta, {{"g", g}}); }
inline Potential square_well(double V0, double a) { return make_potential(Family::SquareWell, {{"V0", V0}, {"a", a}}); }
inline Potential sech2_potential(double V0, double mu = 1.0) {
  return make_potential(Family::Sech2, {{"V0", V0}, {"mu", mu}});
}

inline double evaluate(const Potential& p, double x) {
  require(std::isfinite(x), "evaluate: x must be finite");
  switch (p.family) {
    case Family::Free: return 0.0;
    case Family::Delta: throw UnsupportedOperation("evaluate: the delta potential has no pointwise value");
    case Family::SquareWell: {
      const double h = 0.5 * p.width;
      const double ax = std::abs(x);
      if (ax < h) return p.strength;
      if (ax == h) return 0.5 * p.strength;
      return 0.0;
    }
    case Family::Sech2: {
      const double c = std::cosh(p.inverse_range * x);
      return p.strength / (c * c);
    }
    case Family::Linear: return p.strength * x;
  }
  return 0.0;
}

// Whole-token decimal parse; rejects trailing garbage, inf and nan.
inline double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
    throw InvalidArgument(what + ": '" + text + "' is not a finite number");
  return v;
}

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "family" or "family:key=value{,key=value}".
inline Potential parse_potential_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const Family family = parse_family(spec.substr(0, colon));
  ParamSet ps;
  if (colon != std::string::npos) {
    const std::string body = spec.substr(colon + 1);
    if (body.empty()) throw InvalidArgument("potential spec '" + spec + "': empty parameter list");
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const auto comma = body.find(',', pos);
      const std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw InvalidArgument("potential spec '" + spec + "': expected key=value, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      if (ps.count(key)) throw InvalidArgument("potential spec '" + spec + "': duplicate key '" + key + "'");
      ps[key] = parse_number(item.substr(eq + 1), "potential spec key '" + key + "'");
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return make_potential(family, ps);
}

// Canonical form: every parameter spelled out, fixed key order, 17 digits.
inline std::string potential_spec(const Potential& p) {
  const std::string f = family_name(p.family);
  switch (p.family) {
    case Family::Free: return f;
    case Family::Delta:
    case Family::Linear: return f + ":g=" + format_number(p.strength);
    case Family::SquareWell: return f + ":V0=" + format_number(p.strength) + ",a=" + format_number(p.width);
    case Family::Sech2: return f + ":V0=" + format_number(p.strength) + ",mu=" + format_number(p.inverse_range);
  }
  return f;
}

}  // namespace scatterkit
