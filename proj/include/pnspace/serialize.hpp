// Copyright 2026 The pnspace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON configs and reports. Object keys keep insertion order so that reports
// are byte-stable.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pnspace/axioms.hpp"
#include "pnspace/boundedness.hpp"
#include "pnspace/distfun.hpp"
#include "pnspace/normability.hpp"
#include "pnspace/profile.hpp"
#include "pnspace/space.hpp"

namespace pnspace {

using json = nlohmann::ordered_json;

/// Malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Numbers stay numbers; ±∞ and NaN become strings.
inline json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline const json& req(const json& j, const std::string& key,
                       const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + "." + key + ": missing");
  return *it;
}

inline double get_number(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ConfigError(path + ": expected a number");
}

inline std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

inline std::vector<double> get_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_number(j[i], concat(path, "[", i, "]")));
  return out;
}

inline std::vector<Knot> get_knots(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw ConfigError(path + ": expected a nonempty array of [x, y_left, y_right]");
  std::vector<Knot> ks;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto v = get_numbers(j[i], concat(path, "[", i, "]"));
    if (v.size() != 3)
      throw ConfigError(concat(path, "[", i, "]: expected [x, y_left, y_right]"));
    ks.push_back({v[0], v[1], v[2]});
  }
  return ks;
}

inline Params get_params(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  Params p;
  for (auto it = j.begin(); it != j.end(); ++it)
    p.emplace_back(it.key(), get_number(it.value(), path + "." + it.key()));
  return p;
}

/// Re-throws library construction failures as config errors with a path.
template <typename Fn>
auto at_path(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConstructionError& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Distribution functions and profiles.

inline json to_json(const DistFn& F) {
  json j;
  if (F.is_piecewise()) {
    j["backend"] = "piecewise";
    json ks = json::array();
    for (const auto& k : F.knots())
      ks.push_back(json::array({detail::num(k.x), k.y_left, k.y_right}));
    j["knots"] = std::move(ks);
    if (F.approximate()) j["approximate"] = true;
  } else {
    j["backend"] = "analytic";
    j["family"] = F.family();
    json ps = json::object();
    for (const auto& [k, v] : F.params()) ps[k] = detail::num(v);
    j["params"] = std::move(ps);
    if (F.scale() != 1.0) j["scale"] = F.scale();
  }
  j["tail"] = F.tail();
  return j;
}

/// {"backend": "piecewise", "knots": [[x, yl, yr], ...]},
/// {"backend": "analytic", "family": ..., "params": {...}} or {"epsilon": a}.
inline DistFn distfn_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  if (j.contains("epsilon"))
    return detail::at_path(path, [&] {
      return epsilon(detail::get_number(j["epsilon"], path + ".epsilon"));
    });
  const std::string backend =
      detail::get_string(detail::req(j, "backend", path), path + ".backend");
  if (backend == "piecewise") {
    auto ks = detail::get_knots(detail::req(j, "knots", path), path + ".knots");
    return detail::at_path(path, [&] { return DistFn::piecewise(std::move(ks)); });
  }
  if (backend == "analytic") {
    const auto fam =
        detail::get_string(detail::req(j, "family", path), path + ".family");
    const Params ps = j.contains("params")
                          ? detail::get_params(j["params"], path + ".params")
                          : Params{};
    DistFn F = detail::at_path(path, [&] { return analytic_family(fam, ps); });
    if (j.contains("scale"))
      F = detail::at_path(path, [&] {
        return F.scaled(detail::get_number(j["scale"], path + ".scale"));
      });
    return F;
  }
  throw ConfigError(path + ".backend: expected 'piecewise' or 'analytic'");
}

inline json to_json(const NonincreasingProfile& f) {
  json j;
  j["family"] = f.family();
  if (f.is_piecewise()) {
    json ks = json::array();
    for (const auto& k : f.knots())
      ks.push_back(json::array({k.x, k.y_left, k.y_right}));
    j["knots"] = std::move(ks);
  } else {
    json ps = json::object();
    for (const auto& [k, v] : f.params()) ps[k] = v;
    j["params"] = std::move(ps);
  }
  j["tail"] = f.tail();
  return j;
}

/// {"family": "f_ab"|"g_ab"|"h_ab", "params": {"alpha": a, "beta": b}} or
/// {"family": "piecewise", "knots": [...]}.
inline NonincreasingProfile profile_from_json(const json& j,
                                              const std::string& path) {
  const auto fam =
      detail::get_string(detail::req(j, "family", path), path + ".family");
  if (fam == "piecewise") {
    auto ks = detail::get_knots(detail::req(j, "knots", path), path + ".knots");
    return detail::at_path(
        path, [&] { return NonincreasingProfile::piecewise(std::move(ks)); });
  }
  const json& ps = detail::req(j, "params", path);
  const double a = detail::get_number(detail::req(ps, "alpha", path + ".params"),
                                      path + ".params.alpha");
  const double b = detail::get_number(detail::req(ps, "beta", path + ".params"),
                                      path + ".params.beta");
  return detail::at_path(
      path, [&] { return builtin_family(family_from_string(fam), a, b); });
}

/// "tau_M", "tau_Pi", "tau_W", their starred duals and "pointwise_min".
inline TriangleFn triangle_from_string(const std::string& s,
                                       const std::string& path) {
  if (s == "pointwise_min") return TriangleFn::pointwise_min();
  const bool star = !s.empty() && s.back() == '*';
  const std::string core = star ? s.substr(0, s.size() - 1) : s;
  if (core.rfind("tau_", 0) != 0)
    throw ConfigError(path + ": unknown triangle function '" + s + "'");
  const TNorm T = detail::at_path(path, [&] { return TNorm::from_string(core.substr(4)); });
  return star ? TriangleFn::tau_Tstar(T) : TriangleFn::tau_T(T);
}

// ---------------------------------------------------------------------------
// Spaces, plans and sets.

inline NormedCarrier carrier_from_json(const json& j, const std::string& path) {
  const double dim = detail::get_number(detail::req(j, "dim", path), path + ".dim");
  if (!(dim >= 1.0) || dim != std::floor(dim) || dim > 1e6)
    throw ConfigError(path + ".dim: expected a positive integer");
  const std::string norm =
      j.contains("norm") ? detail::get_string(j["norm"], path + ".norm")
                         : "euclidean";
  return detail::at_path(path, [&] {
    return NormedCarrier(static_cast<std::size_t>(dim), norm_from_string(norm));
  });
}

/// Builds a space from
/// {"variant": ..., "carrier": {"dim": d, "norm": n}, "params": {...}}.
inline PNSpace space_from_json(const json& j, const std::string& path = "space") {
  const std::string variant =
      detail::get_string(detail::req(j, "variant", path), path + ".variant");
  const NormedCarrier carrier =
      carrier_from_json(detail::req(j, "carrier", path), path + ".carrier");
  const json empty = json::object();
  const json& ps = j.contains("params") ? j["params"] : empty;
  const std::string pp = path + ".params";
  if (variant == "simple") {
    const DistFn G = distfn_from_json(detail::req(ps, "G", pp), pp + ".G");
    return detail::at_path(path, [&] { return make_simple(carrier, G); });
  }
  if (variant == "alpha_simple") {
    const DistFn G = distfn_from_json(detail::req(ps, "G", pp), pp + ".G");
    const double a = detail::get_number(detail::req(ps, "alpha", pp), pp + ".alpha");
    return detail::at_path(path, [&] { return make_alpha_simple(carrier, G, a); });
  }
  if (variant == "equilateral") {
    const DistFn F = distfn_from_json(detail::req(ps, "F", pp), pp + ".F");
    return detail::at_path(path, [&] { return make_equilateral(carrier, F); });
  }
  if (variant == "f_menger") {
    const auto f = profile_from_json(detail::req(ps, "f", pp), pp + ".f");
    const TNorm T = detail::at_path(pp + ".T", [&] {
      return TNorm::from_string(detail::get_string(detail::req(ps, "T", pp), pp + ".T"));
    });
    std::optional<TriangleFn> star;
    if (ps.contains("tau_star"))
      star = triangle_from_string(detail::get_string(ps["tau_star"], pp + ".tau_star"),
                                  pp + ".tau_star");
    return detail::at_path(path, [&] { return make_f_menger(carrier, f, T, star); });
  }
  if (variant == "custom") {
    const std::string cons = detail::get_string(
        detail::req(ps, "construction", pp), pp + ".construction");
    if (cons != "value_scaled")
      throw ConfigError(pp + ".construction: only 'value_scaled' is supported");
    json base = detail::req(ps, "base", pp);
    if (!base.contains("carrier")) base["carrier"] = j["carrier"];
    const PNSpace b = space_from_json(base, pp + ".base");
    const double c = detail::get_number(detail::req(ps, "factor", pp), pp + ".factor");
    if (!(c > 0.0 && c <= 1.0)) throw ConfigError(pp + ".factor: need 0 < c <= 1");
    return make_value_scaled(b, c);
  }
  throw ConfigError(path + ".variant: unknown variant '" + variant + "'");
}

/// Overrides plan fields from {"seed", "vectors", "n_max", "tol",
/// "convergence_tol"}.
inline SamplePlan plan_from_json(const json& j, SamplePlan plan = {},
                                 const std::string& path = "plan") {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  auto count = [&](const char* key) {
    const double v = detail::get_number(j[key], path + "." + key);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e15)
      throw ConfigError(path + "." + key + ": expected a positive integer");
    return static_cast<std::uint64_t>(v);
  };
  if (j.contains("seed")) {
    const json& sj = j["seed"];
    if (!sj.is_number_unsigned() && !(sj.is_number_integer() && sj.get<std::int64_t>() >= 0))
      throw ConfigError(path + ".seed: expected an unsigned integer");
    plan.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("vectors")) plan.vectors = count("vectors");
  if (j.contains("n_max")) plan.n_max = count("n_max");
  auto positive = [&](const char* key) {
    const double v = detail::get_number(j[key], path + "." + key);
    if (!(v > 0.0)) throw ConfigError(path + "." + key + ": must be > 0");
    return v;
  };
  if (j.contains("tol")) plan.tol = positive("tol");
  if (j.contains("convergence_tol")) plan.convergence_tol = positive("convergence_tol");
  detail::at_path(path, [&] {
    plan.validate();
    return 0;
  });
  return plan;
}

inline VectorPoint point_from_json(const json& j, const NormedCarrier& carrier,
                                   const std::string& path) {
  const auto c = detail::get_numbers(j, path);
  if (c.size() != carrier.dim)
    throw ConfigError(detail::concat(path, ": expected ", carrier.dim, " coordinates"));
  return detail::at_path(path, [&] { return VectorPoint(c); });
}

/// Set kinds: ball {center, radius, open}, finite {points}, whole,
/// random {count, seed, scale} and neighborhood {center, t}.
inline SetSpec set_from_json(const json& j, const PNSpace& space,
                             const std::string& path) {
  const auto& carrier = space.carrier();
  const std::string kind = detail::get_string(detail::req(j, "kind", path), path + ".kind");
  const std::string label = j.contains("label") ? detail::get_string(j["label"], path + ".label") : "";
  auto center = [&] {
    return j.contains("center") ? point_from_json(j["center"], carrier, path + ".center")
                                : carrier.zero();
  };
  if (kind == "ball") {
    const double r = detail::get_number(detail::req(j, "radius", path), path + ".radius");
    const bool open = j.value("open", true);
    return detail::at_path(path, [&] { return SetSpec::ball(center(), r, open, label); });
  }
  if (kind == "finite") {
    const json& pts = detail::req(j, "points", path);
    if (!pts.is_array()) throw ConfigError(path + ".points: expected an array");
    std::vector<VectorPoint> v;
    for (std::size_t i = 0; i < pts.size(); ++i)
      v.push_back(point_from_json(pts[i], carrier, detail::concat(path, ".points[", i, "]")));
    return detail::at_path(path, [&] { return SetSpec::finite(std::move(v), label); });
  }
  if (kind == "whole") return SetSpec::whole(label.empty() ? "whole space" : label);
  if (kind == "random") {
    const double n = detail::get_number(detail::req(j, "count", path), path + ".count");
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e6)
      throw ConfigError(path + ".count: expected a positive integer");
    const double scale = j.contains("scale") ? detail::get_number(j["scale"], path + ".scale") : 1.0;
    if (!(scale > 0.0)) throw ConfigError(path + ".scale: must be > 0");
    const std::uint64_t seed = j.value("seed", std::uint64_t{1});
    auto pts = sample_vectors(carrier.dim, static_cast<std::size_t>(n), seed);
    for (auto& p : pts) p = scale * p;
    return SetSpec::finite(std::move(pts),
                           label.empty() ? detail::concat("random sample of ", n, " (seed ", seed, ", scale ", scale, ")") : label);
  }
  if (kind == "neighborhood") {
    const double t = detail::get_number(detail::req(j, "t", path), path + ".t");
    return detail::at_path(path, [&] { return strong_neighborhood_set(space, center(), t); });
  }
  throw ConfigError(path + ".kind: unknown set kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Reports.

inline json to_json(const Verdict& v) {
  json j;
  j["check"] = v.check;
  j["pass"] = v.pass;
  j["message"] = v.message;
  json m = json::object();
  for (const auto& [k, x] : v.metrics) m[k] = detail::num(x);
  j["metrics"] = std::move(m);
  j["witnesses"] = v.witnesses;
  if (v.seed) j["seed"] = *v.seed;
  j["samples"] = v.samples;
  j["trajectory_points"] = v.trajectory.size();
  return j;
}

inline json to_json(const AxiomReport& r) {
  json j;
  j["pass"] = r.pass();
  j["tol_convolution"] = r.tol_used;
  j["seed"] = r.seed;
  j["worst_violation"] = detail::num(r.worst());
  j["N1"] = to_json(r.n1);
  j["N2"] = to_json(r.n2);
  j["N3"] = to_json(r.n3);
  j["N4"] = to_json(r.n4);
  return j;
}

inline json to_json(const BoundednessReport& r) {
  json j;
  j["agree"] = r.pass();
  j["disagreements"] = r.disagreements();
  json es = json::array();
  for (const auto& e : r.entries) {
    json x;
    x["set"] = e.label;
    x["agree"] = e.agree();
    x["radius_tail"] = detail::num(*e.d_bounded.get("radius_tail"));
    x["d_bounded"] = to_json(e.d_bounded);
    x["topologically_bounded"] = to_json(e.topologically_bounded);
    es.push_back(std::move(x));
  }
  j["sets"] = std::move(es);
  return j;
}

inline json to_json(const NormabilityCertificate& c) {
  json j;
  j["verdict"] = c.verdict;
  j["witness_t"] = c.witness_t ? json(*c.witness_t) : json(nullptr);
  j["method"] = c.method;
  j["branch"] = c.branch;
  j["caveat"] = c.caveat;
  j["tv_floor"] = detail::num(c.tv_floor);
  j["branches_agree"] = c.branches_agree ? json(*c.branches_agree) : json(nullptr);
  json es = json::array();
  for (const auto& e : c.entries) {
    json x;
    x["t"] = e.t;
    x["convexity"] = to_json(e.convexity);
    x["d_bounded"] = e.d_bounded ? to_json(*e.d_bounded) : json(nullptr);
    x["topologically_bounded"] = to_json(e.topologically_bounded);
    es.push_back(std::move(x));
  }
  j["entries"] = std::move(es);
  return j;
}

/// 64-bit FNV-1a as 16 hex digits.
inline std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Hash of the canonical (compact, order-preserving) dump of a config.
inline std::string config_hash(const json& config) { return fnv1a64(config.dump()); }

}  // namespace pnspace
