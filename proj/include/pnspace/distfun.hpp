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

// Distance distribution functions (elements of Δ⁺) and their metric
// geometry under the Sibley (modified Lévy) metric.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pnspace/common.hpp"

namespace pnspace {

/// A knot of a piecewise distribution function. The function jumps from
/// `y_left` to `y_right` at `x`; evaluation at `x` returns `y_left`.
struct Knot {
  double x = 0.0;
  double y_left = 0.0;
  double y_right = 0.0;

  friend bool operator==(const Knot&, const Knot&) = default;
};

using Params = std::vector<std::pair<std::string, double>>;

/// An element of Δ⁺.
///
/// Two backends share one value type:
///  * piecewise: ordered knots starting at x = 0, linear between
///    (x_i, y_right_i) and (x_{i+1}, y_left_{i+1}), constant after the last
///    knot;
///  * analytic: a named monotone formula `base`, evaluated as
///    F(x) = base(x / scale) for x > 0 and F(x) = 0 for x <= 0. The formula is
///    assumed continuous on (0, ∞), so F(0+) = base(0).
///
/// Every DistFn is left-continuous and F(0) = 0.
class DistFn {
 public:
  enum class Backend { piecewise, analytic };

  /// Build a piecewise DistFn; validates the knot invariants.
  static DistFn piecewise(std::vector<Knot> knots, bool approximate = false) {
    if (knots.empty()) throw ConstructionError("piecewise DistFn needs knots");
    if (knots.front().x != 0.0 || knots.front().y_left != 0.0)
      throw ConstructionError("first knot must be (0, 0, y) so that F(0) = 0");
    double prev_x = -1.0;
    double prev_y = 0.0;
    for (const auto& k : knots) {
      if (!std::isfinite(k.x) || k.x <= prev_x)
        throw ConstructionError("knot abscissae must be finite and strictly "
                                "increasing");
      if (!detail::in_unit(k.y_left) || !detail::in_unit(k.y_right))
        throw ConstructionError("knot values must lie in [0, 1]");
      if (k.y_left > k.y_right || k.y_left < prev_y)
        throw ConstructionError(
            detail::concat("knot values must be nondecreasing at x = ", k.x));
      prev_x = k.x;
      prev_y = k.y_right;
    }
    DistFn f;
    f.backend_ = Backend::piecewise;
    f.knots_ = std::move(knots);
    f.tail_ = f.knots_.back().y_right;
    f.approximate_ = approximate;
    f.family_ = "piecewise";
    return f;
  }

  struct AnalyticSpec {
    std::string family;
    Params params;
    std::function<double(double)> base;
    std::function<double(double)> inverse;  // optional exact inverse of base
    std::function<double(double)> right;    // optional right limit of base
    double tail = 1.0;
    bool continuous = true;           // base(0) = 0 and continuous
    bool strictly_increasing = true;  // on the region where base < tail
  };

  static DistFn analytic(AnalyticSpec spec) {
    if (!spec.base) throw ConstructionError("analytic DistFn needs a formula");
    if (!detail::in_unit(spec.tail))
      throw ConstructionError("tail must lie in [0, 1]");
    DistFn f;
    f.backend_ = Backend::analytic;
    f.family_ = std::move(spec.family);
    f.params_ = std::move(spec.params);
    f.base_ = std::make_shared<const std::function<double(double)>>(
        std::move(spec.base));
    if (spec.inverse)
      f.inverse_ = std::make_shared<const std::function<double(double)>>(
          std::move(spec.inverse));
    if (spec.right)
      f.right_ = std::make_shared<const std::function<double(double)>>(
          std::move(spec.right));
    f.tail_ = spec.tail;
    f.continuous_ = spec.continuous;
    f.strictly_increasing_ = spec.strictly_increasing;
    return f;
  }

  Backend backend() const { return backend_; }
  bool is_piecewise() const { return backend_ == Backend::piecewise; }
  const std::vector<Knot>& knots() const { return knots_; }
  const std::string& family() const { return family_; }
  const Params& params() const { return params_; }
  double scale() const { return scale_; }
  bool approximate() const { return approximate_; }

  /// lim_{x→∞} F(x).
  double tail() const { return tail_; }

  /// F(x) with the Δ convention F = 0 on (-∞, 0] and F(+∞) = 1.
  double eval(double x) const {
    if (x == kInf) return 1.0;
    if (!(x > 0.0)) return 0.0;
    if (backend_ == Backend::analytic) return clamp((*base_)(x / scale_));
    auto it = std::lower_bound(
        knots_.begin(), knots_.end(), x,
        [](const Knot& k, double v) { return k.x < v; });
    if (it == knots_.end()) return knots_.back().y_right;
    if (it->x == x) return it->y_left;
    const Knot& lo = *(it - 1);
    const double w = (x - lo.x) / (it->x - lo.x);
    return lo.y_right + w * (it->y_left - lo.y_right);
  }

  double operator()(double x) const { return eval(x); }

  /// F(x+).
  double right_limit(double x) const {
    if (x == kInf) return 1.0;
    if (x < 0.0) return 0.0;
    if (backend_ == Backend::analytic)
      return clamp(right_ ? (*right_)(x / scale_) : (*base_)(x / scale_));
    auto it = std::lower_bound(
        knots_.begin(), knots_.end(), x,
        [](const Knot& k, double v) { return k.x < v; });
    if (it != knots_.end() && it->x == x) return it->y_right;
    return eval(x);
  }

  /// x ↦ F(x / s) for s > 0.
  DistFn scaled(double s) const {
    if (!(s > 0.0) || !std::isfinite(s))
      throw DomainError("scale factor must be positive and finite");
    DistFn out = *this;
    if (backend_ == Backend::piecewise) {
      for (auto& k : out.knots_) k.x *= s;
    } else {
      out.scale_ *= s;
    }
    return out;
  }

  /// True iff F = ε_0, i.e. F(0+) = 1.
  bool is_identity() const { return right_limit(0.0) == 1.0; }

  /// Continuous on [0, ∞) (no jumps, F(0+) = 0).
  bool continuous() const {
    if (backend_ == Backend::analytic) return continuous_;
    for (const auto& k : knots_)
      if (k.y_left != k.y_right) return false;
    return true;
  }

  /// Strictly increasing on {x : F(x) < tail}.
  bool strictly_increasing() const {
    if (backend_ == Backend::analytic) return strictly_increasing_;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
      if (knots_[i].y_right >= tail_) break;
      if (!(knots_[i + 1].y_left > knots_[i].y_right)) return false;
    }
    return true;
  }

  /// Exact inverse of the continuous increasing part, when one is known.
  std::optional<double> exact_inverse(double y) const {
    if (backend_ == Backend::analytic) {
      if (!inverse_) return std::nullopt;
      return scale_ * (*inverse_)(y);
    }
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
      const Knot& a = knots_[i];
      const Knot& b = knots_[i + 1];
      if (y >= a.y_right && y <= b.y_left && b.y_left > a.y_right)
        return a.x + (y - a.y_right) * (b.x - a.x) / (b.y_left - a.y_right);
    }
    return std::nullopt;
  }

  /// Largest knot abscissa (0 for analytic backends).
  double last_knot() const {
    return backend_ == Backend::piecewise ? knots_.back().x : 0.0;
  }

 private:
  static double clamp(double v) { return std::clamp(v, 0.0, 1.0); }

  Backend backend_ = Backend::piecewise;
  std::vector<Knot> knots_;
  std::string family_;
  Params params_;
  std::shared_ptr<const std::function<double(double)>> base_;
  std::shared_ptr<const std::function<double(double)>> inverse_;
  std::shared_ptr<const std::function<double(double)>> right_;
  double scale_ = 1.0;
  double tail_ = 1.0;
  bool continuous_ = true;
  bool strictly_increasing_ = true;
  bool approximate_ = false;
};

// ---------------------------------------------------------------------------
// Constructors for common elements of Δ⁺.

/// ε_a: 0 on [0, a], 1 on (a, ∞). ε_∞ is identically 0 on finite arguments.
inline DistFn epsilon(double a) {
  if (std::isnan(a) || a < 0.0) throw DomainError("epsilon: a must be >= 0");
  if (a == kInf) return DistFn::piecewise({{0.0, 0.0, 0.0}});
  if (a == 0.0) return DistFn::piecewise({{0.0, 0.0, 1.0}});
  return DistFn::piecewise({{0.0, 0.0, 0.0}, {a, 0.0, 1.0}});
}

/// The plateau 0 at 0 and c on (0, ∞).
inline DistFn constant_plateau(double c) {
  if (!detail::in_unit(c)) throw DomainError("plateau value must be in [0,1]");
  return DistFn::piecewise({{0.0, 0.0, c}});
}

/// min(x / b, 1).
inline DistFn uniform_ramp(double b = 1.0) {
  if (!(b > 0.0)) throw DomainError("uniform_ramp: b must be positive");
  return DistFn::piecewise({{0.0, 0.0, 0.0}, {b, 1.0, 1.0}});
}

/// c · x / (x + b).
inline DistFn rational(double c = 1.0, double b = 1.0) {
  if (!(c > 0.0 && c <= 1.0) || !(b > 0.0))
    throw DomainError("rational: need 0 < c <= 1 and b > 0");
  DistFn::AnalyticSpec s;
  s.family = "rational";
  s.params = {{"c", c}, {"b", b}};
  s.base = [c, b](double x) { return c * x / (x + b); };
  s.inverse = [c, b](double y) { return b * y / (c - y); };
  s.tail = c;
  return DistFn::analytic(std::move(s));
}

/// c · (1 − exp(−λ x)).
inline DistFn exponential(double c = 1.0, double lambda = 1.0) {
  if (!(c > 0.0 && c <= 1.0) || !(lambda > 0.0))
    throw DomainError("exponential: need 0 < c <= 1 and lambda > 0");
  DistFn::AnalyticSpec s;
  s.family = "exponential";
  s.params = {{"c", c}, {"lambda", lambda}};
  s.base = [c, lambda](double x) { return c * -std::expm1(-lambda * x); };
  s.inverse = [c, lambda](double y) { return -std::log1p(-y / c) / lambda; };
  s.tail = c;
  return DistFn::analytic(std::move(s));
}

/// a + (1 − a) · x / (x + 1) on (0, ∞): a jump of height a at the origin.
inline DistFn lifted_rational(double a) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError("lifted_rational: 0 <= a < 1");
  DistFn::AnalyticSpec s;
  s.family = "lifted_rational";
  s.params = {{"a", a}};
  s.base = [a](double x) { return a + (1.0 - a) * x / (x + 1.0); };
  s.tail = 1.0;
  s.continuous = (a == 0.0);
  return DistFn::analytic(std::move(s));
}

/// x ↦ c·F(x) on finite arguments, c ∈ (0, 1]. Used to build corrupted
/// probabilistic norms for negative controls.
inline DistFn value_scaled(const DistFn& F, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("value_scaled: need 0 < c <= 1");
  if (F.is_piecewise()) {
    std::vector<Knot> ks = F.knots();
    for (auto& k : ks) {
      k.y_left *= c;
      k.y_right *= c;
    }
    return DistFn::piecewise(std::move(ks), F.approximate());
  }
  DistFn::AnalyticSpec s;
  s.family = "value_scaled(" + F.family() + ")";
  s.params = F.params();
  s.params.emplace_back("factor", c);
  s.base = [F, c](double x) { return c * F.eval(x); };
  s.right = [F, c](double x) { return c * F.right_limit(x); };
  s.tail = c * F.tail();
  s.continuous = F.continuous();
  s.strictly_increasing = F.strictly_increasing();
  return DistFn::analytic(std::move(s));
}

/// Rebuild an analytic DistFn from its family name and parameters.
inline DistFn analytic_family(const std::string& family, const Params& params) {
  auto get = [&](const std::string& key, double fallback) {
    for (const auto& kv : params)
      if (kv.first == key) return kv.second;
    return fallback;
  };
  if (family == "rational") return rational(get("c", 1.0), get("b", 1.0));
  if (family == "exponential")
    return exponential(get("c", 1.0), get("lambda", 1.0));
  if (family == "lifted_rational") return lifted_rational(get("a", 0.5));
  throw ConstructionError("unknown analytic family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Operations.

/// F(x) for x >= 0 or x = +∞ (F(+∞) = 1).
inline double ddf_eval(const DistFn& F, double x) {
  if (std::isnan(x) || x < 0.0)
    throw DomainError("ddf_eval: argument must be >= 0 or +inf");
  return F.eval(x);
}

/// F ∈ 𝒟⁺.
inline bool is_proper(const DistFn& F, double tol = kTolTail) {
  return F.tail() >= 1.0 - tol;
}

/// d_S(F, ε_0) = inf{h : F(h+) > 1 − h}, capped at 1.
///
/// Exact from the knots for piecewise functions; bisection on the continuous
/// map h ↦ F(h+) + h otherwise.
inline double distance_to_identity(const DistFn& F) {
  if (F.is_piecewise()) {
    const auto& ks = F.knots();
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const Knot& k = ks[i];
      if (k.x >= 1.0) return 1.0;
      if (k.y_right + k.x >= 1.0) return k.x;
      if (i + 1 < ks.size()) {
        const Knot& n = ks[i + 1];
        const double slope = (n.y_left - k.y_right) / (n.x - k.x);
        const double h = k.x + (1.0 - k.y_right - k.x) / (slope + 1.0);
        if (h < n.x) return std::min(h, 1.0);
      } else {
        return std::min(1.0 - k.y_right, 1.0);
      }
    }
    return 1.0;
  }
  auto reached = [&](double h) { return F.right_limit(h) + h >= 1.0; };
  if (reached(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i)
    (reached(0.5 * (lo + hi)) ? hi : lo) = 0.5 * (lo + hi);
  return hi;
}

namespace detail {

// [F, G; h] and [G, F; h] on (0, 1/h), checked at the exact breakpoint set
// using both one-sided limits. Exact for piecewise arguments; analytic
// arguments add a uniform grid.
inline bool levy_band_holds(const DistFn& F, const DistFn& G, double h) {
  const double upper = 1.0 / h;
  std::vector<double> cand{0.0, upper};
  auto add_shifted = [&](double k) {
    for (double c : {k, k - h, k + h})
      if (c >= 0.0 && c <= upper) cand.push_back(c);
  };
  for (const auto& k : F.knots()) add_shifted(k.x);
  for (const auto& k : G.knots()) add_shifted(k.x);
  if (!F.is_piecewise() || !G.is_piecewise())
    for (double c : linspace(0.0, std::min(upper, 1e6), 513)) cand.push_back(c);
  constexpr double slack = 1e-15;
  auto band = [&](const DistFn& A, const DistFn& B, double c, bool right) {
    auto ev = [&](const DistFn& D, double x) {
      return right ? D.right_limit(x) : D.eval(x);
    };
    const double b = ev(B, c);
    return ev(A, c - h) - h <= b + slack && b <= ev(A, c + h) + h + slack;
  };
  for (double c : cand) {
    if (c > 0.0 && (!band(F, G, c, false) || !band(G, F, c, false)))
      return false;
    if (c < upper && (!band(F, G, c, true) || !band(G, F, c, true)))
      return false;
  }
  return true;
}

inline double sibley_bisect(const DistFn& F, const DistFn& G) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (levy_band_holds(F, G, mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace detail

/// Sibley (modified Lévy) distance on Δ⁺:
/// d_S(F, G) = inf{h ∈ (0, 1] : F(x − h) − h ≤ G(x) ≤ F(x + h) + h and the
/// same with F, G swapped, for all x ∈ (0, 1/h)}.
inline double sibley_distance(const DistFn& F, const DistFn& G) {
  if (G.is_identity()) return distance_to_identity(F);
  if (F.is_identity()) return distance_to_identity(G);
  return detail::sibley_bisect(F, G);
}

namespace detail {

/// Thin a trajectory for reports: every index up to 100, then ~200 log-spaced.
inline std::vector<std::pair<double, double>> thin_trajectory(
    const std::vector<double>& d) {
  std::vector<std::pair<double, double>> out;
  std::size_t next = 1;
  for (std::size_t n = 1; n <= d.size(); ++n) {
    if (n <= 100 || n == next || n == d.size()) {
      out.emplace_back(static_cast<double>(n), d[n - 1]);
      if (n >= 100) next = std::max(n + 1, static_cast<std::size_t>(n * 1.035));
    }
  }
  return out;
}

/// Locates the first index after which every term is below tol.
inline void summarize_trajectory(Verdict& v, const std::vector<double>& d,
                                 double tol) {
  std::size_t settle = d.size() + 1;
  for (std::size_t n = d.size(); n >= 1; --n) {
    if (!(d[n - 1] < tol)) break;
    settle = n;
  }
  const std::size_t quarter = (d.size() + 3) / 4;
  double floor_v = kInf;
  for (std::size_t n = d.size() - quarter; n < d.size(); ++n)
    floor_v = std::min(floor_v, d[n]);
  v.metric("tolerance", tol);
  v.metric("settle_index", settle <= d.size() ? static_cast<double>(settle)
                                              : -1.0);
  v.metric("floor", floor_v);
  v.metric("final", d.back());
  v.trajectory = thin_trajectory(d);
  v.samples = d.size();
}

}  // namespace detail

/// Weak convergence F_n → target, measured by d_S(F_n, target) for
/// n = 1..n_max. Passes iff the distance stays below tol from some index on.
inline Verdict converges_weakly(
    const std::function<DistFn(std::size_t)>& seq, const DistFn& target,
    std::size_t n_max, double tol) {
  if (n_max == 0) throw DomainError("converges_weakly: n_max must be >= 1");
  std::vector<double> d;
  d.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n)
    d.push_back(sibley_distance(seq(n), target));
  Verdict v("converges_weakly", false);
  detail::summarize_trajectory(v, d, tol);
  v.pass = *v.get("settle_index") > 0.0;
  v.message = v.pass ? "distance settles below tolerance"
                     : "distance does not settle below tolerance";
  return v;
}

/// G⁻¹(y) for continuous, strictly increasing G ∈ 𝒟⁺.
inline double increasing_inverse(const DistFn& G, double y) {
  if (!G.continuous() || !G.strictly_increasing() || !is_proper(G))
    throw PreconditionError("increasing_inverse",
                            "G must be continuous, strictly increasing and "
                            "proper");
  if (!(y > 0.0 && y < 1.0))
    throw DomainError("increasing_inverse: y must lie in (0, 1)");
  if (auto x = G.exact_inverse(y)) return *x;
  double lo = 0.0, hi = 1.0;
  while (G.eval(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (hi > kUnboundedProbe)
      throw DomainError("increasing_inverse: value not reached");
  }
  for (int i = 0; i < 200 && hi - lo > kTolRoot * 1e-3; ++i) {
    const double mid = 0.5 * (lo + hi);
    (G.eval(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace pnspace
