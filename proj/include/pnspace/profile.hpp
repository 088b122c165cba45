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

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pnspace/common.hpp"
#include "pnspace/distfun.hpp"

namespace pnspace {

/// A right-continuous nonincreasing map f : [0, ∞) → [0, 1].
///
/// Piecewise profiles use the same knot layout as DistFn but read
/// right-continuously: f(x_i) = y_right_i, with y_left_i >= y_right_i.
class NonincreasingProfile {
 public:
  static NonincreasingProfile analytic(std::string family, Params params,
                                       std::function<double(double)> f,
                                       double tail) {
    if (!f) throw ConstructionError("profile needs a formula");
    if (!detail::in_unit(tail)) throw ConstructionError("tail must be in [0,1]");
    NonincreasingProfile p;
    p.family_ = std::move(family);
    p.params_ = std::move(params);
    p.fn_ = std::make_shared<const std::function<double(double)>>(std::move(f));
    p.tail_ = tail;
    return p;
  }

  static NonincreasingProfile piecewise(std::vector<Knot> knots) {
    if (knots.empty() || knots.front().x != 0.0)
      throw ConstructionError("piecewise profile must start at x = 0");
    double prev_x = -1.0;
    double prev_y = 1.0;
    for (const auto& k : knots) {
      if (!std::isfinite(k.x) || k.x <= prev_x)
        throw ConstructionError("profile knots must be strictly increasing");
      if (!detail::in_unit(k.y_left) || !detail::in_unit(k.y_right) ||
          k.y_right > k.y_left || k.y_left > prev_y)
        throw ConstructionError(
            detail::concat("profile must be nonincreasing at x = ", k.x));
      prev_x = k.x;
      prev_y = k.y_right;
    }
    NonincreasingProfile p;
    p.family_ = "piecewise";
    p.knots_ = std::move(knots);
    p.tail_ = p.knots_.back().y_right;
    return p;
  }

  const std::string& family() const { return family_; }
  const Params& params() const { return params_; }
  const std::vector<Knot>& knots() const { return knots_; }
  bool is_piecewise() const { return fn_ == nullptr; }

  /// lim_{x→∞} f(x).
  double tail() const { return tail_; }

  double eval(double x) const {
    if (std::isnan(x) || x < 0.0)
      throw DomainError("profile argument must be >= 0");
    if (x == kInf) return tail_;
    if (fn_) return std::clamp((*fn_)(x), 0.0, 1.0);
    auto it = std::upper_bound(
        knots_.begin(), knots_.end(), x,
        [](double v, const Knot& k) { return v < k.x; });
    // it points past the last knot with k.x <= x.
    const Knot& lo = *(it - 1);
    if (lo.x == x || it == knots_.end()) return lo.y_right;
    const double w = (x - lo.x) / (it->x - lo.x);
    return lo.y_right + w * (it->y_left - lo.y_right);
  }

  double operator()(double x) const { return eval(x); }

  /// f(x−) for x > 0; f(0) at 0.
  double left_limit(double x) const {
    if (x <= 0.0) return eval(0.0);
    if (x == kInf) return tail_;
    if (fn_) return eval(x);
    for (const auto& k : knots_)
      if (k.x == x) return k.y_left;
    return eval(x);
  }

 private:
  std::string family_;
  Params params_;
  std::shared_ptr<const std::function<double(double)>> fn_;
  std::vector<Knot> knots_;
  double tail_ = 0.0;
};

/// f^{[-1]}(y) = sup{x : f(x) > y}, with f^{[-1]}(1) = 0. May be +∞.
///
/// The boundary is located by bisection over doubles down to adjacent
/// representable values [lo, hi] with f(lo) > y >= f(hi); `hi` is returned so
/// that f(x0) > y0 ⇔ x0 < f^{[-1]}(y0) holds for every double x0 whenever f is
/// monotone in floating point. Returns +∞ when f(10⁹) > y.
inline double quasi_inverse(const NonincreasingProfile& f, double y) {
  if (std::isnan(y) || y < 0.0 || y > 1.0)
    throw DomainError("quasi_inverse: y must lie in [0, 1]");
  if (y == 1.0) return 0.0;
  if (!(f.eval(0.0) > y)) return 0.0;
  if (f.is_piecewise()) {
    // {f > y} = [0, r): r is the first knot with f(x_i) <= y, or the
    // crossing inside the segment that ends there.
    if (f.tail() > y) return kInf;
    const auto& ks = f.knots();
    for (std::size_t i = 1; i < ks.size(); ++i) {
      if (ks[i].y_left < y) {
        const double a = ks[i - 1].y_right;
        return ks[i - 1].x + (a - y) / (a - ks[i].y_left) * (ks[i].x - ks[i - 1].x);
      }
      if (ks[i].y_right <= y) return ks[i].x;
    }
    return kInf;
  }
  if (f.eval(kUnboundedProbe) > y) return kInf;
  double lo = 0.0;
  double hi = kUnboundedProbe;
  for (int i = 0; i < 4000; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (f.eval(mid) > y ? lo : hi) = mid;
  }
  return hi;
}

/// Built-in families of admissible profiles.
enum class FamilyTag { f_ab, g_ab, h_ab };

inline const char* to_string(FamilyTag t) {
  switch (t) {
    case FamilyTag::f_ab: return "f_ab";
    case FamilyTag::g_ab: return "g_ab";
    case FamilyTag::h_ab: return "h_ab";
  }
  return "?";
}

inline FamilyTag family_from_string(const std::string& s) {
  if (s == "f_ab") return FamilyTag::f_ab;
  if (s == "g_ab") return FamilyTag::g_ab;
  if (s == "h_ab") return FamilyTag::h_ab;
  throw ConstructionError("unknown profile family '" + s + "'");
}

/// f_ab(x) = 1 − β/α + β/(x + α),  0 <= β <= α, α > 0.
/// g_ab(x) = 1 − α + α·exp(−x^β),  0 < α <= 1, β > 0.
/// h_ab(x) = 1 − αx on [0, β], 1 − αβ beyond,  α > 0, 0 < β <= 1/α.
inline NonincreasingProfile builtin_family(FamilyTag tag, double alpha,
                                           double beta) {
  const Params params{{"alpha", alpha}, {"beta", beta}};
  const auto bad = [&](const char* why) {
    return ConstructionError(detail::concat(to_string(tag), "(alpha=", alpha,
                                            ", beta=", beta, "): ", why));
  };
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw bad("non-finite");
  switch (tag) {
    case FamilyTag::f_ab:
      if (!(alpha > 0.0)) throw bad("need alpha > 0");
      if (!(beta >= 0.0 && beta <= alpha)) throw bad("need 0 <= beta <= alpha");
      return NonincreasingProfile::analytic(
          "f_ab", params,
          [alpha, beta](double x) {
            return 1.0 - beta / alpha + beta / (x + alpha);
          },
          1.0 - beta / alpha);
    case FamilyTag::g_ab:
      if (!(alpha > 0.0 && alpha <= 1.0)) throw bad("need 0 < alpha <= 1");
      if (!(beta > 0.0)) throw bad("need beta > 0");
      return NonincreasingProfile::analytic(
          "g_ab", params,
          [alpha, beta](double x) {
            return 1.0 - alpha + alpha * std::exp(-std::pow(x, beta));
          },
          1.0 - alpha);
    case FamilyTag::h_ab:
      if (!(alpha > 0.0)) throw bad("need alpha > 0");
      if (!(beta > 0.0 && beta <= 1.0 / alpha))
        throw bad("need 0 < beta <= 1/alpha");
      return NonincreasingProfile::analytic(
          "h_ab", params,
          [alpha, beta](double x) {
            return x <= beta ? 1.0 - alpha * x : 1.0 - alpha * beta;
          },
          1.0 - alpha * beta);
  }
  throw bad("unknown family");
}

}  // namespace pnspace
