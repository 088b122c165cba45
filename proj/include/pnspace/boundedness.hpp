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

// Probabilistic radius, D-boundedness and topological boundedness.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pnspace/axioms.hpp"
#include "pnspace/common.hpp"
#include "pnspace/distfun.hpp"
#include "pnspace/space.hpp"
#include "pnspace/topology.hpp"

namespace pnspace {

/// A subset A of the carrier.
struct SetSpec {
  enum class Kind { ball, finite, whole, generator };
  using Generator = std::function<std::vector<VectorPoint>(std::uint64_t)>;

  Kind kind = Kind::whole;
  std::string label;
  VectorPoint center;
  double radius = 0.0;
  bool open = true;
  std::vector<VectorPoint> points;
  Generator generate;
  std::uint64_t seed = 0;

  static SetSpec ball(VectorPoint c, double r, bool open = true,
                      std::string label = "") {
    if (!(r > 0.0) || std::isinf(r))
      throw ConstructionError("ball radius must be finite and > 0");
    SetSpec s;
    s.kind = Kind::ball;
    s.center = std::move(c);
    s.radius = r;
    s.open = open;
    s.label = label.empty() ? detail::concat(open ? "open" : "closed",
                                             " ball r=", r, " about ",
                                             s.center.str())
                            : std::move(label);
    return s;
  }
  static SetSpec finite(std::vector<VectorPoint> pts, std::string label = "") {
    if (pts.empty()) throw ConstructionError("finite set must be nonempty");
    SetSpec s;
    s.kind = Kind::finite;
    s.points = std::move(pts);
    s.label = label.empty() ? detail::concat("finite set of ", s.points.size())
                            : std::move(label);
    return s;
  }
  static SetSpec whole(std::string label = "whole space") {
    SetSpec s;
    s.kind = Kind::whole;
    s.label = std::move(label);
    return s;
  }
  static SetSpec generator(std::string label, Generator g, std::uint64_t seed) {
    if (!g) throw ConstructionError("generator must be callable");
    SetSpec s;
    s.kind = Kind::generator;
    s.label = std::move(label);
    s.generate = std::move(g);
    s.seed = seed;
    return s;
  }

  /// Realized points of a finite or generated set.
  std::vector<VectorPoint> realize() const {
    if (kind == Kind::finite) return points;
    if (kind == Kind::generator) {
      auto pts = generate(seed);
      if (pts.empty()) throw DomainError("set '" + label + "' is empty");
      return pts;
    }
    throw DomainError("set '" + label + "' has no finite realization");
  }
};

struct BoundednessOptions {
  std::size_t ball_samples = 10000;   // sampled Φ_A on balls
  std::size_t argmin_samples = 256;   // adversarial p_n over sampled balls
  std::uint64_t seed = 20260101;
};

namespace detail {

/// Points of the ball c + r·B, half of them within 1e-6·r of the boundary.
inline std::vector<VectorPoint> sample_ball(const NormedCarrier& carrier,
                                            const SetSpec& A, std::size_t count,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<VectorPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    std::vector<double> d(carrier.dim);
    for (double& v : d) v = gauss(rng);
    const VectorPoint dir(d);
    const double nd = carrier.norm(dir);
    if (nd == 0.0) continue;
    double s = out.size() % 2 ? unit(rng) : 1.0 - 1e-6 * unit(rng);
    if (A.open && s >= 1.0) s = std::nextafter(1.0, 0.0);
    out.push_back(A.center + (A.radius * s / nd) * dir);
  }
  return out;
}

/// Largest norm in a ball (approached but not attained when open).
inline double ball_max_norm(const PNSpace& space, const SetSpec& A) {
  return space.norm(A.center) + A.radius;
}

/// A point of norm exactly r on the ray through c (or e_1 when c = θ).
inline VectorPoint ray_point(const PNSpace& space, const VectorPoint& c,
                             double r) {
  const double nc = space.norm(c);
  if (nc == 0.0) return r * VectorPoint::basis(space.carrier().dim, 0);
  return (r / nc) * c;
}

/// lim_{r→R−} ν_r(u) for a radial space.
inline double radial_below(const PNSpace& space, double R, double u) {
  switch (space.variant()) {
    case Variant::simple: return space.G()->right_limit(u / R);
    case Variant::alpha_simple:
      if (space.alpha() == 0.0) return space.G()->eval(u);
      return space.G()->right_limit(u / std::pow(R, space.alpha()));
    case Variant::equilateral: return space.G()->eval(u);
    case Variant::f_menger: return space.f()->left_limit(R);
    case Variant::custom: break;
  }
  throw PreconditionError("is_radial", "space is not radial");
}

/// lim_{r→∞} ν_r(u) for a radial space.
inline double radial_infinity(const PNSpace& space, double u) {
  switch (space.variant()) {
    case Variant::simple: return space.G()->right_limit(0.0);
    case Variant::alpha_simple:
      if (space.alpha() == 0.0) return space.G()->eval(u);
      return space.G()->right_limit(0.0);
    case Variant::equilateral: return space.G()->eval(u);
    case Variant::f_menger: return space.f()->tail();
    case Variant::custom: break;
  }
  throw PreconditionError("is_radial", "space is not radial");
}

inline void require_positive(double u, const char* what) {
  if (std::isnan(u) || u <= 0.0) throw DomainError(concat(what, " must be > 0"));
}

}  // namespace detail

enum class PhiMode { closed_form, sampled };

/// Φ_A(u) = inf{ν_p(u) : p ∈ A}.
///
/// Radial spaces use the closed form: ν_p(u) is nonincreasing in ‖p‖, so the
/// infimum over a ball sits at its largest norm. Sampled mode and non-radial
/// spaces take the minimum over sampled points instead.
inline double phi_inf(const PNSpace& space, const SetSpec& A, double u,
                      PhiMode mode = PhiMode::closed_form,
                      const BoundednessOptions& opt = {}) {
  detail::require_positive(u, "phi_inf: u");
  auto min_over = [&](const std::vector<VectorPoint>& pts) {
    double m = 1.0;
    for (const auto& p : pts) m = std::min(m, space.nu(p).eval(u));
    return m;
  };
  switch (A.kind) {
    case SetSpec::Kind::finite:
    case SetSpec::Kind::generator:
      return min_over(A.realize());
    case SetSpec::Kind::whole:
      if (!space.is_radial())
        throw DomainError("whole-space sets need a radial space");
      return detail::radial_infinity(space, u);
    case SetSpec::Kind::ball: {
      if (mode == PhiMode::sampled || !space.is_radial())
        return min_over(detail::sample_ball(space.carrier(), A, opt.ball_samples,
                                            opt.seed));
      const double R = detail::ball_max_norm(space, A);
      if (!A.open)
        return space.nu(detail::ray_point(space, A.center, R)).eval(u);
      return detail::radial_below(space, R, u);
    }
  }
  return 1.0;
}

/// R_A(x) = Φ_A(x−). Φ_A is nondecreasing, so the left limit is its value at
/// the largest double below x.
inline double prob_radius(const PNSpace& space, const SetSpec& A, double x,
                          PhiMode mode = PhiMode::closed_form,
                          const BoundednessOptions& opt = {}) {
  detail::require_positive(x, "prob_radius: x");
  if (std::isinf(x)) return phi_inf(space, A, 1e300, mode, opt);
  return phi_inf(space, A, std::nextafter(x, 0.0), mode, opt);
}

/// lim_{x→∞} R_A(x).
inline double radius_tail(const PNSpace& space, const SetSpec& A,
                          const BoundednessOptions& opt = {}) {
  auto min_tail = [&](const std::vector<VectorPoint>& pts) {
    double m = 1.0;
    for (const auto& p : pts) m = std::min(m, space.nu(p).tail());
    return m;
  };
  switch (A.kind) {
    case SetSpec::Kind::finite:
    case SetSpec::Kind::generator:
      return min_tail(A.realize());
    case SetSpec::Kind::whole:
      if (!space.is_radial())
        throw DomainError("whole-space sets need a radial space");
      if (space.variant() == Variant::f_menger) return space.f()->tail();
      if (space.variant() == Variant::equilateral ||
          (space.variant() == Variant::alpha_simple && space.alpha() == 0.0))
        return space.G()->tail();
      return space.G()->right_limit(0.0);
    case SetSpec::Kind::ball: {
      if (!space.is_radial())
        return min_tail(detail::sample_ball(space.carrier(), A, opt.ball_samples,
                                            opt.seed));
      const double R = detail::ball_max_norm(space, A);
      if (space.variant() == Variant::f_menger)
        return A.open ? space.f()->left_limit(R) : space.f()->eval(R);
      return space.nu(detail::ray_point(space, A.center, R)).tail();
    }
  }
  return 1.0;
}

/// D-bounded iff R_A has tail 1.
inline Verdict is_d_bounded(const PNSpace& space, const SetSpec& A,
                            const BoundednessOptions& opt = {}) {
  const double tail = radius_tail(space, A, opt);
  Verdict v("d_bounded", tail >= 1.0 - kTolTail);
  v.metric("radius_tail", tail).metric("tol_tail", kTolTail);
  v.message = v.pass ? "R_A is proper" : "R_A has tail " + detail::fmt_double(tail);
  if (!v.pass) v.witness(A.label + ": lim R_A = " + detail::fmt_double(tail));
  return v;
}

/// α_n p_n → θ for α_n = 1/n and adversarial p_n ∈ A.
///
/// Radial balls take p_n on the ray of largest norm, approaching the boundary
/// of open balls. The whole space takes ‖p_n‖ = n². Finite, generated and
/// non-radial sets take the argmin of ν_p(n²) over their points.
inline Verdict is_topologically_bounded(const PNSpace& space, const SetSpec& A,
                                        const SamplePlan& plan = {},
                                        const BoundednessOptions& opt = {}) {
  plan.validate();
  std::function<VectorPoint(std::size_t)> pick;
  std::vector<VectorPoint> pts;
  const std::size_t dim = space.carrier().dim;
  std::string strategy;
  if (A.kind == SetSpec::Kind::whole) {
    if (!space.is_radial())
      throw DomainError("whole-space sets need a radial space");
    strategy = "norm n^2";
    pick = [dim](std::size_t n) {
      const double nn = static_cast<double>(n);
      return (nn * nn) * VectorPoint::basis(dim, 0);
    };
  } else if (A.kind == SetSpec::Kind::ball && space.is_radial()) {
    strategy = "largest norm";
    const double R = detail::ball_max_norm(space, A);
    pick = [&, R](std::size_t n) {
      const double s =
          A.open ? 1.0 - 1.0 / (static_cast<double>(n) + 1.0) : 1.0;
      return detail::ray_point(space, A.center,
                               space.norm(A.center) + s * (R - space.norm(A.center)));
    };
  } else {
    strategy = "argmin nu_p(n^2)";
    pts = A.kind == SetSpec::Kind::ball
              ? detail::sample_ball(space.carrier(), A, opt.argmin_samples,
                                    opt.seed)
              : A.realize();
    pick = [&](std::size_t n) {
      const double u = static_cast<double>(n) * static_cast<double>(n);
      std::size_t best = 0;
      double best_v = kInf;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double val = space.nu(pts[i]).eval(u);
        if (val < best_v) {
          best_v = val;
          best = i;
        }
      }
      return pts[best];
    };
  }
  Verdict v = detail::settle_verdict(
      "topologically_bounded",
      [&](std::size_t n) {
        return distance_to_identity(
            space.nu((1.0 / static_cast<double>(n)) * pick(n)));
      },
      plan.n_max, plan.convergence_tol);
  v.seed = plan.seed;
  v.metric("tolerance", plan.convergence_tol)
      .metric("n_max", static_cast<double>(plan.n_max));
  if (!v.pass)
    v.witness(A.label + " (" + strategy + "): d_S floor " +
              detail::fmt_double(*v.get("floor")) + ", p_n at n=" +
              std::to_string(plan.n_max) + " is " + pick(plan.n_max).str());
  v.message = v.pass ? "alpha_n p_n -> theta for the adversarial sequence"
                     : "alpha_n p_n stays away from theta";
  return v;
}

struct BoundednessEntry {
  std::string label;
  Verdict d_bounded;
  Verdict topologically_bounded;
  bool agree() const { return d_bounded.pass == topologically_bounded.pass; }
};

struct BoundednessReport {
  std::vector<BoundednessEntry> entries;
  std::size_t disagreements() const {
    return static_cast<std::size_t>(std::count_if(
        entries.begin(), entries.end(), [](const auto& e) { return !e.agree(); }));
  }
  bool pass() const { return disagreements() == 0; }
};

/// Both boundedness verdicts for every set in the panel. In a characteristic
/// Šerstnev space they must agree.
inline BoundednessReport boundedness_equivalence_harness(
    const PNSpace& space, const std::vector<SetSpec>& panel,
    const SamplePlan& plan = {}, const BoundednessOptions& opt = {}) {
  if (!check_serstnev(space, plan).pass)
    throw PreconditionError("check_serstnev", "space is not Serstnev");
  if (!is_characteristic(space, plan).pass)
    throw PreconditionError("is_characteristic", "space is not characteristic");
  BoundednessReport r;
  for (const auto& A : panel)
    r.entries.push_back({A.label, is_d_bounded(space, A, opt),
                         is_topologically_bounded(space, A, plan, opt)});
  return r;
}

namespace detail {

/// inf{x > 0 : G(x) > y}; +∞ when G never exceeds y.
inline double upper_level(const DistFn& G, double y) {
  if (G.right_limit(0.0) > y) return 0.0;
  if (!(G.tail() > y)) return kInf;
  double lo = 0.0, hi = 1.0;
  while (!(G.eval(hi) > y)) {
    lo = hi;
    hi *= 2.0;
  }
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (G.eval(mid) > y ? hi : lo) = mid;
  }
  return lo;
}

}  // namespace detail

/// The strong neighbourhood N_p(t) = {q : ν_{q−p}(t) > 1 − t} as a set.
/// Radial spaces give an open ball, θ-singleton or whole space; custom
/// spaces give a rejection-sampled generator.
inline SetSpec strong_neighborhood_set(const PNSpace& space, const VectorPoint& p,
                                       double t, std::uint64_t seed = 20260101) {
  if (std::isnan(t) || t <= 0.0) throw DomainError("neighborhood: t must be > 0");
  const std::string label = detail::concat("N_", p.str(), "(", t, ")");
  const double y = 1.0 - t;
  double radius = 0.0;
  switch (space.variant()) {
    case Variant::simple:
      radius = t / detail::upper_level(*space.G(), y);
      break;
    case Variant::alpha_simple:
      if (space.alpha() == 0.0)
        radius = space.G()->eval(t) > y ? kInf : 0.0;
      else
        radius = std::pow(t / detail::upper_level(*space.G(), y),
                          1.0 / space.alpha());
      break;
    case Variant::equilateral:
      radius = space.G()->eval(t) > y ? kInf : 0.0;
      break;
    case Variant::f_menger:
      radius = y < 0.0 ? kInf : quasi_inverse(*space.f(), std::min(y, 1.0));
      break;
    case Variant::custom: {
      const PNSpace* sp = &space;
      return SetSpec::generator(
          label,
          [sp, p, t](std::uint64_t s) {
            std::vector<VectorPoint> out{p};
            std::mt19937_64 rng(s);
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            for (int k = -3; k <= 3; ++k)
              for (int i = 0; i < 64; ++i) {
                std::vector<double> c(p.dim());
                for (double& v : c) v = std::pow(10.0, k) * unit(rng);
                const VectorPoint q = p + VectorPoint(c);
                if (neighborhood_contains(*sp, p, t, q)) out.push_back(q);
              }
            return out;
          },
          seed);
    }
  }
  if (std::isinf(radius)) return SetSpec::whole(label);
  if (radius == 0.0) return SetSpec::finite({p}, label);
  return SetSpec::ball(p, radius, true, label);
}

}  // namespace pnspace
