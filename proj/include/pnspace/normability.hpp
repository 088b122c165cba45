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

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pnspace/axioms.hpp"
#include "pnspace/boundedness.hpp"
#include "pnspace/common.hpp"
#include "pnspace/distfun.hpp"
#include "pnspace/profile.hpp"
#include "pnspace/space.hpp"
#include "pnspace/topology.hpp"

namespace pnspace {

inline constexpr const char* kCaveat = "numerical evidence, not proof";

struct NormabilityOptions {
  std::size_t convexity_pairs = 1000;
  std::size_t alpha_points = 11;
  std::size_t ball_samples = 1000;
  double boundary_shell = 1e-6;
};

namespace detail {

inline VectorPoint random_direction(const NormedCarrier& carrier,
                                    std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    std::vector<double> d(carrier.dim);
    for (double& v : d) v = gauss(rng);
    const VectorPoint dir(d);
    const double n = carrier.norm(dir);
    if (n > 0.0) return (1.0 / n) * dir;
  }
}

/// sup{s ≤ 1e6 : s·e_1 ∈ N_θ(t)}, by doubling then bisection.
inline double membership_extent(const PNSpace& space, double t) {
  const VectorPoint theta = space.carrier().zero();
  const VectorPoint e1 = VectorPoint::basis(space.carrier().dim, 0);
  auto in = [&](double s) { return neighborhood_contains(space, theta, t, s * e1); };
  double lo = 0.0, hi = 1e-9;
  while (in(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) return 1e6;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (in(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace detail

/// Convexity of N_θ(t) on rejection-sampled pairs and an α-grid.
inline Verdict convexity_check(const PNSpace& space, double t,
                               const SamplePlan& plan = {},
                               const NormabilityOptions& opt = {}) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("convexity_check: t must lie in (0, 1)");
  Verdict v("convexity", true);
  v.seed = plan.seed;
  v.metric("t", t);
  const VectorPoint theta = space.carrier().zero();
  const double extent = detail::membership_extent(space, t);
  v.metric("extent", extent);
  if (extent == 0.0) {
    v.message = "N_theta(t) = {theta} on the probe axis; trivially convex";
    v.samples = 0;
    return v;
  }
  std::mt19937_64 rng(plan.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double box = 2.0 * extent;
  auto propose = [&] {
    std::vector<double> c(space.carrier().dim);
    for (double& x : c) x = box * unit(rng);
    return VectorPoint(c);
  };
  auto draw_member = [&]() -> std::optional<VectorPoint> {
    for (int k = 0; k < 100000; ++k) {
      VectorPoint q = propose();
      if (neighborhood_contains(space, theta, t, q)) return q;
    }
    return std::nullopt;
  };
  const auto alphas = detail::linspace(0.0, 1.0, opt.alpha_points);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < opt.convexity_pairs && v.pass; ++i) {
    const auto p = draw_member();
    const auto q = draw_member();
    if (!p || !q) {
      v.message = "rejection sampling found no members";
      break;
    }
    for (double a : alphas) {
      ++checked;
      const VectorPoint c = a * *p + (1.0 - a) * *q;
      if (!neighborhood_contains(space, theta, t, c)) {
        v.pass = false;
        v.witness("p=" + p->str() + ", q=" + q->str() +
                  ", alpha=" + detail::fmt_double(a));
        break;
      }
    }
  }
  v.samples = checked;
  if (v.message.empty())
    v.message = v.pass ? "sampled convex combinations stay in N_theta(t)"
                       : "convex combination leaves N_theta(t)";
  return v;
}

struct CertificateEntry {
  double t = 0.0;
  Verdict convexity;
  std::optional<Verdict> d_bounded;
  Verdict topologically_bounded;
  bool passes(bool serstnev_branch) const {
    return convexity.pass &&
           (serstnev_branch ? d_bounded->pass : topologically_bounded.pass);
  }
};

struct NormabilityCertificate {
  std::string verdict = "inconclusive";
  std::optional<double> witness_t;
  std::string method;
  std::string branch;  // "d-bounded" or "topological"
  std::string caveat = kCaveat;
  std::vector<CertificateEntry> entries;
  /// D-bounded and topological branches agree on every t (Šerstnev only).
  std::optional<bool> branches_agree;
  double tv_floor = 0.0;
};

inline std::vector<double> default_t_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 17; ++k) g.push_back(0.05 * k);
  return g;
}

/// Scans t for a convex bounded N_θ(t). Requires a TV space.
inline NormabilityCertificate kolmogorov_certificate(
    const PNSpace& space, std::vector<double> t_grid = default_t_grid(),
    const SamplePlan& plan = {}, const NormabilityOptions& opt = {}) {
  plan.validate();
  for (double t : t_grid)
    if (!(t > 0.0 && t < 1.0)) throw DomainError("t_grid must lie in (0, 1)");
  const Verdict tv = tv_continuity_check(space, plan);
  if (!tv.pass)
    throw PreconditionError("tv_continuity_check",
                            "not a TV space: continuity floor " +
                                detail::fmt_double(*tv.get("floor")));
  if (space.variant() == Variant::f_menger) {
    const double bound = 1.0 - space.f()->tail();
    std::erase_if(t_grid, [bound](double t) { return !(t < bound); });
  }
  NormabilityCertificate c;
  c.tv_floor = *tv.get("floor");
  const bool serstnev =
      check_serstnev(space, plan).pass && is_characteristic(space, plan).pass;
  if (serstnev) c.method = "serstnev-dbounded";
  else if (space.variant() == Variant::alpha_simple) c.method = "alpha-simple-closed-form";
  else if (space.variant() == Variant::f_menger) c.method = "f-space-closed-form";
  else c.method = "kolmogorov-direct";
  c.branch = serstnev ? "d-bounded" : "topological";
  if (serstnev) c.branches_agree = true;
  const VectorPoint theta = space.carrier().zero();
  for (double t : t_grid) {
    const SetSpec N = strong_neighborhood_set(space, theta, t, plan.seed);
    CertificateEntry e{t, convexity_check(space, t, plan, opt), std::nullopt,
                       is_topologically_bounded(space, N, plan)};
    if (serstnev) {
      e.d_bounded = is_d_bounded(space, N);
      if (e.d_bounded->pass != e.topologically_bounded.pass)
        c.branches_agree = false;
    }
    if (!c.witness_t && e.passes(serstnev)) c.witness_t = t;
    c.entries.push_back(std::move(e));
  }
  if (c.witness_t) c.verdict = "evidence-normable";
  return c;
}

/// h(t) = (t / G⁻¹(1 − t))^{1/α}: N_θ(t) is the norm ball of radius h(t)
/// in the α-simple space built on G.
inline double alpha_simple_radius(const DistFn& G, double alpha, double t) {
  if (!(alpha > 0.0) || std::isinf(alpha))
    throw DomainError("alpha_simple_radius: alpha must be finite and > 0");
  if (!(t > 0.0 && t < 1.0))
    throw DomainError("alpha_simple_radius: t must lie in (0, 1)");
  return std::pow(t / increasing_inverse(G, 1.0 - t), 1.0 / alpha);
}

/// h → 0 as t → 0+ and h → ∞ as t → 1−, sampled at t = 10^{-k} and
/// t = 1 − 10^{-k}; also h nondecreasing on a uniform grid.
inline Verdict alpha_simple_radius_limits(const DistFn& G, double alpha) {
  Verdict v("alpha_simple_radius_limits", true);
  double prev = -1.0;
  for (double t : detail::linspace(0.01, 0.99, 99)) {
    const double h = alpha_simple_radius(G, alpha, t);
    if (h < prev) {
      v.pass = false;
      v.witness("h decreases at t=" + detail::fmt_double(t));
    }
    prev = h;
  }
  double low = kInf;
  for (int k = 1; k <= 12; ++k) {
    const double h = alpha_simple_radius(G, alpha, std::pow(10.0, -k));
    if (!(h < low)) {
      v.pass = false;
      v.witness(detail::concat("h not decreasing at t=1e-", k));
    }
    low = h;
  }
  double high = 0.0;
  for (int k = 1; k <= 15; ++k) {
    const double h = alpha_simple_radius(G, alpha, 1.0 - std::pow(10.0, -k));
    if (!(h > high)) {
      v.pass = false;
      v.witness(detail::concat("h not increasing at t=1-1e-", k));
    }
    high = h;
  }
  v.metric("h_near_0", low).metric("h_near_1", high);
  if (!(low < 1e-3)) v.pass = false;
  if (!(high > 1e3)) v.pass = false;
  v.message = v.pass ? "h(t) -> 0 at 0+ and -> infinity at 1-"
                     : "endpoint behaviour of h not confirmed";
  return v;
}

/// q ∈ N_p(t) ⇔ ‖q − p‖ < radius on sampled q, skipping a thin boundary
/// shell. For f-spaces also N_p(1 − f(r)) ⊆ B(p, r) on sampled r.
inline Verdict ball_equivalence_check(const PNSpace& space, const VectorPoint& p,
                                      double t, const SamplePlan& plan = {},
                                      const NormabilityOptions& opt = {}) {
  if (std::isnan(t) || t <= 0.0) throw DomainError("t must be > 0");
  double radius = 0.0;
  if (space.variant() == Variant::f_menger) {
    const double bound = 1.0 - space.f()->tail();
    if (!(t < bound))
      throw PreconditionError(
          "t < 1 - tail(f)",
          "t=" + detail::fmt_double(t) + " exceeds bound " + detail::fmt_double(bound));
    radius = quasi_inverse(*space.f(), 1.0 - t);
  } else if (space.variant() == Variant::alpha_simple ||
             space.variant() == Variant::simple) {
    if (!(t < 1.0))
      throw PreconditionError("t < 1", "t=" + detail::fmt_double(t) + " exceeds bound 1");
    radius = alpha_simple_radius(*space.G(), space.alpha(), t);
  } else {
    throw PreconditionError("variant", "ball equivalence needs an f-space or alpha-simple space");
  }
  Verdict v("ball_equivalence", true);
  v.seed = plan.seed;
  v.metric("t", t).metric("radius", radius).metric("shell", opt.boundary_shell);
  std::mt19937_64 rng(plan.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t mis = 0, used = 0;
  for (std::size_t i = 0; i < opt.ball_samples; ++i) {
    const double r = 2.0 * radius * unit(rng);
    if (std::abs(r - radius) < opt.boundary_shell) continue;
    const VectorPoint q = p + r * detail::random_direction(space.carrier(), rng);
    const double dist = space.norm(q - p);
    if (std::abs(dist - radius) < opt.boundary_shell) continue;
    ++used;
    if (neighborhood_contains(space, p, t, q) != (dist < radius)) {
      if (mis == 0) v.witness("q=" + q.str() + ", |q-p|=" + detail::fmt_double(dist));
      ++mis;
    }
  }
  std::size_t nest_fail = 0;
  if (space.variant() == Variant::f_menger) {
    for (double r : detail::logspace(1e-2, 1e2, 9)) {
      const double t2 = 1.0 - space.f()->eval(r);
      if (!(t2 > 0.0 && t2 < 1.0)) continue;
      for (int k = 0; k < 64; ++k) {
        const double s = r * (0.5 + 1.5 * unit(rng));
        const VectorPoint q = p + s * detail::random_direction(space.carrier(), rng);
        if (neighborhood_contains(space, p, t2, q) && !(space.norm(q - p) < r)) {
          if (nest_fail == 0)
            v.witness("N_p(1-f(r)) not inside B(p,r) for r=" + detail::fmt_double(r));
          ++nest_fail;
        }
      }
    }
  }
  v.pass = mis == 0 && nest_fail == 0;
  v.metric("misclassified", static_cast<double>(mis))
      .metric("nesting_failures", static_cast<double>(nest_fail));
  v.samples = used;
  v.message = v.pass ? "N_p(t) coincides with the norm ball on samples"
                     : "membership and norm ball disagree";
  return v;
}

}  // namespace pnspace
