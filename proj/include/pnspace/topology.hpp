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

// The strong topology of a PN space: probabilistic distance, strong
// neighbourhoods, strong convergence and continuity of α ↦ αp.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "pnspace/common.hpp"
#include "pnspace/distfun.hpp"
#include "pnspace/profile.hpp"
#include "pnspace/space.hpp"

namespace pnspace {

/// 𝓕(p, q) = ν_{p−q}.
inline DistFn prob_distance(const PNSpace& space, const VectorPoint& p,
                            const VectorPoint& q) {
  return space.nu(p - q);
}

struct NeighborhoodForms {
  bool by_norm = false;      // ν_{p−q}(t) > 1 − t
  bool by_distance = false;  // d_S(ν_{p−q}, ε_0) < t
  double distance = 0.0;
};

inline NeighborhoodForms neighborhood_forms(const PNSpace& space,
                                            const VectorPoint& p, double t,
                                            const VectorPoint& q) {
  if (std::isnan(t) || t <= 0.0)
    throw DomainError("neighborhood: t must be > 0");
  const DistFn d = space.nu(p - q);
  NeighborhoodForms out;
  out.by_norm = d.eval(t) > 1.0 - t;
  out.distance = distance_to_identity(d);
  out.by_distance = out.distance < t;
  return out;
}

/// q ∈ N_p(t) ⇔ ν_{p−q}(t) > 1 − t.
inline bool neighborhood_contains(const PNSpace& space, const VectorPoint& p,
                                  double t, const VectorPoint& q) {
  if (std::isnan(t) || t <= 0.0)
    throw DomainError("neighborhood: t must be > 0");
  return space.nu(p - q).eval(t) > 1.0 - t;
}

namespace detail {

/// Indices n_max·10^k up to 10^15 (at least four of them).
inline std::vector<std::size_t> far_probes(std::size_t n_max) {
  std::vector<std::size_t> out;
  double n = static_cast<double>(n_max);
  while (out.size() < 4 || n * 10.0 <= 1e15) {
    n *= 10.0;
    out.push_back(static_cast<std::size_t>(n));
  }
  return out;
}

/// Convergence to 0 of a distance sequence.
///
/// The trajectory is evaluated densely for n <= n_max and then at the far
/// probes n_max·10^k. The sequence settles iff the last two far probes are
/// below tol; their minimum is the reported floor. Dense evaluation alone
/// cannot separate slow decay (d ~ n^{-1/4} for heavy-tailed G) from a floor.
inline Verdict settle_verdict(const std::string& name,
                              const std::function<double(std::size_t)>& dist,
                              std::size_t n_max, double tol) {
  std::vector<double> d;
  d.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) d.push_back(dist(n));
  Verdict v(name, false);
  summarize_trajectory(v, d, tol);
  const auto probes = far_probes(n_max);
  std::vector<double> far;
  for (std::size_t n : probes) {
    far.push_back(dist(n));
    v.trajectory.emplace_back(static_cast<double>(n), far.back());
  }
  double floor_v = kInf;
  bool ok = true;
  for (std::size_t i = far.size() - 2; i < far.size(); ++i) {
    floor_v = std::min(floor_v, far[i]);
    ok = ok && far[i] < tol;
  }
  // Settle index over the combined schedule.
  double settle = -1.0;
  if (ok) {
    settle = static_cast<double>(probes.front());
    for (std::size_t i = far.size(); i-- > 0;)
      if (far[i] < tol) settle = static_cast<double>(probes[i]);
      else break;
    if (settle == static_cast<double>(probes.front())) {
      const double dense = *v.get("settle_index");
      if (dense > 0.0 && far.front() < tol) settle = dense;
    }
  }
  v.pass = ok;
  v.metric("settle_index", settle);
  v.metric("floor", floor_v);
  v.metric("final", far.back());
  v.metric("far_probe_max", static_cast<double>(probes.back()));
  return v;
}

}  // namespace detail

/// p_n → limit in the strong topology, judged by d_S(ν_{p_n − limit}, ε_0)
/// along the dense-plus-far-probe schedule of detail::settle_verdict.
inline Verdict strong_converges(
    const PNSpace& space, const std::function<VectorPoint(std::size_t)>& seq,
    const VectorPoint& limit, const SamplePlan& plan = {}) {
  plan.validate();
  Verdict v = detail::settle_verdict(
      "strong_converges",
      [&](std::size_t n) {
        return distance_to_identity(space.nu(seq(n) - limit));
      },
      plan.n_max, plan.convergence_tol);
  v.message = v.pass ? "trajectory settles below tolerance"
                     : "trajectory floor " + detail::fmt_double(*v.get("floor"));
  return v;
}

/// Scalar sequences α_n → α used by the continuity check.
struct ScalarSequence {
  std::string name;
  double limit = 0.0;
  std::function<double(std::size_t)> term;
};

inline std::vector<ScalarSequence> default_scalar_sequences() {
  auto inv = [](std::size_t n) { return 1.0 / static_cast<double>(n); };
  return {
      {"1/n", 0.0, inv},
      {"(-1)^n/n", 0.0,
       [inv](std::size_t n) { return (n % 2 ? -1.0 : 1.0) * inv(n); }},
      {"1+1/n", 1.0, [inv](std::size_t n) { return 1.0 + inv(n); }},
      {"-2+1/n", -2.0, [inv](std::size_t n) { return -2.0 + inv(n); }},
  };
}

/// For f-spaces the modulus of continuity of β ↦ βp at 0 is explicit:
/// δ = f^{[-1]}(1 − γ)/‖p‖, and |β| < δ ⇔ d_S(ν_{βp}, ε_0) < γ.
inline Verdict f_space_delta_witness(const PNSpace& space, const VectorPoint& p,
                                     double gamma) {
  if (space.variant() != Variant::f_menger)
    throw PreconditionError("f_space_delta_witness", "space is not an f-space");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw DomainError("gamma must lie in (0, 1]");
  const double np = space.norm(p);
  if (np == 0.0) throw DomainError("p must be nonzero");
  const double delta = quasi_inverse(*space.f(), 1.0 - gamma) / np;
  Verdict v("f_space_delta_witness", true);
  v.metric("gamma", gamma).metric("delta", delta);
  auto dist = [&](double beta) {
    return distance_to_identity(space.nu(beta * p));
  };
  std::vector<double> inside;
  std::vector<double> outside;
  if (std::isinf(delta)) {
    for (double b : {1e-3, 1.0, 1e3, 1e6}) inside.push_back(b);
  } else {
    for (int k = 0; k < 8; ++k) inside.push_back(delta * k / 8.0);
    inside.push_back(delta * (1.0 - 1e-9));
    outside = {delta * (1.0 + 1e-6), 2.0 * delta, 10.0 * delta};
  }
  for (double b : inside)
    for (double sb : {b, -b}) {
      const double d = dist(sb);
      if (!(d < gamma)) {
        v.pass = false;
        v.witness(detail::concat("beta=", sb, " inside delta but d_S=", d));
      }
    }
  for (double b : outside) {
    const double d = dist(b);
    if (d < gamma) {
      v.pass = false;
      v.witness(detail::concat("beta=", b, " beyond delta but d_S=", d));
    }
  }
  v.samples = 2 * inside.size() + outside.size();
  v.message = v.pass ? "explicit delta certifies continuity at 0"
                     : "delta witness failed";
  return v;
}

/// Continuity of α ↦ αp for sampled p ≠ θ along the default scalar
/// sequences: d_S(ν_{α_n p − α p}, ε_0) must settle below
/// plan.convergence_tol (see detail::settle_verdict). The reported floor is
/// the largest floor across all (p, sequence) pairs.
inline Verdict tv_continuity_check(const PNSpace& space,
                                   const SamplePlan& plan = {}) {
  plan.validate();
  Verdict v("tv_continuity", true);
  v.seed = plan.seed;
  const auto pts = sample_vectors(space.carrier().dim, plan.vectors, plan.seed);
  const auto seqs = default_scalar_sequences();
  double worst_floor = -1.0;
  std::size_t runs = 0;
  for (const auto& p : pts) {
    for (const auto& s : seqs) {
      const VectorPoint lim = s.limit * p;
      Verdict one = strong_converges(
          space, [&](std::size_t n) { return s.term(n) * p; }, lim, plan);
      ++runs;
      const double fl = *one.get("floor");
      if (fl > worst_floor) {
        worst_floor = fl;
        v.trajectory = one.trajectory;
      }
      if (!one.pass) {
        if (v.pass)
          v.witness("p=" + p.str() + ", sequence " + s.name + ", floor " +
                    detail::fmt_double(fl));
        v.pass = false;
      }
    }
  }
  if (space.variant() == Variant::f_menger) {
    bool delta_ok = true;
    for (const auto& p : pts)
      for (double g : {0.5, 0.25, 0.1, 0.01}) {
        Verdict w = f_space_delta_witness(space, p, g);
        if (!w.pass) {
          delta_ok = false;
          v.witness(w.witnesses.front());
        }
      }
    v.metric("delta_witness", delta_ok ? 1.0 : 0.0);
    v.pass = v.pass && delta_ok;
  }
  v.metric("floor", worst_floor)
      .metric("tolerance", plan.convergence_tol)
      .metric("n_max", static_cast<double>(plan.n_max));
  v.samples = runs;
  v.message = v.pass ? "alpha -> alpha p is continuous on all samples"
                     : "alpha -> alpha p fails to be continuous";
  return v;
}

}  // namespace pnspace
