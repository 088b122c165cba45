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

// Sampled checks of the PN axioms (N1)-(N4), the Šerstnev scaling identity
// and the characteristic property.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pnspace/common.hpp"
#include "pnspace/distfun.hpp"
#include "pnspace/space.hpp"

namespace pnspace {

struct AxiomReport {
  Verdict n1{"N1", true};
  Verdict n2{"N2", true};
  Verdict n3{"N3", true};
  Verdict n4{"N4", true};
  double tol_used = 0.0;
  std::uint64_t seed = 0;

  bool pass() const { return n1.pass && n2.pass && n3.pass && n4.pass; }
  double worst() const {
    double w = 0.0;
    for (const Verdict* v : {&n1, &n2, &n3, &n4})
      w = std::max(w, v->get("worst_violation").value_or(0.0));
    return w;
  }
};

/// Tolerance for comparisons involving τ or τ*: exact closed forms get 1e-9,
/// grid-approximated convolutions 1e-4.
inline double convolution_tolerance(const PNSpace& space) {
  return space.has_exact_convolutions() ? 1e-9 : 1e-4;
}

namespace detail {

class WorstTracker {
 public:
  WorstTracker(Verdict& v, double tol) : v_(v), tol_(tol) {}
  void observe(double violation, const std::string& where) {
    ++count_;
    if (violation > worst_) {
      worst_ = violation;
      where_ = where;
    }
  }
  void finish(const std::string& ok_message) {
    v_.pass = worst_ <= tol_;
    v_.metric("worst_violation", worst_).metric("tol", tol_);
    v_.samples = count_;
    if (!v_.pass) v_.witness(where_);
    v_.message = v_.pass ? ok_message : "violated at " + where_;
  }

 private:
  Verdict& v_;
  double tol_;
  double worst_ = 0.0;
  std::string where_;
  std::size_t count_ = 0;
};

}  // namespace detail

inline AxiomReport check_axioms(const PNSpace& space,
                                const SamplePlan& plan = {}) {
  plan.validate();
  AxiomReport r;
  r.seed = plan.seed;
  r.tol_used = convolution_tolerance(space);
  const auto pts = sample_vectors(space.carrier().dim, plan.vectors, plan.seed);
  const VectorPoint theta = space.carrier().zero();

  // N1: ν_θ = ε_0 exactly, and ν_p ≠ ε_0 (d_S bounded away from 0) otherwise.
  {
    const DistFn nt = space.nu(theta);
    const bool exact = nt.is_identity() && nt.eval(0.0) == 0.0;
    double min_dist = 1.0;
    std::string where;
    for (const auto& p : pts) {
      const double d = distance_to_identity(space.nu(p));
      if (d < min_dist) {
        min_dist = d;
        where = "p=" + p.str();
      }
    }
    r.n1.pass = exact && min_dist > plan.tol;
    r.n1.metric("nu_theta_is_eps0", exact ? 1.0 : 0.0)
        .metric("min_distance_off_theta", min_dist)
        .metric("tol", plan.tol);
    r.n1.samples = pts.size() + 1;
    if (!exact) {
      r.n1.witness("theta: nu_theta(0+)=" +
                   detail::fmt_double(nt.right_limit(0.0)));
      r.n1.metric("worst_violation", 1.0 - nt.right_limit(0.0));
    } else if (!r.n1.pass) {
      r.n1.witness(where);
    }
    r.n1.message = r.n1.pass ? "nu_p = eps_0 iff p = theta"
                             : "N1 violated";
  }

  // N2: ν_{-p} = ν_p.
  {
    detail::WorstTracker w(r.n2, plan.tol);
    for (const auto& p : pts) {
      const DistFn a = space.nu(p), b = space.nu(-p);
      for (double x : plan.x_grid)
        w.observe(std::abs(a.eval(x) - b.eval(x)),
                  "p=" + p.str() + ", x=" + detail::fmt_double(x));
    }
    w.finish("nu_{-p} = nu_p on the grid");
  }

  // N3: ν_{p+q} >= τ(ν_p, ν_q).
  {
    detail::WorstTracker w(r.n3, r.tol_used);
    std::vector<std::pair<VectorPoint, VectorPoint>> pairs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      pairs.emplace_back(pts[i], pts[(i + 1) % pts.size()]);
      pairs.emplace_back(pts[i], pts[i]);
      pairs.emplace_back(pts[i], theta);
    }
    for (const auto& [p, q] : pairs) {
      const DistFn np = space.nu(p), nq = space.nu(q), npq = space.nu(p + q);
      for (double x : plan.x_grid)
        w.observe(space.tau()(np, nq, x) - npq.eval(x),
                  "p=" + p.str() + ", q=" + q.str() +
                      ", x=" + detail::fmt_double(x));
    }
    w.finish("nu_{p+q} >= tau(nu_p, nu_q) on the grid");
  }

  // N4: ν_p <= τ*(ν_{λp}, ν_{(1-λ)p}).
  {
    detail::WorstTracker w(r.n4, r.tol_used);
    for (const auto& p : pts) {
      const DistFn np = space.nu(p);
      for (double lam : plan.lambda_grid) {
        const DistFn a = space.nu(lam * p), b = space.nu((1.0 - lam) * p);
        for (double x : plan.x_grid)
          w.observe(np.eval(x) - space.tau_star()(a, b, x),
                    "p=" + p.str() + ", lambda=" + detail::fmt_double(lam) +
                        ", x=" + detail::fmt_double(x));
      }
    }
    w.finish("nu_p <= tau*(nu_{lambda p}, nu_{(1-lambda) p}) on the grid");
  }
  return r;
}

/// ν_{αp}(x) = ν_p(x / |α|) for the plan's scalars, vectors and x-grid.
inline Verdict check_serstnev(const PNSpace& space, const SamplePlan& plan = {}) {
  plan.validate();
  Verdict v("serstnev", true);
  detail::WorstTracker w(v, plan.tol);
  const auto pts = sample_vectors(space.carrier().dim, plan.vectors, plan.seed);
  for (const auto& p : pts) {
    const DistFn np = space.nu(p);
    for (double a : plan.scalar_grid) {
      if (a == 0.0) continue;
      const DistFn nap = space.nu(a * p);
      for (double x : plan.x_grid)
        w.observe(std::abs(nap.eval(x) - np.eval(x / std::abs(a))),
                  "p=" + p.str() + ", alpha=" + detail::fmt_double(a) +
                      ", x=" + detail::fmt_double(x));
    }
  }
  w.finish("scaling identity holds on the grid");
  v.seed = plan.seed;
  return v;
}

/// ν(V) ⊆ 𝒟⁺ on the sampled vectors.
inline Verdict is_characteristic(const PNSpace& space,
                                 const SamplePlan& plan = {}) {
  plan.validate();
  Verdict v("characteristic", true);
  const auto pts = sample_vectors(space.carrier().dim, plan.vectors, plan.seed);
  double min_tail = 1.0;
  std::string where;
  for (const auto& p : pts) {
    const double t = space.nu(p).tail();
    if (t < min_tail) {
      min_tail = t;
      where = "p=" + p.str();
    }
  }
  v.pass = min_tail >= 1.0 - kTolTail;
  v.metric("min_tail", min_tail).metric("tol_tail", kTolTail);
  v.samples = pts.size();
  v.seed = plan.seed;
  if (!v.pass) v.witness(where + ", tail=" + detail::fmt_double(min_tail));
  v.message = v.pass ? "every sampled nu_p is proper"
                     : "some nu_p has tail below 1";
  return v;
}

}  // namespace pnspace
