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

// Probabilistic normed spaces over ℝⁿ and their standard constructions.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pnspace/common.hpp"
#include "pnspace/distfun.hpp"
#include "pnspace/profile.hpp"
#include "pnspace/tnorm.hpp"
#include "pnspace/vector.hpp"

namespace pnspace {

enum class Variant { simple, alpha_simple, equilateral, f_menger, custom };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::simple: return "simple";
    case Variant::alpha_simple: return "alpha_simple";
    case Variant::equilateral: return "equilateral";
    case Variant::f_menger: return "f_menger";
    case Variant::custom: return "custom";
  }
  return "?";
}

/// Sampling parameters shared by the numerical checks. All randomness is
/// drawn from `seed`.
struct SamplePlan {
  std::uint64_t seed = 20260101;
  std::size_t vectors = 32;
  std::vector<double> x_grid = detail::logspace(1e-3, 1e3, 64);
  std::vector<double> lambda_grid = detail::linspace(0.0, 1.0, 17);
  std::vector<double> scalar_grid{-3.0, -2.0, -0.5, 0.5, 2.0, 3.0};
  double tol = 1e-6;
  std::size_t n_max = 10000;
  double convergence_tol = 1e-3;

  void validate() const {
    if (n_max < 10) throw DomainError("SamplePlan: n_max must be >= 10");
    if (!(tol > 0.0) || !(convergence_tol > 0.0))
      throw DomainError("SamplePlan: tolerances must be positive");
    if (vectors == 0) throw DomainError("SamplePlan: vectors must be >= 1");
  }
};

/// Seeded nonzero vectors with coordinates uniform in [-1, 1].
inline std::vector<VectorPoint> sample_vectors(std::size_t dim,
                                               std::size_t count,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<VectorPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    std::vector<double> c(dim);
    for (double& v : c) v = u(rng);
    VectorPoint p(std::move(c));
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

/// A PN space (V, ν, τ, τ*) with V = ℝⁿ.
class PNSpace {
 public:
  using NuFn = std::function<DistFn(const VectorPoint&)>;

  const NormedCarrier& carrier() const { return carrier_; }
  Variant variant() const { return variant_; }
  const TriangleFn& tau() const { return tau_; }
  const TriangleFn& tau_star() const { return tau_star_; }
  const std::optional<DistFn>& G() const { return G_; }
  double alpha() const { return alpha_; }
  const std::optional<NonincreasingProfile>& f() const { return f_; }
  const std::optional<TNorm>& T() const { return T_; }

  double norm(const VectorPoint& p) const { return carrier_.norm(p); }

  /// ν_p.
  DistFn nu(const VectorPoint& p) const {
    const double n = carrier_.norm(p);
    if (variant_ == Variant::custom) return (*custom_)(p);
    if (n == 0.0) return epsilon(0.0);
    switch (variant_) {
      case Variant::simple: return G_->scaled(n);
      case Variant::alpha_simple: return G_->scaled(std::pow(n, alpha_));
      case Variant::equilateral: return *G_;
      case Variant::f_menger: return constant_plateau(f_->eval(n));
      case Variant::custom: break;
    }
    return (*custom_)(p);
  }

  /// ν values are plateau/step functions with exact convolutions.
  bool has_exact_convolutions() const {
    return variant_ == Variant::f_menger || variant_ == Variant::equilateral;
  }

  /// ν_p depends on p only through ‖p‖ and is nonincreasing in ‖p‖.
  bool is_radial() const { return variant_ != Variant::custom; }

  std::string describe() const {
    std::string s = to_string(variant_);
    s += " [" + std::string(to_string(carrier_.kind)) + ", dim " +
         std::to_string(carrier_.dim) + "; tau=" + tau_.name() +
         ", tau*=" + tau_star_.name() + "]";
    return s;
  }

 private:
  PNSpace(NormedCarrier c, Variant v, TriangleFn tau, TriangleFn tau_star)
      : carrier_(c), variant_(v), tau_(std::move(tau)),
        tau_star_(std::move(tau_star)) {}

  friend PNSpace make_simple(const NormedCarrier&, const DistFn&);
  friend PNSpace make_alpha_simple(const NormedCarrier&, const DistFn&, double);
  friend PNSpace make_equilateral(const NormedCarrier&, const DistFn&);
  friend PNSpace make_f_menger(const NormedCarrier&, const NonincreasingProfile&,
                               const TNorm&, std::optional<TriangleFn>);
  friend PNSpace make_custom(const NormedCarrier&, NuFn, TriangleFn,
                             TriangleFn);

  NormedCarrier carrier_;
  Variant variant_;
  TriangleFn tau_;
  TriangleFn tau_star_;
  std::optional<DistFn> G_;
  double alpha_ = 1.0;
  std::optional<NonincreasingProfile> f_;
  std::optional<TNorm> T_;
  std::shared_ptr<const NuFn> custom_;
};

namespace detail {

/// True iff F is identically 0 on finite arguments (F = ε_∞).
inline bool is_eps_infinity(const DistFn& F) { return F.tail() == 0.0; }

inline void require_nondegenerate(const DistFn& F, const char* what) {
  if (F.is_identity())
    throw ConstructionError(std::string(what) + " must differ from eps_0");
  if (is_eps_infinity(F))
    throw ConstructionError(std::string(what) + " must differ from eps_inf");
}

}  // namespace detail

/// ν_p(x) = G(x / ‖p‖), τ = τ_M, τ* = τ_{M*}.
inline PNSpace make_simple(const NormedCarrier& carrier, const DistFn& G) {
  detail::require_nondegenerate(G, "G");
  PNSpace s(carrier, Variant::simple, TriangleFn::tau_T(TNorm::M()),
            TriangleFn::tau_Tstar(TNorm::M()));
  s.G_ = G;
  return s;
}

/// ν_p(x) = G(x / ‖p‖^α).
///
/// Triangle functions: τ = τ_M for α <= 1 and τ_W for α > 1; τ* = τ_{M*} for
/// α = 1 (so that α = 1 coincides with the simple space) and 𝐌 otherwise.
inline PNSpace make_alpha_simple(const NormedCarrier& carrier, const DistFn& G,
                                 double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw ConstructionError("alpha must be finite and >= 0");
  detail::require_nondegenerate(G, "G");
  TriangleFn tau = alpha <= 1.0 ? TriangleFn::tau_T(TNorm::M())
                                : TriangleFn::tau_T(TNorm::W());
  TriangleFn tau_star = alpha == 1.0 ? TriangleFn::tau_Tstar(TNorm::M())
                                     : TriangleFn::pointwise_min();
  PNSpace s(carrier, Variant::alpha_simple, std::move(tau), std::move(tau_star));
  s.G_ = G;
  s.alpha_ = alpha;
  return s;
}

/// ν_p = F for every p ≠ θ, τ = τ* = 𝐌.
inline PNSpace make_equilateral(const NormedCarrier& carrier, const DistFn& F) {
  detail::require_nondegenerate(F, "F");
  PNSpace s(carrier, Variant::equilateral, TriangleFn::pointwise_min(),
            TriangleFn::pointwise_min());
  s.G_ = F;
  return s;
}

struct FConditionOptions {
  std::vector<double> grid = detail::linspace(0.0, 4.0, 81);
  double tol = 1e-12;
  std::uint64_t seed = 7;
};

inline Verdict f_condition_check(const NonincreasingProfile& f, const TNorm& T,
                          const FConditionOptions& opt = {});

/// Validates f(x) = 1 ⇔ x = 0, nonincreasingness and the t-norm condition on
/// the profile. Throws ConstructionError with a witness on failure.
inline void validate_f_profile(const NonincreasingProfile& f, const TNorm& T) {
  if (f.eval(0.0) != 1.0)
    throw ConstructionError(
        detail::concat("f(0) must equal 1, got ", f.eval(0.0)));
  std::vector<double> xs = detail::logspace(1e-9, 1e6, 301);
  double prev = 1.0;
  for (double x : xs) {
    const double v = f.eval(x);
    if (v >= 1.0)
      throw ConstructionError(
          detail::concat("f(x) = 1 at x = ", x, " but x != 0"));
    if (v > prev)
      throw ConstructionError(detail::concat("f increases at x = ", x));
    prev = v;
  }
  Verdict cond = f_condition_check(f, T);
  if (!cond.pass)
    throw ConstructionError("t-norm condition on f fails: " +
                            (cond.witnesses.empty() ? cond.message
                                                    : cond.witnesses.front()));
}

/// ν_p = 0 at 0, f(‖p‖) on (0, ∞), 1 at +∞; τ = τ_T and τ* = τ_{T*} unless
/// an override is given.
inline PNSpace make_f_menger(const NormedCarrier& carrier,
                             const NonincreasingProfile& f, const TNorm& T,
                             std::optional<TriangleFn> tau_star_override =
                                 std::nullopt) {
  validate_f_profile(f, T);
  PNSpace s(carrier, Variant::f_menger, TriangleFn::tau_T(T),
            tau_star_override ? *tau_star_override : TriangleFn::tau_Tstar(T));
  s.f_ = f;
  s.T_ = T;
  return s;
}

/// A user-supplied probabilistic norm.
inline PNSpace make_custom(const NormedCarrier& carrier, PNSpace::NuFn nu,
                           TriangleFn tau, TriangleFn tau_star) {
  if (!nu) throw ConstructionError("custom space needs a nu evaluator");
  PNSpace s(carrier, Variant::custom, std::move(tau), std::move(tau_star));
  s.custom_ = std::make_shared<const PNSpace::NuFn>(std::move(nu));
  return s;
}

/// A custom space from a finite table of (point, ν_point); θ maps to ε_0
/// unless listed and unlisted points are rejected.
inline PNSpace make_custom_table(
    const NormedCarrier& carrier,
    std::vector<std::pair<VectorPoint, DistFn>> table, TriangleFn tau,
    TriangleFn tau_star) {
  auto shared = std::make_shared<const std::vector<std::pair<VectorPoint, DistFn>>>(
      std::move(table));
  return make_custom(
      carrier,
      [shared](const VectorPoint& p) {
        for (const auto& [q, F] : *shared)
          if (q == p) return F;
        if (p.is_zero()) return epsilon(0.0);
        throw DomainError("custom space: no nu entry for " + p.str());
      },
      std::move(tau), std::move(tau_star));
}

/// ν'_p = c·ν_p for every p, θ included. Not a PN space for c < 1, since
/// ν'_θ ≠ ε_0; used as a negative control.
inline PNSpace make_value_scaled(const PNSpace& base, double c) {
  return make_custom(
      base.carrier(),
      [base, c](const VectorPoint& p) { return value_scaled(base.nu(p), c); },
      base.tau(), base.tau_star());
}

inline DistFn pn_eval(const PNSpace& space, const VectorPoint& p) {
  return space.nu(p);
}

/// Condition on f coupling it with T.
///
/// T = Π: f(x + y) >= f(x) f(y); T = W: 1 + f(x + y) >= f(x) + f(y), both on
/// grid × grid. Any other T: f(‖p + q‖) >= T(f(‖p‖), f(‖q‖)) on seeded
/// planar vector pairs whose norms come from the grid.
inline Verdict f_condition_check(const NonincreasingProfile& f, const TNorm& T,
                                 const FConditionOptions& opt) {
  Verdict v("f_condition", true);
  double worst = 0.0;
  std::string witness;
  auto consider = [&](double violation, const std::string& w) {
    if (violation > worst) {
      worst = violation;
      witness = w;
    }
  };
  std::size_t count = 0;
  if (T.kind() == TNorm::Kind::Pi || T.kind() == TNorm::Kind::W) {
    const bool pi = T.kind() == TNorm::Kind::Pi;
    for (double x : opt.grid)
      for (double y : opt.grid) {
        const double fx = f.eval(x), fy = f.eval(y), fxy = f.eval(x + y);
        const double violation = pi ? fx * fy - fxy : fx + fy - (1.0 + fxy);
        consider(violation, detail::concat("x=", x, ", y=", y));
        ++count;
      }
    v.metric("condition", pi ? 5.0 : 6.0);
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    for (double a : opt.grid)
      for (double b : opt.grid) {
        const double t1 = ang(rng), t2 = ang(rng);
        const double px = a * std::cos(t1), py = a * std::sin(t1);
        const double qx = b * std::cos(t2), qy = b * std::sin(t2);
        const double na = std::hypot(px, py), nb = std::hypot(qx, qy);
        const double nab = std::hypot(px + qx, py + qy);
        const double violation = T(f.eval(na), f.eval(nb)) - f.eval(nab);
        consider(violation, detail::concat("|p|=", na, ", |q|=", nb,
                                           ", |p+q|=", nab));
        ++count;
      }
  }
  v.pass = worst <= opt.tol;
  v.metric("worst_violation", worst).metric("tol", opt.tol);
  v.samples = count;
  if (!v.pass) v.witness(witness);
  v.message = v.pass ? "condition holds on the grid"
                     : "condition violated at " + witness;
  return v;
}

}  // namespace pnspace
