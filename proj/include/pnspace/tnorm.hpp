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

// t-norms, their duals, and the triangle functions τ_T, τ_{T*} and 𝐌.

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

class TNorm {
 public:
  enum class Kind { M, Pi, W, custom };

  static TNorm M() { return TNorm(Kind::M, "M"); }
  static TNorm Pi() { return TNorm(Kind::Pi, "Pi"); }
  static TNorm W() { return TNorm(Kind::W, "W"); }

  /// A user-supplied t-norm. Continuity cannot be verified beyond sampling,
  /// so the caller has to declare it.
  static TNorm custom(std::string name, std::function<double(double, double)> fn,
                      bool declared_continuous) {
    if (!declared_continuous)
      throw ConstructionError("custom t-norm '" + name +
                              "' must be declared continuous");
    if (!fn) throw ConstructionError("custom t-norm needs an evaluator");
    TNorm t(Kind::custom, std::move(name));
    t.fn_ = std::make_shared<const std::function<double(double, double)>>(
        std::move(fn));
    return t;
  }

  static TNorm from_string(const std::string& s) {
    if (s == "M") return M();
    if (s == "Pi") return Pi();
    if (s == "W") return W();
    throw ConstructionError("unknown t-norm '" + s + "'");
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// T(x, y); no range checks.
  double operator()(double x, double y) const {
    switch (kind_) {
      case Kind::M: return std::min(x, y);
      case Kind::Pi: return x * y;
      case Kind::W: return std::max(x + y - 1.0, 0.0);
      case Kind::custom: return (*fn_)(x, y);
    }
    return 0.0;
  }

  /// T*(x, y) = 1 − T(1 − x, 1 − y); no range checks.
  double dual(double x, double y) const {
    switch (kind_) {
      case Kind::M: return std::max(x, y);
      case Kind::Pi: return x + y - x * y;
      case Kind::W: return std::min(x + y, 1.0);
      case Kind::custom: return 1.0 - (*fn_)(1.0 - x, 1.0 - y);
    }
    return 1.0;
  }

 private:
  TNorm(Kind k, std::string name) : kind_(k), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  std::shared_ptr<const std::function<double(double, double)>> fn_;
};

inline double tnorm_eval(const TNorm& T, double x, double y) {
  if (!detail::in_unit(x) || !detail::in_unit(y))
    throw DomainError("t-norm arguments must lie in [0, 1]");
  return T(x, y);
}

inline double dual_tnorm_eval(const TNorm& T, double x, double y) {
  if (!detail::in_unit(x) || !detail::in_unit(y))
    throw DomainError("t-conorm arguments must lie in [0, 1]");
  return T.dual(x, y);
}

struct ConvolutionOptions {
  std::size_t grid = 256;
  int refine_rounds = 2;
};

namespace detail {

enum class ConvMode { sup, inf };

// Golden-section search of g on [a, b]; returns the best value seen.
template <typename Fn>
double golden_extremum(const Fn& g, double a, double b, bool maximize,
                       double* arg = nullptr, int iters = 60) {
  constexpr double r = 0.6180339887498949;
  auto better = [&](double u, double v) { return maximize ? u > v : u < v; };
  double c = b - r * (b - a), d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  double best = gc, best_s = c;
  if (better(gd, best)) best = gd, best_s = d;
  for (int i = 0; i < iters && b - a > 1e-15 * (1.0 + std::abs(b)); ++i) {
    if (better(gc, gd) || gc == gd) {
      b = d, d = c, gd = gc;
      c = b - r * (b - a);
      gc = g(c);
      if (better(gc, best)) best = gc, best_s = c;
    } else {
      a = c, c = d, gc = gd;
      d = a + r * (b - a);
      gd = g(d);
      if (better(gd, best)) best = gd, best_s = d;
    }
  }
  if (arg) *arg = best_s;
  return best;
}

// One orientation of sup_{s+t=x} T(F(s), G(t)) or inf_{s+t=x} T*(F(s), G(t))
// over s ∈ [0, x].
//
// Candidate splits are the knots of F, x minus the knots of G, the
// endpoints and a uniform grid. At each candidate both one-sided limits are
// evaluated, which makes the result exact when F and G are step functions.
// Between candidates the arguments are continuous; for T = M the optimum is
// the crossing F(s) = G(x − s), located by bisection, and otherwise golden
// section refines around the best candidates.
inline double convolve_oriented(const TNorm& T, ConvMode mode, const DistFn& F,
                                const DistFn& G, double x,
                                const ConvolutionOptions& opt) {
  const bool sup = mode == ConvMode::sup;
  auto op = [&](double a, double b) { return sup ? T(a, b) : T.dual(a, b); };
  auto better = [&](double u, double v) { return sup ? u > v : u < v; };

  std::vector<double> cand{0.0, x};
  for (const auto& k : F.knots())
    if (k.x > 0.0 && k.x < x) cand.push_back(k.x);
  for (const auto& k : G.knots())
    if (k.x > 0.0 && k.x < x) cand.push_back(x - k.x);
  for (double s : linspace(0.0, x, opt.grid)) cand.push_back(s);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // Value of the objective at a candidate, including the one-sided limits
  // that matter for the chosen mode.
  auto at = [&](double c) {
    double v = op(F.eval(c), G.eval(x - c));
    if (sup) {
      if (c < x) v = std::max(v, op(F.right_limit(c), G.eval(x - c)));
      if (c > 0.0) v = std::max(v, op(F.eval(c), G.right_limit(x - c)));
    }
    return v;
  };
  // Objective strictly inside a candidate interval.
  auto interior = [&](double s) { return op(F.eval(s), G.eval(x - s)); };

  std::vector<double> vals(cand.size());
  double best = at(cand[0]);
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    vals[i] = at(cand[i]);
    if (better(vals[i], best)) best = vals[i], best_i = i;
  }

  if (T.kind() == TNorm::Kind::M) {
    // d(s) = F(s) − G(x − s) is nondecreasing; the extremum of min/max of the
    // two monotone pieces sits at a sign change.
    for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
      double a = cand[i], b = cand[i + 1];
      const double da = F.right_limit(a) - G.eval(x - a);
      const double db = F.eval(b) - G.right_limit(x - b);
      if (!(da <= 0.0 && db >= 0.0)) continue;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        (F.eval(m) - G.eval(x - m) < 0.0 ? a : b) = m;
      }
      for (double s : {a, b}) {
        if (s <= cand[i] || s >= cand[i + 1]) continue;
        const double v = interior(s);
        if (better(v, best)) best = v;
      }
    }
    return best;
  }

  // Local refinement around the best candidate, then around the refined
  // optimum with a narrower bracket.
  double centre = cand[best_i];
  double lo = cand[best_i > 0 ? best_i - 1 : 0];
  double hi = cand[std::min(best_i + 1, cand.size() - 1)];
  for (int round = 0; round < opt.refine_rounds; ++round) {
    for (auto [a, b] : {std::pair{lo, centre}, std::pair{centre, hi}}) {
      if (!(b > a)) continue;
      // Stay strictly inside the interval so that no jump is crossed.
      const double eps = (b - a) * 1e-12;
      double arg = centre;
      const double v =
          golden_extremum(interior, a + eps, b - eps, sup, &arg);
      if (better(v, best)) best = v, centre = arg;
    }
    const double w = 0.25 * (hi - lo);
    lo = std::max(lo, centre - w);
    hi = std::min(hi, centre + w);
  }
  return best;
}

}  // namespace detail

/// τ_T(F, G)(x) = sup_{s+t=x} T(F(s), G(t)).
inline double tau_T_eval(const TNorm& T, const DistFn& F, const DistFn& G,
                         double x, const ConvolutionOptions& opt = {}) {
  if (std::isnan(x) || x <= 0.0) throw DomainError("tau_T_eval: x must be > 0");
  if (x == kInf) return 1.0;
  using detail::ConvMode;
  return std::max(detail::convolve_oriented(T, ConvMode::sup, F, G, x, opt),
                  detail::convolve_oriented(T, ConvMode::sup, G, F, x, opt));
}

/// τ_{T*}(F, G)(x) = inf_{s+t=x} T*(F(s), G(t)).
inline double tau_Tstar_eval(const TNorm& T, const DistFn& F, const DistFn& G,
                             double x, const ConvolutionOptions& opt = {}) {
  if (std::isnan(x) || x <= 0.0)
    throw DomainError("tau_Tstar_eval: x must be > 0");
  if (x == kInf) return 1.0;
  using detail::ConvMode;
  return std::min(detail::convolve_oriented(T, ConvMode::inf, F, G, x, opt),
                  detail::convolve_oriented(T, ConvMode::inf, G, F, x, opt));
}

/// 𝐌(F, G)(x) = min(F(x), G(x)).
inline double pointwise_min_eval(const DistFn& F, const DistFn& G, double x) {
  if (std::isnan(x) || x <= 0.0)
    throw DomainError("pointwise_min_eval: x must be > 0");
  return std::min(F.eval(x), G.eval(x));
}

/// A triangle function on Δ⁺.
class TriangleFn {
 public:
  enum class Kind { tau_T, tau_Tstar, pointwise_min, custom };
  using Evaluator =
      std::function<double(const DistFn&, const DistFn&, double)>;

  static TriangleFn tau_T(TNorm T) {
    return TriangleFn(Kind::tau_T, std::move(T));
  }
  static TriangleFn tau_Tstar(TNorm T) {
    return TriangleFn(Kind::tau_Tstar, std::move(T));
  }
  static TriangleFn pointwise_min() {
    return TriangleFn(Kind::pointwise_min, TNorm::M());
  }
  /// Arbitrary evaluator, e.g. for negative controls.
  static TriangleFn custom(std::string name, Evaluator fn) {
    TriangleFn t(Kind::custom, TNorm::M());
    t.name_ = std::move(name);
    t.fn_ = std::make_shared<const Evaluator>(std::move(fn));
    return t;
  }

  Kind kind() const { return kind_; }
  const TNorm& tnorm() const { return T_; }

  std::string name() const {
    switch (kind_) {
      case Kind::tau_T: return "tau_" + T_.name();
      case Kind::tau_Tstar: return "tau_" + T_.name() + "*";
      case Kind::pointwise_min: return "pointwise_min";
      case Kind::custom: return name_;
    }
    return name_;
  }

  double operator()(const DistFn& F, const DistFn& G, double x,
                    const ConvolutionOptions& opt = {}) const {
    switch (kind_) {
      case Kind::tau_T: return tau_T_eval(T_, F, G, x, opt);
      case Kind::tau_Tstar: return tau_Tstar_eval(T_, F, G, x, opt);
      case Kind::pointwise_min: return pointwise_min_eval(F, G, x);
      case Kind::custom: return (*fn_)(F, G, x);
    }
    return 0.0;
  }

  /// τ(F, G) as a DistFn.
  ///
  /// 𝐌 composes lazily and exactly. Convolutions are sampled on the sums of
  /// knots plus a uniform grid and returned as an approximate piecewise
  /// function (Δ⁺ is not closed under piecewise-linear representation).
  DistFn materialize(const DistFn& F, const DistFn& G,
                     const ConvolutionOptions& opt = {}) const {
    if (kind_ == Kind::pointwise_min) {
      DistFn::AnalyticSpec s;
      s.family = "pointwise_min";
      s.base = [F, G](double x) { return std::min(F.eval(x), G.eval(x)); };
      s.right = [F, G](double x) {
        return std::min(F.right_limit(x), G.right_limit(x));
      };
      s.tail = std::min(F.tail(), G.tail());
      s.continuous = F.continuous() && G.continuous();
      s.strictly_increasing = false;
      return DistFn::analytic(std::move(s));
    }
    const double span_f = F.is_piecewise() ? std::max(F.last_knot(), 1.0) : 50.0;
    const double span_g = G.is_piecewise() ? std::max(G.last_knot(), 1.0) : 50.0;
    const double upper = 2.0 * (span_f + span_g);
    std::vector<double> xs = detail::linspace(0.0, upper, opt.grid);
    // Analytic inputs curve most near 0; add a logarithmic layer there.
    if (!F.is_piecewise() || !G.is_piecewise())
      for (double x : detail::logspace(1e-3, upper, opt.grid)) xs.push_back(x);
    // Kinks sit at sums of breakpoints; 0 counts as one for every input.
    std::vector<double> bf{0.0}, bg{0.0};
    for (const auto& k : F.knots()) bf.push_back(k.x);
    for (const auto& k : G.knots()) bg.push_back(k.x);
    for (double a : bf)
      for (double b : bg) xs.push_back(a + b);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Knot> knots;
    double run = 0.0;
    for (double x : xs) {
      const double bump = std::max(1e-12, x * 1e-12);
      if (x == 0.0) {
        run = std::clamp((*this)(F, G, bump, opt), 0.0, 1.0);
        knots.push_back({0.0, 0.0, run});
        continue;
      }
      const double left = std::max(run, std::clamp((*this)(F, G, x, opt), 0.0, 1.0));
      const double right =
          std::max(left, std::clamp((*this)(F, G, x + bump, opt), 0.0, 1.0));
      knots.push_back({x, left, right});
      run = right;
    }
    return DistFn::piecewise(std::move(knots), /*approximate=*/true);
  }

 private:
  TriangleFn(Kind k, TNorm T) : kind_(k), T_(std::move(T)) {}

  Kind kind_;
  TNorm T_;
  std::string name_;
  std::shared_ptr<const Evaluator> fn_;
};

namespace detail {

/// F <= G on (0, ∞). Exact for two piecewise functions (both one-sided values
/// at every breakpoint); analytic arguments add a dense logarithmic grid.
inline bool pointwise_leq(const DistFn& F, const DistFn& G) {
  std::vector<double> xs;
  for (const auto& k : F.knots()) xs.push_back(k.x);
  for (const auto& k : G.knots()) xs.push_back(k.x);
  if (!F.is_piecewise() || !G.is_piecewise())
    for (double x : logspace(1e-6, 1e6, 2001)) xs.push_back(x);
  for (double x : xs)
    if (F.eval(x) > G.eval(x) || F.right_limit(x) > G.right_limit(x))
      return false;
  return F.tail() <= G.tail();
}

}  // namespace detail

/// Checks commutativity (exact), ε_0 identity, monotonicity in each argument
/// and associativity on a grid of evaluation points.
inline Verdict triangle_properties_check(const TriangleFn& tau,
                                         const std::vector<DistFn>& samples,
                                         const std::vector<double>& grid,
                                         double tol = 1e-6,
                                         double tol_assoc = 1e-3) {
  if (samples.empty())
    throw DomainError("triangle_properties_check: samples must be nonempty");
  Verdict v("triangle_properties", true);
  const DistFn e0 = epsilon(0.0);
  double worst_comm = 0.0, worst_id = 0.0, worst_mono = 0.0, worst_assoc = 0.0;
  std::string first_failure;
  auto fail = [&](const std::string& what) {
    if (first_failure.empty()) first_failure = what;
    v.witness(what);
    v.pass = false;
  };

  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (double x : grid) {
      const double d = std::abs(tau(e0, samples[i], x) - samples[i].eval(x));
      worst_id = std::max(worst_id, d);
      if (d > tol)
        fail(detail::concat("identity: sample ", i, ", x=", x, ", |diff|=", d));
    }
    for (std::size_t j = 0; j < samples.size(); ++j) {
      for (double x : grid) {
        const double a = tau(samples[i], samples[j], x);
        const double b = tau(samples[j], samples[i], x);
        worst_comm = std::max(worst_comm, std::abs(a - b));
        if (a != b)
          fail(detail::concat("commutativity: samples ", i, ",", j, ", x=", x));
      }
      // Monotonicity in the first argument for pointwise-ordered pairs.
      if (i == j || !detail::pointwise_leq(samples[i], samples[j])) continue;
      for (const auto& H : samples)
        for (double x : grid) {
          const double d = tau(samples[i], H, x) - tau(samples[j], H, x);
          worst_mono = std::max(worst_mono, d);
          if (d > tol)
            fail(detail::concat("monotonicity: samples ", i, "<=", j, ", x=",
                                x, ", excess=", d));
        }
    }
  }

  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const DistFn fg = tau.materialize(samples[i], samples[j]);
      for (std::size_t k = 0; k < samples.size(); ++k) {
        const DistFn gh = tau.materialize(samples[j], samples[k]);
        for (double x : grid) {
          const double d = std::abs(tau(fg, samples[k], x) -
                                    tau(samples[i], gh, x));
          worst_assoc = std::max(worst_assoc, d);
          if (d > tol_assoc)
            fail(detail::concat("associativity: samples ", i, ",", j, ",", k,
                                ", x=", x, ", |diff|=", d));
        }
      }
    }

  v.metric("worst_commutativity", worst_comm)
      .metric("worst_identity", worst_id)
      .metric("worst_monotonicity", worst_mono)
      .metric("worst_associativity", worst_assoc)
      .metric("tol", tol)
      .metric("tol_assoc", tol_assoc);
  v.message = v.pass ? "all triangle-function properties hold on the grid"
                     : first_failure;
  v.samples = samples.size();
  return v;
}

}  // namespace pnspace
