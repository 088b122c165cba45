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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pnspace/distfun.hpp"
#include "pnspace/profile.hpp"

using namespace pnspace;

TEST(DistFn, EpsilonIsLeftContinuousStep) {
  const DistFn e = epsilon(1.5);
  EXPECT_EQ(e.eval(0.0), 0.0);
  EXPECT_EQ(e.eval(1.5), 0.0);
  EXPECT_EQ(e.right_limit(1.5), 1.0);
  EXPECT_EQ(e.eval(1.5000001), 1.0);
  EXPECT_EQ(e.eval(kInf), 1.0);
  EXPECT_EQ(e.tail(), 1.0);
}

TEST(DistFn, IdentityAndInfinity) {
  EXPECT_TRUE(epsilon(0.0).is_identity());
  EXPECT_EQ(epsilon(0.0).eval(0.0), 0.0);
  EXPECT_EQ(epsilon(0.0).eval(1e-300), 1.0);
  const DistFn inf = epsilon(kInf);
  EXPECT_EQ(inf.eval(1e300), 0.0);
  EXPECT_EQ(inf.eval(kInf), 1.0);
  EXPECT_EQ(inf.tail(), 0.0);
}

TEST(DistFn, NegativeArgumentRejected) {
  EXPECT_THROW(ddf_eval(uniform_ramp(), -1.0), DomainError);
  EXPECT_EQ(ddf_eval(uniform_ramp(), 0.5), 0.5);
}

TEST(DistFn, KnotValidation) {
  EXPECT_THROW(DistFn::piecewise({}), ConstructionError);
  EXPECT_THROW(DistFn::piecewise({{0.0, 0.1, 0.1}}), ConstructionError);
  EXPECT_THROW(DistFn::piecewise({{0.0, 0.0, 0.5}, {1.0, 0.4, 0.6}}),
               ConstructionError);
  EXPECT_THROW(DistFn::piecewise({{0.0, 0.0, 0.0}, {1.0, 0.5, 0.4}}),
               ConstructionError);
  EXPECT_THROW(DistFn::piecewise({{0.0, 0.0, 0.0}, {0.0, 0.5, 0.5}}),
               ConstructionError);
  EXPECT_THROW(DistFn::piecewise({{0.0, 0.0, 0.0}, {1.0, 1.0, 1.2}}),
               ConstructionError);
}

TEST(DistFn, PiecewiseInterpolation) {
  const DistFn F = DistFn::piecewise({{0.0, 0.0, 0.2}, {2.0, 0.6, 0.8}});
  EXPECT_EQ(F.eval(0.0), 0.0);
  EXPECT_DOUBLE_EQ(F.right_limit(0.0), 0.2);
  EXPECT_DOUBLE_EQ(F.eval(1.0), 0.4);
  EXPECT_DOUBLE_EQ(F.eval(2.0), 0.6);
  EXPECT_DOUBLE_EQ(F.right_limit(2.0), 0.8);
  EXPECT_DOUBLE_EQ(F.eval(50.0), 0.8);
  EXPECT_DOUBLE_EQ(F.tail(), 0.8);
  EXPECT_FALSE(is_proper(F));
}

TEST(DistFn, ScaledAndAnalytic) {
  const DistFn G = rational();
  EXPECT_DOUBLE_EQ(G.eval(1.0), 0.5);
  EXPECT_DOUBLE_EQ(G.scaled(2.0).eval(2.0), 0.5);
  EXPECT_DOUBLE_EQ(uniform_ramp().scaled(4.0).eval(1.0), 0.25);
  EXPECT_TRUE(is_proper(G));
  EXPECT_FALSE(is_proper(rational(0.8)));
  EXPECT_THROW(G.scaled(0.0), DomainError);
  const DistFn L = lifted_rational(0.3);
  EXPECT_EQ(L.eval(0.0), 0.0);
  EXPECT_DOUBLE_EQ(L.right_limit(0.0), 0.3);
  EXPECT_FALSE(L.continuous());
}

TEST(DistFn, AnalyticFamilyRoundTrip) {
  const DistFn a = analytic_family("exponential", {{"c", 0.9}, {"lambda", 2.0}});
  EXPECT_DOUBLE_EQ(a.eval(1.0), 0.9 * (1.0 - std::exp(-2.0)));
  EXPECT_THROW(analytic_family("nope", {}), ConstructionError);
}

TEST(DistFn, ValueScaled) {
  const DistFn v = value_scaled(rational(), 0.9);
  EXPECT_DOUBLE_EQ(v.eval(1.0), 0.45);
  EXPECT_DOUBLE_EQ(v.tail(), 0.9);
  const DistFn e = value_scaled(epsilon(0.0), 0.9);
  EXPECT_FALSE(e.is_identity());
  EXPECT_DOUBLE_EQ(e.right_limit(0.0), 0.9);
  EXPECT_THROW(value_scaled(rational(), 0.0), DomainError);
}

TEST(Sibley, StepToIdentityIsMinOfJumpAndOne) {
  for (int k = 1; k <= 50; ++k) {
    const double a = 0.1 * k;
    EXPECT_NEAR(sibley_distance(epsilon(a), epsilon(0.0)), std::min(a, 1.0), 1e-9)
        << "a=" << a;
  }
  EXPECT_EQ(sibley_distance(epsilon(0.0), epsilon(0.0)), 0.0);
  EXPECT_EQ(sibley_distance(epsilon(kInf), epsilon(0.0)), 1.0);
}

TEST(Sibley, PlateauDistanceIsOneMinusLevel) {
  for (double c : {0.0, 0.1, 0.5, 0.93, 1.0})
    EXPECT_NEAR(distance_to_identity(constant_plateau(c)), 1.0 - c, 1e-12);
}

TEST(Sibley, IdentityDistanceMatchesScanOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const DistFn F = oracle::random_continuous(rng);
    EXPECT_NEAR(distance_to_identity(F), oracle::scan_distance_to_identity(F), 2e-5);
  }
  for (double s : {0.01, 0.3, 1.0, 7.0}) {
    const DistFn F = rational().scaled(s);
    EXPECT_NEAR(distance_to_identity(F), oracle::scan_distance_to_identity(F), 2e-5);
  }
}

TEST(Sibley, GeneralDistanceAgreesWithIdentitySpecialCase) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const DistFn F = oracle::random_continuous(rng);
    EXPECT_NEAR(detail::sibley_bisect(F, epsilon(0.0)), distance_to_identity(F), 1e-9);
  }
}

TEST(Sibley, MetricProperties) {
  std::mt19937_64 rng(9);
  std::vector<DistFn> fs;
  for (int i = 0; i < 6; ++i) fs.push_back(oracle::random_continuous(rng));
  fs.push_back(epsilon(0.4));
  fs.push_back(rational());
  for (const auto& F : fs) {
    EXPECT_NEAR(sibley_distance(F, F), 0.0, 1e-9);
    for (const auto& G : fs) {
      const double d = sibley_distance(F, G);
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 1.0);
      EXPECT_NEAR(d, sibley_distance(G, F), 1e-9);
      for (const auto& H : fs)
        EXPECT_LE(d, sibley_distance(F, H) + sibley_distance(H, G) + 1e-8);
    }
  }
}

TEST(WeakConvergence, StepsShrinkingToZero) {
  const Verdict v = converges_weakly(
      [](std::size_t n) { return epsilon(1.0 / static_cast<double>(n)); },
      epsilon(0.0), 10000, 1e-3);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(*v.get("settle_index"), 1001.0);
}

TEST(WeakConvergence, PlateauNeverConverges) {
  const Verdict v = converges_weakly(
      [](std::size_t) { return constant_plateau(0.5); }, epsilon(0.0), 1000, 1e-3);
  EXPECT_FALSE(v.pass);
  EXPECT_NEAR(*v.get("floor"), 0.5, 1e-12);
}

TEST(IncreasingInverse, ExactAndNumeric) {
  EXPECT_DOUBLE_EQ(increasing_inverse(rational(), 0.75), 3.0);
  const DistFn noinv = analytic_family("exponential", {{"c", 1.0}, {"lambda", 1.0}});
  EXPECT_NEAR(noinv.eval(increasing_inverse(noinv, 0.3)), 0.3, 1e-12);
  EXPECT_THROW(increasing_inverse(rational(), 1.0), DomainError);
  EXPECT_THROW(increasing_inverse(rational(0.8), 0.5), PreconditionError);
  EXPECT_THROW(increasing_inverse(epsilon(1.0), 0.5), PreconditionError);
}

// --- Profiles and the quasi-inverse -----------------------------------------

TEST(Profile, BuiltinFamiliesAndTails) {
  const auto f = builtin_family(FamilyTag::f_ab, 1, 1);
  EXPECT_DOUBLE_EQ(f.eval(1.0), 0.5);
  EXPECT_DOUBLE_EQ(f.tail(), 0.0);
  const auto g = builtin_family(FamilyTag::g_ab, 0.5, 1);
  EXPECT_DOUBLE_EQ(g.eval(0.0), 1.0);
  EXPECT_DOUBLE_EQ(g.tail(), 0.5);
  const auto h = builtin_family(FamilyTag::h_ab, 2, 0.25);
  EXPECT_DOUBLE_EQ(h.eval(0.1), 0.8);
  EXPECT_DOUBLE_EQ(h.eval(3.0), 0.5);
  EXPECT_THROW(builtin_family(FamilyTag::f_ab, 1, 2), ConstructionError);
  EXPECT_THROW(builtin_family(FamilyTag::g_ab, 1.5, 1), ConstructionError);
  EXPECT_THROW(builtin_family(FamilyTag::h_ab, 2, 1), ConstructionError);
  EXPECT_THROW(f.eval(-1.0), DomainError);
}

TEST(QuasiInverse, ClosedFormsForBuiltinFamilies) {
  // f_{1,1}(x) = 1/(1+x): f^{[-1]}(y) = 1/y − 1.
  const auto f = builtin_family(FamilyTag::f_ab, 1, 1);
  for (double y : {0.1, 0.25, 0.5, 0.9})
    EXPECT_NEAR(quasi_inverse(f, y), 1.0 / y - 1.0, 1e-12);
  // h_{1,1}(x) = 1 − x on [0, 1].
  const auto h = builtin_family(FamilyTag::h_ab, 1, 1);
  EXPECT_NEAR(quasi_inverse(h, 0.3), 0.7, 1e-12);
  EXPECT_EQ(quasi_inverse(h, 1.0), 0.0);
  // Below the tail the superlevel set is unbounded.
  const auto g = builtin_family(FamilyTag::g_ab, 0.5, 1);
  EXPECT_EQ(quasi_inverse(g, 0.4), kInf);
  EXPECT_NEAR(quasi_inverse(g, 0.75), std::log(2.0), 1e-12);
  EXPECT_THROW(quasi_inverse(f, 1.5), DomainError);
}

TEST(QuasiInverse, PiecewiseExactFromKnots) {
  const auto p = NonincreasingProfile::piecewise(
      {{0.0, 1.0, 1.0}, {1.0, 0.6, 0.4}, {3.0, 0.2, 0.2}});
  EXPECT_EQ(quasi_inverse(p, 0.5), 1.0);   // jump straddles 0.5
  EXPECT_NEAR(quasi_inverse(p, 0.8), 0.5, 1e-15);  // first segment
  EXPECT_NEAR(quasi_inverse(p, 0.3), 2.0, 1e-15);  // second segment
  EXPECT_EQ(quasi_inverse(p, 0.1), kInf);  // below the tail
  EXPECT_EQ(quasi_inverse(p, 0.2), 3.0);
}

TEST(QuasiInverse, MatchesGridSupOracle) {
  const auto grid = detail::linspace(0.0, 20.0, 200001);
  for (auto [tag, a, b] : {std::tuple{FamilyTag::f_ab, 2.0, 1.0},
                           std::tuple{FamilyTag::g_ab, 0.8, 2.0},
                           std::tuple{FamilyTag::h_ab, 0.5, 1.5}}) {
    const auto f = builtin_family(tag, a, b);
    for (double y : {0.35, 0.6, 0.85}) {
      const double q = quasi_inverse(f, y);
      if (std::isinf(q)) continue;
      EXPECT_NEAR(q, oracle::grid_quasi_inverse([&](double x) { return f.eval(x); }, y, grid),
                  1e-4)
          << to_string(tag) << " y=" << y;
    }
  }
}

TEST(QuasiInverse, SuperlevelBiconditionalOnGrid) {
  const auto xs = detail::linspace(0.0, 5.0, 100);
  const auto ys = detail::linspace(0.0, 1.0, 100);
  for (auto [tag, a, b] : {std::tuple{FamilyTag::f_ab, 1.0, 1.0},
                           std::tuple{FamilyTag::g_ab, 1.0, 0.5},
                           std::tuple{FamilyTag::h_ab, 1.0, 1.0}}) {
    const auto f = builtin_family(tag, a, b);
    int violations = 0;
    for (double x : xs)
      for (double y : ys)
        if ((f.eval(x) > y) != (x < quasi_inverse(f, y))) ++violations;
    EXPECT_EQ(violations, 0) << to_string(tag);
  }
}
