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

#include <random>

#include "oracles.hpp"
#include "pnspace/tnorm.hpp"

using namespace pnspace;

TEST(TNorm, ValuesAndDuals) {
  EXPECT_EQ(tnorm_eval(TNorm::M(), 0.3, 0.7), 0.3);
  EXPECT_DOUBLE_EQ(tnorm_eval(TNorm::Pi(), 0.5, 0.5), 0.25);
  EXPECT_DOUBLE_EQ(tnorm_eval(TNorm::W(), 0.7, 0.6), 0.3);
  EXPECT_EQ(tnorm_eval(TNorm::W(), 0.3, 0.6), 0.0);
  EXPECT_EQ(dual_tnorm_eval(TNorm::M(), 0.3, 0.7), 0.7);
  EXPECT_DOUBLE_EQ(dual_tnorm_eval(TNorm::Pi(), 0.5, 0.5), 0.75);
  EXPECT_DOUBLE_EQ(dual_tnorm_eval(TNorm::W(), 0.3, 0.4), 0.7);
  EXPECT_EQ(dual_tnorm_eval(TNorm::W(), 0.7, 0.6), 1.0);
}

TEST(TNorm, BoundaryAndOrder) {
  const auto grid = detail::linspace(0.0, 1.0, 21);
  for (const auto& T : {TNorm::M(), TNorm::Pi(), TNorm::W()})
    for (double x : grid) {
      EXPECT_NEAR(T(x, 1.0), x, 1e-15) << T.name();
      EXPECT_EQ(T(x, 0.0), 0.0);
      for (double y : grid) {
        EXPECT_EQ(T(x, y), T(y, x));
        EXPECT_LE(tnorm_eval(TNorm::W(), x, y), tnorm_eval(TNorm::Pi(), x, y) + 1e-15);
        EXPECT_LE(tnorm_eval(TNorm::Pi(), x, y), tnorm_eval(TNorm::M(), x, y));
      }
    }
}

TEST(TNorm, DomainAndConstructionErrors) {
  EXPECT_THROW(tnorm_eval(TNorm::M(), -0.1, 0.5), DomainError);
  EXPECT_THROW(dual_tnorm_eval(TNorm::Pi(), 0.5, 1.5), DomainError);
  EXPECT_THROW(TNorm::from_string("Hamacher"), ConstructionError);
  EXPECT_THROW(TNorm::custom("x", [](double a, double b) { return a * b; }, false),
               ConstructionError);
  const TNorm c = TNorm::custom("prod", [](double a, double b) { return a * b; }, true);
  EXPECT_DOUBLE_EQ(c(0.5, 0.4), 0.2);
}

TEST(Convolution, ClosedFormValues) {
  const DistFn ramp = uniform_ramp();
  // sup_{s+t=1} s·t = 1/4; inf_{s+t=1} max(s, t) = 1/2.
  EXPECT_NEAR(tau_T_eval(TNorm::Pi(), ramp, ramp, 1.0), 0.25, 1e-9);
  EXPECT_NEAR(tau_Tstar_eval(TNorm::M(), ramp, ramp, 1.0), 0.5, 1e-9);
  // τ_M(ε_a, ε_b) = ε_{a+b}.
  EXPECT_EQ(tau_T_eval(TNorm::M(), epsilon(1.0), epsilon(2.0), 3.0), 0.0);
  EXPECT_EQ(tau_T_eval(TNorm::M(), epsilon(1.0), epsilon(2.0), 3.01), 1.0);
  // The split s = 0 contributes T*(0, G(x)) = G(x), so τ_{T*} <= min(F, G).
  EXPECT_NEAR(tau_Tstar_eval(TNorm::Pi(), constant_plateau(0.5), constant_plateau(0.5), 2.0),
              0.5, 1e-12);
  EXPECT_NEAR(tau_Tstar_eval(TNorm::Pi(), constant_plateau(0.5), constant_plateau(0.7), 2.0),
              0.5, 1e-12);
  EXPECT_NEAR(tau_T_eval(TNorm::Pi(), constant_plateau(0.5), constant_plateau(0.6), 2.0),
              0.3, 1e-12);
  EXPECT_THROW(tau_T_eval(TNorm::M(), ramp, ramp, 0.0), DomainError);
  EXPECT_EQ(tau_T_eval(TNorm::M(), ramp, ramp, kInf), 1.0);
}

TEST(Convolution, IdentityElement) {
  const DistFn G = rational();
  for (const auto& T : {TNorm::M(), TNorm::Pi(), TNorm::W()})
    for (double x : {0.1, 1.0, 5.0}) {
      EXPECT_NEAR(tau_T_eval(T, G, epsilon(0.0), x), G.eval(x), 1e-9);
      EXPECT_NEAR(tau_Tstar_eval(T, G, epsilon(0.0), x), G.eval(x), 1e-9);
    }
}

class ConvolutionOracle : public ::testing::TestWithParam<std::string> {};

TEST_P(ConvolutionOracle, ContinuousPairsWithinGridTolerance) {
  const std::string name = GetParam();
  const TNorm T = TNorm::from_string(name);
  std::mt19937_64 rng(std::hash<std::string>{}(name) % 1000);
  std::uniform_real_distribution<double> ux(0.05, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const DistFn F = oracle::random_continuous(rng);
    const DistFn G = oracle::random_continuous(rng);
    for (int k = 0; k < 3; ++k) {
      const double x = ux(rng);
      worst = std::max(worst, std::abs(tau_T_eval(T, F, G, x) -
                                       oracle::sup_convolution(oracle::plain_tnorm(name), F, G, x)));
      worst = std::max(worst, std::abs(tau_Tstar_eval(T, F, G, x) -
                                       oracle::inf_convolution(oracle::plain_dual(name), F, G, x)));
    }
  }
  EXPECT_LE(worst, 1e-4);
}

TEST_P(ConvolutionOracle, StepPairsExact) {
  const std::string name = GetParam();
  const TNorm T = TNorm::from_string(name);
  std::mt19937_64 rng(7 + name.size());
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const DistFn F = oracle::random_step(rng);
    const DistFn G = oracle::random_step(rng);
    for (int k = 0; k < 16; ++k) {
      const double x = 0.25 * k + 0.125;
      worst = std::max(worst, std::abs(tau_T_eval(T, F, G, x) -
                                       oracle::sup_convolution(oracle::plain_tnorm(name), F, G, x)));
      worst = std::max(worst, std::abs(tau_Tstar_eval(T, F, G, x) -
                                       oracle::inf_convolution(oracle::plain_dual(name), F, G, x)));
    }
  }
  EXPECT_LE(worst, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(AllTNorms, ConvolutionOracle, ::testing::Values("M", "Pi", "W"));

TEST(TriangleFn, NamesAndMaterialize) {
  EXPECT_EQ(TriangleFn::tau_T(TNorm::M()).name(), "tau_M");
  EXPECT_EQ(TriangleFn::tau_Tstar(TNorm::Pi()).name(), "tau_Pi*");
  EXPECT_EQ(TriangleFn::pointwise_min().name(), "pointwise_min");
  const TriangleFn tau = TriangleFn::tau_T(TNorm::Pi());
  const DistFn ramp = uniform_ramp();
  const DistFn m = tau.materialize(ramp, ramp);
  EXPECT_TRUE(m.approximate());
  for (double x : {0.5, 1.0, 1.5})
    EXPECT_NEAR(m.eval(x), tau(ramp, ramp, x), 1e-3);
}

TEST(TriangleFn, PropertiesHoldForStandardConvolutions) {
  std::mt19937_64 rng(3);
  std::vector<DistFn> samples{uniform_ramp(), rational(), epsilon(0.5),
                              oracle::random_continuous(rng)};
  const auto grid = detail::linspace(0.25, 4.0, 6);
  EXPECT_TRUE(detail::pointwise_leq(DistFn::piecewise({{0, 0, 0}, {2, 0.5, 0.5}}), uniform_ramp()));
  EXPECT_FALSE(detail::pointwise_leq(epsilon(0.5), uniform_ramp()));
  for (const auto& tau : {TriangleFn::tau_T(TNorm::M()), TriangleFn::tau_T(TNorm::Pi()),
                          TriangleFn::tau_Tstar(TNorm::M()), TriangleFn::pointwise_min()}) {
    const Verdict v = triangle_properties_check(tau, samples, grid);
    EXPECT_TRUE(v.pass) << tau.name() << ": " << v.message;
    EXPECT_EQ(*v.get("worst_commutativity"), 0.0);
  }
}

TEST(TriangleFn, BrokenCustomIsCaught) {
  // max(F, G) is commutative but has no ε_0 identity.
  const TriangleFn bad = TriangleFn::custom(
      "pointwise_max", [](const DistFn& F, const DistFn& G, double x) {
        return std::max(F.eval(x), G.eval(x));
      });
  const Verdict v = triangle_properties_check(bad, {uniform_ramp(), rational()},
                                              detail::linspace(0.25, 2.0, 4));
  EXPECT_FALSE(v.pass);
  EXPECT_GT(*v.get("worst_identity"), 0.1);
}
