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

#include "pnspace/topology.hpp"

using namespace pnspace;

namespace {

const NormedCarrier kPlane(2, NormKind::euclidean);

SamplePlan quick_plan() {
  SamplePlan plan;
  plan.vectors = 4;
  plan.n_max = 1000;
  return plan;
}

PNSpace f11() {
  return make_f_menger(kPlane, builtin_family(FamilyTag::f_ab, 1, 1), TNorm::Pi());
}

}  // namespace

TEST(Neighborhood, NormAndDistanceFormsAgree) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> ut(0.01, 0.99);
  const std::vector<PNSpace> spaces{
      make_simple(kPlane, rational()), make_simple(kPlane, uniform_ramp()),
      make_alpha_simple(kPlane, rational(), 2.0),
      make_equilateral(kPlane, constant_plateau(0.5)), f11()};
  int checked = 0;
  for (const auto& s : spaces)
    for (int i = 0; i < 400; ++i) {
      const VectorPoint p{u(rng), u(rng)}, q{u(rng), u(rng)};
      const double t = ut(rng);
      const NeighborhoodForms f = neighborhood_forms(s, p, t, q);
      if (std::abs(f.distance - t) < 1e-9) continue;  // boundary
      EXPECT_EQ(f.by_norm, f.by_distance) << s.describe() << " t=" << t;
      EXPECT_EQ(f.by_norm, neighborhood_contains(s, p, t, q));
      ++checked;
    }
  EXPECT_GT(checked, 1900);
}

TEST(Neighborhood, SimpleSpaceBallRadius) {
  // Simple space with G(x) = x/(x+1): q ∈ N_θ(t) iff ‖q‖ < t²/(1−t).
  const PNSpace s = make_simple(kPlane, rational());
  const double t = 0.5, r = t * t / (1.0 - t);
  EXPECT_TRUE(neighborhood_contains(s, kPlane.zero(), t, VectorPoint{r * 0.999, 0.0}));
  EXPECT_FALSE(neighborhood_contains(s, kPlane.zero(), t, VectorPoint{0.0, r * 1.001}));
  EXPECT_THROW(neighborhood_contains(s, kPlane.zero(), 0.0, kPlane.zero()), DomainError);
  EXPECT_TRUE(prob_distance(s, VectorPoint{1.0, 2.0}, VectorPoint{1.0, 2.0}).is_identity());
}

TEST(Settle, FarProbes) {
  const auto probes = detail::far_probes(10000);
  ASSERT_FALSE(probes.empty());
  EXPECT_EQ(probes.front(), 100000u);
  EXPECT_EQ(probes.back(), 1000000000000000ull);
  EXPECT_GE(detail::far_probes(static_cast<std::size_t>(1e14)).size(), 4u);
}

TEST(Settle, SeparatesDecayFromFloor) {
  const auto inv = [](std::size_t n) { return 1.0 / static_cast<double>(n); };
  const auto quarter = [](std::size_t n) { return std::pow(static_cast<double>(n), -0.25); };
  const auto floored = [](std::size_t n) { return 0.2 + 1.0 / static_cast<double>(n); };
  const Verdict a = detail::settle_verdict("inv", inv, 1000, 1e-3);
  EXPECT_TRUE(a.pass);
  EXPECT_NEAR(*a.get("floor"), 1e-15, 1e-20);
  // Slow decay: still 0.18 at n = 1000, but below 1e-3 at the far probes.
  const Verdict b = detail::settle_verdict("quarter", quarter, 1000, 1e-3);
  EXPECT_TRUE(b.pass);
  EXPECT_GT(*b.get("settle_index"), 1e12);
  const Verdict c = detail::settle_verdict("floored", floored, 1000, 1e-3);
  EXPECT_FALSE(c.pass);
  EXPECT_NEAR(*c.get("floor"), 0.2, 1e-12);
  EXPECT_EQ(*c.get("settle_index"), -1.0);
}

TEST(StrongConvergence, SequencesInSimpleSpace) {
  const PNSpace s = make_simple(kPlane, rational());
  const VectorPoint p{1.0, 1.0};
  const SamplePlan plan = quick_plan();
  EXPECT_TRUE(strong_converges(s, [&](std::size_t n) { return (1.0 / n) * p; },
                               kPlane.zero(), plan).pass);
  EXPECT_FALSE(strong_converges(s, [&](std::size_t) { return p; }, kPlane.zero(), plan).pass);
}

TEST(TVContinuity, Panel) {
  const SamplePlan plan = quick_plan();
  const Verdict simple = tv_continuity_check(make_simple(kPlane, rational()), plan);
  EXPECT_TRUE(simple.pass) << simple.message;

  const Verdict tail = tv_continuity_check(make_simple(kPlane, rational(0.8)), plan);
  EXPECT_FALSE(tail.pass);
  EXPECT_NEAR(*tail.get("floor"), 0.2, 1e-3);
  EXPECT_FALSE(tail.witnesses.empty());

  const Verdict eq = tv_continuity_check(make_equilateral(kPlane, constant_plateau(0.5)), plan);
  EXPECT_FALSE(eq.pass);
  EXPECT_NEAR(*eq.get("floor"), 0.5, 1e-9);

  for (double alpha : {0.5, 1.0, 2.0}) {
    const Verdict a = tv_continuity_check(make_alpha_simple(kPlane, rational(), alpha), plan);
    EXPECT_TRUE(a.pass) << "alpha=" << alpha << ": " << a.message;
  }

  const Verdict f = tv_continuity_check(f11(), plan);
  EXPECT_TRUE(f.pass) << f.message;
  EXPECT_EQ(*f.get("delta_witness"), 1.0);
  EXPECT_EQ(f.samples, plan.vectors * default_scalar_sequences().size());
}

TEST(TVContinuity, FSpaceDeltaWitness) {
  const PNSpace s = f11();
  const VectorPoint p{3.0, 4.0};
  // f_{1,1}^{[-1]}(1 − γ) = γ/(1 − γ); with ‖p‖ = 5 and γ = 0.5, δ = 0.2.
  const Verdict v = f_space_delta_witness(s, p, 0.5);
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(*v.get("delta"), 0.2, 1e-12);
  // h_{1,0.5} never drops below 0.5: for γ > 0.5 every β qualifies.
  const PNSpace h = make_f_menger(kPlane, builtin_family(FamilyTag::h_ab, 1, 0.5), TNorm::W());
  const Verdict w = f_space_delta_witness(h, p, 0.75);
  EXPECT_TRUE(w.pass);
  EXPECT_TRUE(std::isinf(*w.get("delta")));
  EXPECT_THROW(f_space_delta_witness(make_simple(kPlane, rational()), p, 0.5),
               PreconditionError);
  EXPECT_THROW(f_space_delta_witness(s, kPlane.zero(), 0.5), DomainError);
}
