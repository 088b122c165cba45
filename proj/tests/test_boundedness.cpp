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

#include "pnspace/boundedness.hpp"

using namespace pnspace;

namespace {

const NormedCarrier kPlane(2, NormKind::euclidean);

SamplePlan quick_plan() {
  SamplePlan plan;
  plan.vectors = 8;
  plan.n_max = 1000;
  return plan;
}

PNSpace f11() {
  return make_f_menger(kPlane, builtin_family(FamilyTag::f_ab, 1, 1), TNorm::Pi());
}

std::vector<VectorPoint> random_points(std::size_t n, double scale, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<VectorPoint> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(VectorPoint{u(rng), u(rng)});
  return out;
}

}  // namespace

TEST(SetSpec, Factories) {
  EXPECT_THROW(SetSpec::ball(kPlane.zero(), 0.0), ConstructionError);
  EXPECT_THROW(SetSpec::ball(kPlane.zero(), kInf), ConstructionError);
  EXPECT_THROW(SetSpec::finite({}), ConstructionError);
  EXPECT_THROW(SetSpec::generator("g", nullptr, 1), ConstructionError);
  EXPECT_THROW(SetSpec::whole().realize(), DomainError);
  const SetSpec g = SetSpec::generator(
      "two", [](std::uint64_t s) { return random_points(2, 1.0, s); }, 5);
  EXPECT_EQ(g.realize(), random_points(2, 1.0, 5));
  EXPECT_EQ(SetSpec::ball(kPlane.zero(), 1.0).label, "open ball r=1 about (0, 0)");
}

TEST(Phi, ClosedFormMatchesSampling) {
  const std::vector<PNSpace> spaces{make_simple(kPlane, rational()),
                                    make_alpha_simple(kPlane, exponential(), 2.0), f11()};
  const std::vector<SetSpec> balls{SetSpec::ball(kPlane.zero(), 1.0),
                                   SetSpec::ball(VectorPoint{1.0, 1.0}, 2.0, false),
                                   SetSpec::ball(VectorPoint{-3.0, 0.5}, 0.25)};
  for (const auto& s : spaces)
    for (const auto& A : balls)
      for (double u : {0.1, 1.0, 7.0}) {
        const double closed = phi_inf(s, A, u);
        const double sampled = phi_inf(s, A, u, PhiMode::sampled);
        EXPECT_NEAR(closed, sampled, 1e-3) << s.describe() << " " << A.label << " u=" << u;
        // Sampling only sees points of A, so it can never undercut the infimum.
        EXPECT_GE(sampled, closed - 1e-12);
      }
}

TEST(Phi, SimpleSpaceValues) {
  const PNSpace s = make_simple(kPlane, rational());
  // Φ over the closed ball of radius 2 about θ is G(u/2) = u/(u + 2).
  EXPECT_DOUBLE_EQ(phi_inf(s, SetSpec::ball(kPlane.zero(), 2.0, false), 2.0), 0.5);
  EXPECT_DOUBLE_EQ(phi_inf(s, SetSpec::ball(kPlane.zero(), 2.0, true), 2.0), 0.5);
  EXPECT_EQ(phi_inf(s, SetSpec::whole(), 5.0), 0.0);
  EXPECT_DOUBLE_EQ(phi_inf(s, SetSpec::finite({VectorPoint{3.0, 4.0}, VectorPoint{1.0, 0.0}}), 5.0),
                   0.5);
  EXPECT_THROW(phi_inf(s, SetSpec::whole(), 0.0), DomainError);
}

TEST(Phi, RadiusIsLeftLimit) {
  // Equilateral with ν_p = ε_1: Φ_A = ε_1 and R_A(1) = 0 < R_A(1+).
  const PNSpace s = make_equilateral(kPlane, epsilon(1.0));
  const SetSpec A = SetSpec::finite({VectorPoint{1.0, 0.0}});
  EXPECT_EQ(prob_radius(s, A, 1.0), 0.0);
  EXPECT_EQ(prob_radius(s, A, 1.0001), 1.0);
  // Open ball in an f-space: Φ uses the left limit f(R−).
  const auto h = builtin_family(FamilyTag::h_ab, 1, 0.5);
  const PNSpace hs = make_f_menger(kPlane, h, TNorm::W());
  EXPECT_DOUBLE_EQ(phi_inf(hs, SetSpec::ball(kPlane.zero(), 0.25), 1.0), 0.75);
  EXPECT_DOUBLE_EQ(prob_radius(hs, SetSpec::ball(kPlane.zero(), 0.25, false), kInf), 0.75);
}

TEST(Phi, MonotoneInTheSet) {
  const std::vector<PNSpace> spaces{make_simple(kPlane, rational()), f11(),
                                    make_alpha_simple(kPlane, rational(), 0.5)};
  const auto pts = random_points(30, 2.0, 9);
  const SetSpec small = SetSpec::finite({pts.begin(), pts.begin() + 10});
  const SetSpec big = SetSpec::finite(pts);
  const SetSpec inner = SetSpec::ball(VectorPoint{0.5, 0.0}, 1.0);
  const SetSpec outer = SetSpec::ball(kPlane.zero(), 3.0);
  for (const auto& s : spaces)
    for (double u : detail::logspace(1e-2, 1e2, 9)) {
      EXPECT_GE(phi_inf(s, small, u), phi_inf(s, big, u));
      EXPECT_GE(phi_inf(s, inner, u), phi_inf(s, outer, u));
      EXPECT_GE(phi_inf(s, outer, u), phi_inf(s, SetSpec::whole(), u));
      EXPECT_GE(prob_radius(s, inner, u), prob_radius(s, outer, u));
    }
}

TEST(DBounded, TailValues) {
  const PNSpace s = make_simple(kPlane, rational());
  EXPECT_TRUE(is_d_bounded(s, SetSpec::ball(kPlane.zero(), 100.0)).pass);
  const Verdict whole = is_d_bounded(s, SetSpec::whole());
  EXPECT_FALSE(whole.pass);
  EXPECT_EQ(*whole.get("radius_tail"), 0.0);
  EXPECT_EQ(radius_tail(f11(), SetSpec::ball(kPlane.zero(), 3.0, false)), 0.25);
}

TEST(Separation, FSpaceNeighbourhoodOfOrigin) {
  const PNSpace s = f11();
  const SetSpec N = strong_neighborhood_set(s, kPlane.zero(), 0.5);
  ASSERT_EQ(N.kind, SetSpec::Kind::ball);
  EXPECT_DOUBLE_EQ(N.radius, 1.0);  // f^{[-1]}(0.5) = 1
  const Verdict d = is_d_bounded(s, N);
  EXPECT_FALSE(d.pass);
  EXPECT_NEAR(*d.get("radius_tail"), 0.5, 1e-6);
  EXPECT_TRUE(is_topologically_bounded(s, N, quick_plan()).pass);
}

TEST(TopologicallyBounded, Verdicts) {
  const PNSpace s = make_simple(kPlane, rational());
  const SamplePlan plan = quick_plan();
  EXPECT_TRUE(is_topologically_bounded(s, SetSpec::ball(VectorPoint{5.0, 0.0}, 2.0), plan).pass);
  EXPECT_TRUE(is_topologically_bounded(s, SetSpec::finite(random_points(5, 10.0, 1)), plan).pass);
  const Verdict w = is_topologically_bounded(s, SetSpec::whole(), plan);
  EXPECT_FALSE(w.pass);
  EXPECT_FALSE(w.witnesses.empty());
  // n² e_1 / n = n e_1, and d_S(ν_{n e1}, ε_0) tends to 1.
  EXPECT_GT(*w.get("floor"), 0.99);
}

TEST(Harness, AgreementOnCharacteristicSerstnevSpaces) {
  const SamplePlan plan = quick_plan();
  for (const PNSpace& s : {make_simple(kPlane, rational()), make_simple(kPlane, uniform_ramp()),
                           make_simple(NormedCarrier(3, NormKind::sup), exponential())}) {
    const std::size_t dim = s.carrier().dim;
    std::vector<VectorPoint> pts = sample_vectors(dim, 20, 3);
    std::vector<SetSpec> panel{
        SetSpec::ball(s.carrier().zero(), 1.0),
        SetSpec::ball(VectorPoint::basis(dim, 0), 50.0, false),
        SetSpec::whole(),
        SetSpec::finite(pts),
        SetSpec::finite({s.carrier().zero()}),
        strong_neighborhood_set(s, s.carrier().zero(), 0.3),
        SetSpec::generator(
            "random 40",
            [dim](std::uint64_t seed) {
              auto v = sample_vectors(dim, 40, seed);
              for (auto& p : v) p = 25.0 * p;
              return v;
            },
            17),
    };
    const BoundednessReport r = boundedness_equivalence_harness(s, panel, plan);
    ASSERT_EQ(r.entries.size(), panel.size());
    EXPECT_TRUE(r.pass()) << s.describe();
    EXPECT_EQ(r.disagreements(), 0u);
    // Everything but the whole space is bounded.
    for (std::size_t i = 0; i < panel.size(); ++i)
      EXPECT_EQ(r.entries[i].d_bounded.pass, panel[i].kind != SetSpec::Kind::whole)
          << r.entries[i].label;
  }
}

TEST(Harness, Preconditions) {
  const std::vector<SetSpec> panel{SetSpec::whole()};
  try {
    boundedness_equivalence_harness(f11(), panel, quick_plan());
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.hypothesis(), "check_serstnev");
  }
  try {
    boundedness_equivalence_harness(make_simple(kPlane, rational(0.8)), panel, quick_plan());
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.hypothesis(), "is_characteristic");
  }
}

TEST(NeighbourhoodSet, Shapes) {
  const PNSpace s = make_simple(kPlane, rational());
  for (double t : {0.1, 0.5, 0.9}) {
    const SetSpec N = strong_neighborhood_set(s, VectorPoint{1.0, 2.0}, t);
    ASSERT_EQ(N.kind, SetSpec::Kind::ball);
    EXPECT_NEAR(N.radius, t * t / (1.0 - t), 1e-12);
  }
  const PNSpace eq = make_equilateral(kPlane, constant_plateau(0.5));
  EXPECT_EQ(strong_neighborhood_set(eq, kPlane.zero(), 0.3).kind, SetSpec::Kind::finite);
  EXPECT_EQ(strong_neighborhood_set(eq, kPlane.zero(), 0.6).kind, SetSpec::Kind::whole);
  // α-simple radius is the simple radius to the power 1/α.
  const PNSpace a2 = make_alpha_simple(kPlane, rational(), 2.0);
  EXPECT_NEAR(strong_neighborhood_set(a2, kPlane.zero(), 0.5).radius, std::sqrt(0.5), 1e-12);

  const PNSpace custom = make_value_scaled(s, 1.0);
  const SetSpec g = strong_neighborhood_set(custom, kPlane.zero(), 0.5, 4);
  ASSERT_EQ(g.kind, SetSpec::Kind::generator);
  const auto pts = g.realize();
  EXPECT_GT(pts.size(), 1u);
  for (const auto& q : pts) EXPECT_LT(kPlane.norm(q), 0.5);
}
