#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hartman/corpus.hpp"
#include "hartman/distance_filter.hpp"
#include "oracles.hpp"

using namespace hartman;

namespace {

Character golden() { return Character::quadratic(-1, 1, 5, 2); }
Rational q(std::int64_t p, std::int64_t d) { return Rational(p) / d; }
const GroupShape T{1, {}};
const GroupShape T2{2, {}};

}  // namespace

TEST(DistanceOnZ, ZeroShift) {
  for (const auto& s : realized_corpus()) EXPECT_EQ(distance_on_Z(s.phi, 0, 1000), 0.0) << s.name;
}

TEST(DistanceOnZ, ArcLaw) {
  const auto phi = cut_sequence(golden(), q(1, 3));
  const auto profile = distance_profile(phi, 100, 100000);
  double worst = 0.0;
  for (std::int64_t g = -100; g <= 100; ++g) {
    const double want = oracle::arc_distance(1.0 / 3.0, static_cast<double>(g) * golden().value());
    worst = std::max(worst, std::fabs(profile.at(g) - want));
    // d̂(−g) is d̂(g) on a window shifted by g.
    EXPECT_LE(std::fabs(profile.at(g) - profile.at(-g)), 2.0 * std::llabs(g) / 200001.0 + 1e-15);
  }
  EXPECT_LE(worst, 5e-3);
}

TEST(DistanceOnZ, CharacterIsConstantModulus) {
  const auto chi = Character::quadratic(-1, 1, 2, 1);
  const auto phi = character_sequence(chi);
  for (std::int64_t g : {1, 2, 7, 29}) {
    EXPECT_NEAR(distance_on_Z(phi, g, 2000), std::abs(1.0 - chi.evaluate(g)), 1e-12);
  }
}

TEST(DistanceOnZ, ValuesInRange) {
  for (const auto& s : realized_corpus()) {
    const auto p = distance_profile(s.phi, 50, 3000);
    for (double v : p.values) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 2.0 * s.phi.sup_bound() + 1e-12);
    }
  }
}

TEST(DistanceProfile, CorrelationPathMatchesDirectSums) {
  // Finitely-valued windows with a wide shift range take the correlation path; spot-check
  // shifts against the direct per-shift sum.
  for (const auto& s : realized_corpus()) {
    const std::int64_t N = 3000, G = 1500;
    const auto p = distance_profile(s.phi, G, N);
    EXPECT_EQ(p.at(0), 0.0);
    for (std::int64_t g : {-1500, -977, -1, 1, 2, 13, 610, 1499, 1500}) {
      EXPECT_NEAR(p.at(g), distance_on_Z(s.phi, g, N), 1e-9) << s.name << " g=" << g;
    }
  }
}

TEST(DistanceOnX, Examples) {
  const auto f = StepFunction::box(T, {{0, q(1, 3)}}, {}, ComplexQ(1));
  EXPECT_EQ(distance_on_X_exact(f, ExactPoint{{0}, {}}), Rational(0));
  EXPECT_EQ(distance_on_X_exact(f, ExactPoint{{q(1, 6)}, {}}), q(1, 3));
  const auto g = StepFunction::box(T2, {{0, q(1, 2)}, {0, 0}}, {}, ComplexQ(1));
  for (auto t : {q(1, 7), q(1, 2), q(5, 9)}) EXPECT_EQ(distance_on_X_exact(g, ExactPoint{{0, t}, {}}), Rational(0));
}

TEST(DistanceOnX, LipschitzSurrogate) {
  for (const auto& s : step_corpus()) {
    const double L = distance_lipschitz_bound(s.f);
    const int k = s.f.shape().torus_rank;
    for (int i = 0; i < 20; ++i) {
      ExactPoint x, y;
      for (int j = 0; j < k; ++j) {
        x.torus.push_back(q((7 * i + 3 * j) % 40, 40));
        y.torus.push_back(q((7 * i + 3 * j + 1) % 40, 40));
      }
      x.finite.assign(s.f.shape().finite_orders.size(), 0);
      y.finite = x.finite;
      const double dx = distance_on_X(s.f, x), dy = distance_on_X(s.f, y);
      EXPECT_LE(std::fabs(dx - dy), L / 40.0 + 1e-12) << s.name;
    }
  }
}

TEST(KernelSubgroup, Examples) {
  EXPECT_TRUE(kernel_subgroup(StepFunction::box(T, {{0, q(1, 3)}}, {}, ComplexQ(1))).is_trivial());
  const auto k2 = kernel_subgroup(StepFunction::box(T2, {{0, q(1, 3)}, {0, 0}}, {}, ComplexQ(1)));
  EXPECT_EQ(k2.subtorus(), std::vector<int>{1});
  EXPECT_EQ(k2.finite_elements().size(), 1u);
  const auto signed_halves = StepFunction::box(T, {{0, q(1, 2)}}, {}, ComplexQ(1)) +
                             StepFunction::box(T, {{q(1, 2), 1}}, {}, ComplexQ(-1));
  EXPECT_TRUE(kernel_subgroup(signed_halves).is_trivial());
  const auto one = StepFunction::box(T, {{0, q(1, 2)}}, {}, ComplexQ(1)) + StepFunction::box(T, {{q(1, 2), 1}}, {}, ComplexQ(1));
  EXPECT_EQ(kernel_subgroup(one).subtorus(), std::vector<int>{0});
}

TEST(KernelSubgroup, AgreesWithDistanceZeros) {
  // Every element of the computed kernel has d = 0; sampled rational points outside it have d > 0.
  for (const auto& s : step_corpus()) {
    const auto H = kernel_subgroup(s.f);
    for (const auto& h : H.finite_elements()) EXPECT_EQ(distance_on_X_exact(s.f, h).value_or(Rational(0)), Rational(0)) << s.name;
    if (s.f.shape().torus_rank != 1) continue;
    for (std::int64_t z = 0; z < s.f.shape().finite_size(); ++z) {
      for (int i = 0; i < 60; ++i) {
        ExactPoint x{{q(i, 60)}, s.f.shape().unflatten(z)};
        const double d = distance_on_X(s.f, x);
        EXPECT_EQ(d == 0.0, H.contains(x)) << s.name << " at " << i << "/60;" << z;
      }
    }
  }
}

TEST(FilterSet, LargeEpsTakesAll) {
  const auto phi = cut_sequence(golden(), q(1, 3));
  const auto set = filter_set(phi, 2.5, 30, 2000);
  EXPECT_EQ(set.members.size(), 61u);
}

TEST(FilterSet, GoldenMembersAreFibonacci) {
  const auto phi = cut_sequence(golden(), q(1, 3));
  const auto set = filter_set(phi, 0.1, 1000, 100000);
  const auto fib = oracle::convergent_denominators((std::sqrt(5.0L) - 1.0L) / 2.0L, 1000);
  for (auto g : set.members) {
    if (g == 0) continue;
    // d(g) < 0.1 ⇔ ‖gα‖ < 0.05 up to estimation noise.
    EXPECT_LT(oracle::circle(static_cast<double>(g) * golden().value()), 0.05 + 2e-3) << g;
  }
  for (auto f : fib) {
    if (oracle::circle(static_cast<double>(f) * golden().value()) < 0.045) {
      EXPECT_TRUE(std::binary_search(set.members.begin(), set.members.end(), f)) << f;
    }
  }
}

TEST(FilterSet, AlternatingEvenOnly) {
  const auto set = filter_set(alternating(), 0.5, 20, 1000);
  for (auto g : set.members) EXPECT_EQ(g % 2, 0);
  EXPECT_EQ(set.members.size(), 21u);
}

TEST(FilterSet, MonotoneInEpsAndContainsZero) {
  const auto phi = cut_sequence(Character::quadratic(-1, 1, 2, 1), q(1, 3));
  const auto profile = distance_profile(phi, 300, 20000);
  std::vector<std::int64_t> prev;
  for (double eps : {0.01, 0.05, 0.1, 0.3, 0.7}) {
    const auto set = filter_set(profile, eps);
    EXPECT_TRUE(std::binary_search(set.members.begin(), set.members.end(), 0));
    EXPECT_TRUE(std::includes(set.members.begin(), set.members.end(), prev.begin(), prev.end()));
    prev = set.members;
  }
}

TEST(SubMembership, SpectralCharacterIsConsistent) {
  const auto phi = cut_sequence(golden(), q(1, 3));
  MembershipParams p;
  const auto r = sub_membership_test(phi, golden(), p);
  EXPECT_EQ(r.verdict, MembershipVerdict::consistent) << r.detail;
  EXPECT_TRUE(r.inequality_holds);
  // E(δ) ≤ δ/|m(φχ̄)| up to the window slack.
  for (const auto& e : r.envelope) {
    if (e.members > 0) EXPECT_LE(e.envelope, (e.delta + 2.0 * p.g_window / (2.0 * p.N + 1)) / std::abs(r.coefficient) + 1e-9);
  }
}

TEST(SubMembership, IndependentCharacterIsBoundedAway) {
  const auto phi = cut_sequence(golden(), q(1, 3));
  const auto r = sub_membership_test(phi, Character::quadratic(-1, 1, 2, 1), MembershipParams{});
  EXPECT_EQ(r.verdict, MembershipVerdict::inconsistent) << r.detail;
  EXPECT_TRUE(r.inequality_holds);
}

TEST(SubMembership, TrivialCharacter) {
  const auto phi = cut_sequence(golden(), q(1, 3));
  MembershipParams p;
  p.g_window = 500;
  p.N = 20000;
  const auto r = sub_membership_test(phi, Character(), p);
  for (const auto& e : r.envelope) EXPECT_EQ(e.envelope, 0.0);
  EXPECT_EQ(r.verdict, MembershipVerdict::consistent);
}

TEST(Neighborhoods, FilterInsideNeighborhood) {
  for (const auto& s : step_realized_corpus()) {
    const auto profile = distance_profile(s.phi, 500, 20000);
    for (double eps : {0.5, 0.1}) {
      const auto c = check_filter_in_neighborhood(s.phi, profile, eps, 1e-2);
      EXPECT_TRUE(c.passed) << s.name << " eps=" << eps << " worst=" << c.worst;
    }
  }
}

TEST(Neighborhoods, LowerBoundIsBelowTrueDistance) {
  const auto f = StepFunction::box(T, {{0, q(1, 3)}}, {}, ComplexQ(1));
  // d(x) = 2 min(‖x‖, 1/3), so the infimum off the r-ball is 2r.
  for (double r : {0.05, 0.1, 0.2}) {
    const double lb = distance_lower_bound_outside_ball(f, r, 400);
    EXPECT_LE(lb, 2.0 * r + 1e-12);
    EXPECT_GE(lb, 2.0 * r - 0.02);
  }
}

TEST(SubgroupH, GeneratedClosure) {
  const auto H = SubgroupH::generated(T2, {}, {ExactPoint{{q(1, 2), 0}, {}}, ExactPoint{{0, q(1, 3)}, {}}});
  EXPECT_EQ(H.finite_elements().size(), 6u);
  EXPECT_TRUE(H.contains(ExactPoint{{q(1, 2), q(2, 3)}, {}}));
  EXPECT_FALSE(H.contains(ExactPoint{{q(1, 4), 0}, {}}));
  EXPECT_THROW(SubgroupH::generated(T2, {}, {ExactPoint{{q(1, 2)}, {}}}), std::invalid_argument);
}
