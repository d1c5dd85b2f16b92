#include <gtest/gtest.h>

#include <cmath>

#include "hartman/corpus.hpp"
#include "hartman/reconstruct.hpp"
#include "oracles.hpp"

using namespace hartman;

namespace {

Character golden() { return Character::quadratic(-1, 1, 5, 2); }

}  // namespace

TEST(Reconstruct, AlternatingIsExactOnZ2) {
  ReconstructParams p;
  p.N = 2000;
  const auto r = reconstruct(sample(alternating(), 2000), p);
  EXPECT_EQ(r.comp.describe(), "T^0 x Z/2");
  // The window mean of (−1)^n is exactly 1/(2N+1), below θ, so it stays in the fit.
  EXPECT_NEAR(r.report.fitted_l1, 1.0 / 4001.0, 1e-12);
  EXPECT_TRUE(r.report.kernel_trivial);
  EXPECT_EQ(r.report.kernel_check, "estimated");
}

TEST(Reconstruct, Cos2IsCyclicOfOrder27) {
  ReconstructParams p;
  p.N = 2700;
  p.spectrum.theta = 1e-3;
  const auto r = reconstruct(sample(cos2_product(3), 2700), p);
  EXPECT_EQ(r.comp.describe(), "T^0 x Z/27");
  EXPECT_LT(r.report.fitted_l1, 1e-6);
  // Rationality of the peaks is decided from samples.
  EXPECT_EQ(r.report.certification, Certification::numerical);
  for (std::int64_t n = -30; n <= 30; ++n) {
    EXPECT_NEAR(std::abs(r.realization.evaluate(r.comp.embed(n)) - oracle::cos2(3, (n % 27 + 27) % 27)), 0.0, 1e-6);
  }
}

TEST(Reconstruct, EmptySpectrum) {
  const auto r = reconstruct(HartmanFunction::sampled(50, std::vector<std::complex<double>>(101, 0.0)));
  EXPECT_TRUE(r.report.empty_spectrum);
  EXPECT_EQ(r.comp.describe(), "T^0");
  EXPECT_EQ(r.report.fitted_l1, 0.0);
}

TEST(Reconstruct, GoldenCutRecoversRotation) {
  ReconstructParams p;
  p.N = 50000;
  p.spectrum.theta = 0.02;
  p.order = 64;
  p.error_orders = {8, 16, 32, 64};
  const auto r = reconstruct(sample(cut_sequence(golden(), Rational(1, 3)), 50000), p);
  EXPECT_EQ(r.comp.torus_rank(), 1);
  EXPECT_EQ(equivalence_check(r.comp, Compactification::induced({{golden()}})).verdict, Verdict::yes);
  // Fejér synthesis error decreases with the order.
  ASSERT_EQ(r.report.l1_errors.size(), 4u);
  EXPECT_LT(r.report.l1_errors.back().second, r.report.l1_errors.front().second);
  for (const auto& fr : r.report.residuals) EXPECT_LT(fr.alpha_mismatch, 1e-6);
}

TEST(Equivalence, Examples) {
  const auto a = Compactification::induced({{Character::rational(Rational(1, 2)), Character::rational(Rational(1, 3))}});
  const auto b = Compactification::induced({{Character::rational(Rational(1, 6))}});
  const auto e = equivalence_check(a, b);
  EXPECT_EQ(e.verdict, Verdict::yes);
  EXPECT_TRUE(e.same_shape);
  const auto f = equivalence_check(Compactification::induced({{golden()}}),
                                   Compactification::induced({{golden(), Character::rational(Rational(1, 2))}}));
  EXPECT_EQ(f.verdict, Verdict::no);
  EXPECT_EQ(f.forward.verdict, Verdict::yes);
  EXPECT_EQ(f.backward.verdict, Verdict::no);
}

TEST(Minimality, RealizationIsCoveredByAnyOther) {
  // C_Γ for the golden cut is covered by the explicit (golden, ℤ/2) compactification and not conversely.
  const auto small = Compactification::induced({{golden()}});
  const auto big = Compactification::from_embedding({golden()}, {2}, {1});
  EXPECT_EQ(covers(small, big).verdict, Verdict::yes);
  EXPECT_EQ(covers(big, small).verdict, Verdict::no);
}
