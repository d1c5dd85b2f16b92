#include <gtest/gtest.h>

#include <cmath>

#include "hartman/corpus.hpp"
#include "hartman/mean_engine.hpp"
#include "oracles.hpp"

using namespace hartman;

namespace {

Character golden() { return Character::quadratic(-1, 1, 5, 2); }

}  // namespace

TEST(CesaroMean, Constant) {
  const auto c = HartmanFunction::realized(Compactification(), StepFunction::constant(GroupShape{}, ComplexQ(Rational(3, 4))));
  const auto m = cesaro_mean(c, 1000);
  EXPECT_EQ(m.value, std::complex<double>(0.75));
  EXPECT_FALSE(m.diagnostics.empty());
  const auto one = cesaro_mean(HartmanFunction::realized(Compactification(), StepFunction::constant(GroupShape{}, ComplexQ(1))), 777);
  EXPECT_EQ(one.value, std::complex<double>(1.0));
}

TEST(CesaroMean, HalfRotationTelescopes) {
  for (std::int64_t N : {10, 101, 1000}) {
    const auto m = cesaro_mean(character_sequence(Character::rational(Rational(1, 2))), N);
    const double want = (N % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(2 * N + 1);
    EXPECT_NEAR(m.value.real(), want, 1e-15) << N;
  }
}

TEST(CesaroMean, GoldenCutEquidistributes) {
  const auto m = cesaro_mean(cut_sequence(golden(), Rational(1, 3)), 100000);
  EXPECT_NEAR(m.value.real(), 1.0 / 3.0, 2e-3);
  EXPECT_EQ(m.window_radius, 100000);
  EXPECT_EQ(m.diagnostics.front().first, 100000);
  EXPECT_EQ(m.diagnostics.back().first, 1);
}

TEST(FourierCoefficient, CharacterItself) {
  const auto chi = Character::quadratic(-1, 1, 2, 1);
  const auto m = fourier_coefficient(character_sequence(chi), chi, 1000);
  EXPECT_NEAR(std::abs(m.value - 1.0), 0.0, 1e-12);
}

TEST(FourierCoefficient, ArcIntegral) {
  const auto phi = cut_sequence(golden(), Rational(1, 3));
  const auto c1 = fourier_coefficient(phi, golden(), 100000).value;
  EXPECT_LT(std::abs(c1 - oracle::arc_coefficient(1, 1.0 / 3.0)), 1e-3);
  EXPECT_NEAR(std::abs(c1), std::sqrt(3.0) / (2.0 * oracle::kPi), 1e-3);
  const Character chars[] = {golden()};
  const Integer three[] = {Integer(3)};
  const auto c3 = fourier_coefficient(phi, Character::combination(chars, three), 100000).value;
  EXPECT_LT(std::abs(c3), 1e-3);
}

TEST(ExactMean, Examples) {
  EXPECT_EQ(exact_mean(cut_sequence(Character::rational(Rational(1, 2)), Rational(1, 2))), ComplexQ(Rational(1, 2)));
  EXPECT_EQ(exact_mean(cut_sequence(golden(), Rational(1, 3))), ComplexQ(Rational(1, 3)));
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(exact_mean(cos2_product(n)), ComplexQ(Rational(1) / (Integer(1) << n))) << n;
  EXPECT_THROW(exact_mean(sample(alternating(), 10)), std::invalid_argument);
  EXPECT_THROW(exact_mean(character_sequence(Character::floating(0.3))), std::invalid_argument);
}

TEST(ExactMean, PeriodSumOracle) {
  for (int n = 1; n <= 6; ++n) EXPECT_NEAR(to_double(exact_mean(cos2_product(n)).re), oracle::cos2_period_mean(n), 1e-14) << n;
}

TEST(Properties, WindowShiftBound) {
  for (const auto& s : realized_corpus()) {
    const std::int64_t N = 5000;
    const auto base = cesaro_mean(s.phi, N).value;
    for (std::int64_t g : {-37, -1, 1, 5, 200}) {
      const auto shifted = cesaro_mean(s.phi.translated(g), N).value;
      const double bound = 2.0 * s.phi.sup_bound() * static_cast<double>(std::llabs(g)) / static_cast<double>(2 * N + 1);
      EXPECT_LE(std::abs(shifted - base), bound + 1e-12) << s.name << " g=" << g;
    }
  }
}

TEST(Properties, Positivity) {
  for (int n = 1; n <= 4; ++n) EXPECT_GE(cesaro_mean(cos2_product(n), 50).value.real(), 0.0);
  EXPECT_GE(cesaro_mean(cut_sequence(golden(), Rational(1, 100)), 10).value.real(), 0.0);
}

TEST(Properties, OracleAgreementImproves) {
  for (const auto& s : step_realized_corpus()) {
    const auto exact = exact_mean(s.phi).to_complex();
    double prev = 1.0;
    for (std::int64_t N : {1000, 10000, 100000}) {
      const double err = std::abs(cesaro_mean(s.phi, N).value - exact);
      // Discrepancy of these rotations is O(log N / N); allow noise around the trend.
      EXPECT_LE(err, std::max(prev, 20.0 * std::log(static_cast<double>(N)) / static_cast<double>(N))) << s.name << " N=" << N;
      prev = err * 1.5 + 1e-12;
    }
  }
}
