#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hartman/corpus.hpp"
#include "hartman/hartman_function.hpp"
#include "hartman/mean_engine.hpp"
#include "oracles.hpp"

using namespace hartman;

namespace {

Character golden() { return Character::quadratic(-1, 1, 5, 2); }

}  // namespace

TEST(Evaluate, CutMembership) {
  const auto phi = cut_sequence(golden(), Rational(1, 3));
  for (std::int64_t n = -200; n <= 200; ++n) {
    const long double t = static_cast<long double>(n) * (std::sqrt(5.0L) - 1.0L) / 2.0L;
    const double frac = static_cast<double>(t - std::floor(t));
    if (std::fabs(frac - 1.0 / 3.0) < 1e-9 || frac < 1e-9) continue;
    EXPECT_EQ(phi.evaluate(n).real(), frac < 1.0 / 3.0 ? 1.0 : 0.0) << n;
  }
}

TEST(Evaluate, AlternatingAndHalfCut) {
  const auto a = alternating();
  const auto c = cut_sequence(Character::rational(Rational(1, 2)), Rational(1, 2));
  for (std::int64_t n = -10; n <= 10; ++n) {
    EXPECT_EQ(a.evaluate(n), std::complex<double>(n % 2 == 0 ? 1.0 : -1.0));
    EXPECT_EQ(c.evaluate(n).real(), n % 2 == 0 ? 1.0 : 0.0);
  }
}

TEST(Cos2Product, KnownValues) {
  EXPECT_NEAR(cos2_product(1).evaluate(1).real(), 0.25, 1e-15);
  EXPECT_NEAR(cos2_product(1).evaluate(0).real(), 1.0, 1e-15);
  for (int n = 1; n <= 5; ++n) {
    const auto phi = cos2_product(n);
    for (std::int64_t k = -40; k <= 40; ++k) {
      EXPECT_NEAR(phi.evaluate(k).real(), oracle::cos2(n, (k % 729 + 729) % 729), 1e-13) << n << " " << k;
    }
  }
}

TEST(Cos2Product, PeriodAndRange) {
  for (int n = 1; n <= 4; ++n) {
    const auto phi = cos2_product(n);
    std::int64_t period = 1;
    for (int j = 0; j < n; ++j) period *= 3;
    for (std::int64_t k = 0; k < 2 * period; ++k) {
      const auto v = phi.evaluate(k);
      EXPECT_NEAR(v.real(), phi.evaluate(k + period).real(), 1e-15);
      EXPECT_GE(v.real(), -1e-15);
      EXPECT_LE(v.real(), 1.0 + 1e-15);
    }
  }
}

TEST(Cos2Product, ExactPeriodMeans) {
  EXPECT_EQ(exact_mean(cos2_product(1)), ComplexQ(Rational(1, 2)));
  EXPECT_EQ(exact_mean(cos2_product(2)), ComplexQ(Rational(1, 4)));
  EXPECT_NEAR(oracle::cos2_period_mean(2), 0.25, 1e-15);
}

TEST(Realized, AgreesWithRealizationAtRandomPoints) {
  std::mt19937_64 rng(17);
  for (const auto& s : realized_corpus()) {
    const auto& r = s.phi.as_realized();
    for (int t = 0; t < 2000; ++t) {
      const auto n = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
      const auto x = r.comp.embed(n + r.shift);
      const std::complex<double> want = std::visit([&x](const auto& f) { return f.evaluate(x); }, r.realization);
      // Points within rounding of a jump can legitimately land on either side.
      if (std::abs(s.phi.evaluate(n) - want) > 1e-12) {
        bool near_edge = false;
        if (const auto* f = std::get_if<StepFunction>(&r.realization)) {
          for (const auto& p : f->pieces()) {
            for (std::size_t j = 0; j < p.box.size(); ++j) {
              near_edge = near_edge || oracle::circle(x.torus[j] - to_double(p.box[j].lo)) < 1e-9 ||
                          oracle::circle(x.torus[j] - to_double(p.box[j].hi)) < 1e-9;
            }
          }
        }
        EXPECT_TRUE(near_edge) << s.name << " n=" << n;
      }
    }
  }
}

TEST(Realized, Monotone) {
  const auto a = cesaro_mean(cut_sequence(golden(), Rational(1, 3)), 20000).value.real();
  const auto b = cesaro_mean(cut_sequence(golden(), Rational(999, 1000)), 20000).value.real();
  EXPECT_GT(b, a);
  EXPECT_GT(b, 0.99);
}

TEST(Sampled, WindowAccess) {
  const auto s = sample(alternating(), 5);
  EXPECT_EQ(s.radius(), 5);
  EXPECT_EQ(s.evaluate(-5), std::complex<double>(-1.0));
  EXPECT_THROW(s.evaluate(6), std::out_of_range);
  EXPECT_THROW(s.require_window(6), std::invalid_argument);
  EXPECT_EQ(s.translated(1).evaluate(0), std::complex<double>(-1.0));
}

TEST(Csv, RoundTripAndValidation) {
  const auto phi = cut_sequence(golden(), Rational(1, 3));
  std::stringstream ss;
  write_csv(ss, phi, 50);
  const auto back = read_csv(ss);
  EXPECT_EQ(back.radius(), 50);
  for (std::int64_t n = -50; n <= 50; ++n) EXPECT_EQ(back.evaluate(n), phi.evaluate(n));

  std::stringstream gap("-1,0,0\n0,1,0\n2,1,0\n");
  EXPECT_THROW(read_csv(gap), std::invalid_argument);
  std::stringstream asym("0,1,0\n1,1,0\n");
  EXPECT_THROW(read_csv(asym), std::invalid_argument);
  std::stringstream junk("-1,a,0\n0,1,0\n1,1,0\n");
  EXPECT_THROW(read_csv(junk), std::invalid_argument);
}
