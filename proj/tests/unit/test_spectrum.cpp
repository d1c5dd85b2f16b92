#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hartman/corpus.hpp"
#include "hartman/spectrum.hpp"
#include "oracles.hpp"

using namespace hartman;

namespace {

Character golden() { return Character::quadratic(-1, 1, 5, 2); }

const Peak* nearest(const SpectrumReport& r, double alpha) {
  const Peak* best = nullptr;
  for (const auto& p : r.peaks) {
    if (!best || oracle::circle(p.alpha.value() - alpha) < oracle::circle(best->alpha.value() - alpha)) best = &p;
  }
  return best;
}

}  // namespace

TEST(Scan, SingleCharacter) {
  const auto chi = Character::quadratic(-1, 1, 2, 1);
  SpectrumOptions o;
  o.theta = 1e-2;
  const auto r = scan_spectrum(character_sequence(chi, 3.0), 20000, o);
  ASSERT_EQ(r.peaks.size(), 1u);
  EXPECT_NEAR(oracle::circle(r.peaks[0].alpha.value() - chi.value()), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(r.peaks[0].coefficient - 3.0), 0.0, 1e-6);
  // A frequency error at the refinement tolerance leaves |c|·2πN·tol of rms.
  EXPECT_LT(r.residual_rms, 3.0 * 2.0 * oracle::kPi * 20000 * o.refine_tolerance);
}

TEST(Scan, CutPeaksMatchArcCoefficients) {
  const auto phi = cut_sequence(golden(), Rational(1, 3));
  SpectrumOptions o;
  o.theta = 0.03;
  const auto r = scan_spectrum(phi, 100000, o);
  // |ĉ_k| = |sin(πk/3)|/(π|k|) ≥ 0.03 for k ∈ {±1, ±2, ±4, ±5, ±7, ±8}; the zero frequency carries 1/3.
  std::vector<int> ks{0};
  for (int k = 1; k <= 9; ++k) {
    if (std::abs(oracle::arc_coefficient(k, 1.0 / 3.0)) >= 0.03) {
      ks.push_back(k);
      ks.push_back(-k);
    }
  }
  EXPECT_EQ(r.peaks.size(), ks.size());
  for (int k : ks) {
    const double a = static_cast<double>(k) * golden().value();
    const auto* p = nearest(r, a);
    ASSERT_NE(p, nullptr);
    EXPECT_LT(oracle::circle(p->alpha.value() - a), 1e-6) << k;
    EXPECT_LT(std::abs(p->coefficient - oracle::arc_coefficient(k, 1.0 / 3.0)), 2e-3) << k;
  }
  for (int k : {3, 6, 9}) {
    const auto* p = nearest(r, static_cast<double>(k) * golden().value());
    EXPECT_GT(oracle::circle(p->alpha.value() - k * golden().value()), 1e-4) << k;
  }
}

TEST(Scan, Cos2ProductNineFrequencies) {
  SpectrumOptions o;
  o.theta = 1e-3;
  const auto r = scan_spectrum(cos2_product(2), 900, o);
  EXPECT_EQ(r.peaks.size(), 9u);
  const auto* zero = nearest(r, 0.0);
  EXPECT_NEAR(zero->coefficient.real(), 0.25, 1e-9);
  for (const auto& p : r.peaks) {
    ASSERT_TRUE(p.rational);
    EXPECT_EQ(9 % p.rational->q, 0);
    const double k = p.alpha.value() * 9.0;
    EXPECT_NEAR(k, std::round(k), 1e-9);
    EXPECT_NEAR(std::abs(p.coefficient - oracle::cos2_coefficient(2, static_cast<std::int64_t>(std::lround(k)) % 9)),
                0.0, 1e-9);
  }
  const auto g = subgroup_of(r);
  EXPECT_EQ(Compactification::induced(g).describe(), "T^0 x Z/9");
}

TEST(Scan, EmptySpectrumGivesTrivialGroup) {
  const auto r = scan_spectrum(HartmanFunction::sampled(100, std::vector<std::complex<double>>(201, 0.0)), 100);
  EXPECT_TRUE(r.peaks.empty());
  EXPECT_TRUE(subgroup_of(r).reduced().generators.empty());
  EXPECT_EQ(Compactification::induced(subgroup_of(r)).describe(), "T^0");
}

TEST(Scan, ParsevalOnTrigPolynomials) {
  // Σ|c|² + rms² ≈ mean |φ|² on the window.
  for (const auto& s : realized_corpus()) {
    if (!std::holds_alternative<TrigPolynomial>(s.phi.as_realized().realization)) continue;
    const std::int64_t N = 5000;
    const auto w = s.phi.window(N);
    double power = 0.0;
    for (auto v : w) power += std::norm(v);
    power /= static_cast<double>(w.size());
    SpectrumOptions o;
    o.theta = 1e-3;
    const auto r = scan_spectrum(s.phi, N, o);
    double sum = r.residual_rms * r.residual_rms;
    for (const auto& p : r.peaks) sum += std::norm(p.coefficient);
    // Distinct tones are orthogonal on the window up to the Dirichlet kernel.
    double cross = 1e-9;
    for (const auto& a : r.peaks) {
      for (const auto& b : r.peaks) {
        const double u = std::fabs(std::sin(oracle::kPi * (a.alpha.value() - b.alpha.value())));
        if (&a != &b) cross += 2.0 * std::abs(a.coefficient) * std::abs(b.coefficient) / (static_cast<double>(w.size()) * u);
      }
    }
    EXPECT_NEAR(sum, power, cross) << s.name;
  }
}

TEST(Scan, RecoversFrequencies) {
  const auto chi = Character::quadratic(-1, 1, 2, 1);
  const auto phi = cut_sequence(chi, Rational(1, 3));
  SpectrumOptions o;
  o.theta = 0.1;
  const auto r = scan_spectrum(phi, 100000, o);
  const auto* p = nearest(r, chi.value());
  EXPECT_LT(oracle::circle(p->alpha.value() - chi.value()), 1e-8);
  EXPECT_LT(std::abs(std::abs(p->coefficient) - std::sqrt(3.0) / (2.0 * oracle::kPi)), 1e-3);
  EXPECT_GE(p->alpha.tolerance(), oracle::circle(p->alpha.value() - chi.value()));
}

TEST(Subgroup, PresentsGoldenCut) {
  SpectrumOptions o;
  o.theta = 0.05;
  const auto r = scan_spectrum(cut_sequence(golden(), Rational(1, 3)), 100000, o);
  const auto c = Compactification::induced(subgroup_of(r));
  EXPECT_EQ(c.describe(), "T^1");
  EXPECT_EQ(c.certification(), Certification::numerical);
  EXPECT_EQ(covers(Compactification::induced({{golden()}}), c).verdict, Verdict::yes);
  EXPECT_EQ(covers(c, Compactification::induced({{golden()}})).verdict, Verdict::yes);
  // Every peak is located in the compactification.
  for (const auto& p : r.peaks) EXPECT_EQ(locate(c, p.alpha).verdict, Verdict::yes);
}

TEST(Subgroup, AlternatingIsZ2) {
  const auto r = scan_spectrum(alternating(), 1000);
  EXPECT_EQ(Compactification::induced(subgroup_of(r)).describe(), "T^0 x Z/2");
}

TEST(Rationality, Classification) {
  const auto r = classify_rationality(1.0 / 7.0, 1e-12, 1000);
  EXPECT_TRUE(r.rational);
  EXPECT_EQ(r.p, 1);
  EXPECT_EQ(r.q, 7);
  EXPECT_FALSE(classify_rationality(golden().value(), 1e-12, 1000).rational);
  EXPECT_FALSE(classify_rationality(golden(), 1000000).rational);
}

TEST(Window, DirichletAndCoefficient) {
  EXPECT_DOUBLE_EQ(dirichlet(0.0, 11), 1.0);
  EXPECT_NEAR(dirichlet(1.0 / 11.0, 11), 0.0, 1e-15);
  std::vector<std::complex<double>> w(201);
  for (int n = -100; n <= 100; ++n) w[static_cast<std::size_t>(n + 100)] = std::polar(1.0, 2.0 * oracle::kPi * 0.3 * n);
  EXPECT_NEAR(std::abs(window_coefficient(w, 0.3) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(window_coefficient(w, 0.3 + 1.0 / 201.0)), 0.0, 1e-12);
}

TEST(Threshold, MinimumTheta) { EXPECT_DOUBLE_EQ(minimum_theta(2.0, 10), 1.0 / 21.0); }
