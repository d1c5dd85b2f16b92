#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hartman/corpus.hpp"
#include "hartman/fejer_weil.hpp"
#include "oracles.hpp"

using namespace hartman;

namespace {

Rational q(std::int64_t p, std::int64_t d) { return Rational(p) / d; }
const GroupShape T{1, {}};
const GroupShape T2{2, {}};

StepFunction arc(const Rational& a, const Rational& b) { return StepFunction::box(T, {{a, b}}, {}, ComplexQ(1)); }

}  // namespace

TEST(FejerKernel, ClosedFormMatchesSum) {
  for (std::int64_t n : {1, 2, 5, 16, 64}) {
    for (double t : {0.0, 1e-9, 0.013, 0.25, 0.5, 0.77}) {
      EXPECT_NEAR(fejer_kernel(n, t), oracle::fejer_sum(n, t), 1e-9 * static_cast<double>(n)) << n << " " << t;
      EXPECT_GE(fejer_kernel(n, t), 0.0);
    }
    EXPECT_NEAR(oracle::fejer_mass(n, 0.0, 1.0), 1.0, 1e-12);
  }
}

TEST(FejerOperator, Damping) {
  const FejerOperator op(4, 2);
  EXPECT_DOUBLE_EQ(op.damping(Frequency{{0, 0}, {}}), 1.0);
  EXPECT_DOUBLE_EQ(op.damping(Frequency{{1, 0}, {}}), 0.75);
  EXPECT_DOUBLE_EQ(op.damping(Frequency{{-2, 1}, {}}), 0.5 * 0.75);
  EXPECT_DOUBLE_EQ(op.damping(Frequency{{4, 0}, {}}), 0.0);
  const double t[] = {0.1, 0.3};
  EXPECT_NEAR(op.kernel(t), oracle::fejer_sum(4, 0.1) * oracle::fejer_sum(4, 0.3), 1e-12);
}

TEST(FejerApply, ConstantsAndCharacters) {
  const FejerOperator op(8, 1);
  const auto c = fejer_apply(op, StepFunction::constant(T, ComplexQ(q(2, 5))));
  EXPECT_NEAR(std::abs(c.mean() - 0.4), 0.0, 1e-15);
  EXPECT_EQ(c.terms().size(), 1u);
  TrigPolynomial e(T);
  e.add_term(Frequency{{3}, {}}, 1.0);
  const auto d = fejer_apply(op, e);
  EXPECT_NEAR(std::abs(d.coefficient(Frequency{{3}, {}}) - 5.0 / 8.0), 0.0, 1e-15);
  TrigPolynomial f(GroupShape{1, {3}});
  f.add_term(Frequency{{0}, {2}}, 1.0);
  EXPECT_NEAR(std::abs(fejer_apply(op, f).coefficient(Frequency{{0}, {2}}) - 1.0), 0.0, 1e-15);
}

TEST(FejerApply, QuadratureOracleOnCircle) {
  const std::int64_t n = 64;
  const FejerOperator op(n, 1);
  for (const auto& s : step_corpus()) {
    if (s.f.shape() != T) continue;
    const auto p = fejer_apply(op, s.f);
    for (int i = 0; i < 37; ++i) {
      const double x = (i + 0.123) / 37.0;
      const auto want = oracle::fejer_convolution(s.f, n, {x});
      EXPECT_LT(std::abs(p.evaluate(Point{{x}, {}}) - want), 1e-8) << s.name << " x=" << x;
    }
  }
}

TEST(FejerApply, QuadratureOracleOnPlane) {
  const std::int64_t n = 64;
  const FejerOperator op(n, 2);
  for (const auto& s : step_corpus()) {
    if (s.f.shape() != T2) continue;
    const auto p = fejer_apply(op, s.f);
    for (int i = 0; i < 9; ++i) {
      const std::vector<double> x{(i + 0.31) / 9.0, (7 * i % 9 + 0.62) / 9.0};
      const auto want = oracle::fejer_convolution(s.f, n, x);
      EXPECT_LT(std::abs(p.evaluate(Point{x, {}}) - want), 1e-8) << s.name;
    }
  }
}

TEST(FejerApply, GridMatchesPointEvaluation) {
  const FejerOperator op(6, 2);
  const auto p = fejer_apply(op, step_corpus()[10].f);
  const int G = 8;
  const auto grid = evaluate_on_grid(p, G);
  for (int i = 0; i < G; ++i) {
    for (int j = 0; j < G; ++j) {
      const Point x{{(i + 0.5) / G, (j + 0.5) / G}, {}};
      EXPECT_LT(std::abs(grid[static_cast<std::size_t>(i * G + j)] - p.evaluate(x)), 1e-12);
    }
  }
}

TEST(FejerNorm, CertifiedOverCorpus) {
  for (const auto& s : step_corpus()) {
    for (std::int64_t n : {4, 16, 64}) {
      const FejerOperator op(n, s.f.shape().torus_rank);
      const auto c = certify_fejer_norm(op, s.f);
      EXPECT_TRUE(c.passed) << s.name << " n=" << n << " min=" << c.grid_min << " l1=" << c.grid_l1;
      EXPECT_GE(c.grid_min, -c.tolerance);
      EXPECT_LE(c.grid_l1, c.input_l1_value + c.tolerance);
      if (c.real_input) {
        ASSERT_TRUE(c.input_l1);
        EXPECT_EQ(c.positive_mass + c.negative_mass, *c.input_l1);
        EXPECT_EQ(c.positive_mass - c.negative_mass, haar_integral(s.f).re);
      }
    }
  }
}

TEST(FejerNorm, UniformConvergenceTransfer) {
  // |d_{σf}(x) − d_f(x)| ≤ 2‖σf − f‖₁, checked on a grid of translations.
  const auto f = arc(0, q(1, 3));
  const FejerOperator op(32, 1);
  const auto p = fejer_apply(op, f);
  const int M = 4096;
  auto sample = [&](auto&& fn) {
    std::vector<double> v(M);
    for (int i = 0; i < M; ++i) v[static_cast<std::size_t>(i)] = fn((i + 0.5) / M);
    return v;
  };
  const auto fv = sample([&](double x) { return f.evaluate(Point{{x}, {}}).real(); });
  const auto pv = sample([&](double x) { return p.evaluate(Point{{x}, {}}).real(); });
  double gap = 0.0;
  for (int i = 0; i < M; ++i) gap += std::fabs(fv[static_cast<std::size_t>(i)] - pv[static_cast<std::size_t>(i)]) / M;
  for (int s : {1, 50, 300, 1024}) {
    double df = 0.0, dp = 0.0;
    for (int i = 0; i < M; ++i) {
      const auto j = static_cast<std::size_t>((i + s) % M);
      df += std::fabs(fv[static_cast<std::size_t>(i)] - fv[j]) / M;
      dp += std::fabs(pv[static_cast<std::size_t>(i)] - pv[j]) / M;
    }
    EXPECT_LE(std::fabs(df - dp), 2.0 * gap + 1e-12) << s;
  }
}

TEST(FiberAverage, Examples) {
  // Averaging 1_{[0,1/3)} over ⟨1/2⟩ gives (1_{[0,1/3)} + 1_{[1/2,5/6)})/2.
  const auto H = SubgroupH::generated(T, {}, {ExactPoint{{q(1, 2)}, {}}});
  const auto avg = fiber_average(arc(0, q(1, 3)), H);
  const auto want = StepFunction::box(T, {{0, q(1, 3)}}, {}, ComplexQ(q(1, 2))) +
                    StepFunction::box(T, {{q(1, 2), q(5, 6)}}, {}, ComplexQ(q(1, 2)));
  EXPECT_TRUE(equal_ae(avg.lifted, want));
  EXPECT_EQ(avg.quotient_shape(), T);
  ASSERT_TRUE(avg.explicit_form);
  EXPECT_EQ(haar_integral(*avg.explicit_form), ComplexQ(q(1, 3)));
  // Averaging over the whole circle gives the constant mean.
  const auto full = fiber_average(arc(0, q(1, 3)), SubgroupH::generated(T, {0}, {}));
  EXPECT_TRUE(equal_ae(full.lifted, StepFunction::constant(T, ComplexQ(q(1, 3)))));
  EXPECT_EQ(full.quotient_shape().torus_rank, 0);
}

TEST(Weil, ExactOverCorpusAndSubgroups) {
  std::size_t cases = 0;
  for (const auto& s : step_corpus()) {
    for (const auto& h : supported_subgroups(s.f.shape())) {
      const auto avg = fiber_average(s.f, h.H);
      EXPECT_EQ(haar_integral(avg.lifted), haar_integral(s.f)) << s.name << " / " << h.name;
      if (avg.explicit_form) EXPECT_EQ(haar_integral(*avg.explicit_form), haar_integral(s.f)) << s.name << " / " << h.name;
      // The average is H-invariant.
      for (const auto& g : h.H.generators()) EXPECT_TRUE(equal_ae(translate(avg.lifted, g), avg.lifted)) << s.name;
      ++cases;
    }
  }
  EXPECT_GE(step_corpus().size(), 20u);
  EXPECT_GT(cases, 100u);
}

TEST(QuotientMap, SectionAndPullback) {
  const auto H = SubgroupH::generated(T2, {}, {ExactPoint{{q(1, 2), q(1, 2)}, {}}});
  const auto m = QuotientMap::build(H);
  for (int i = 0; i < 5; ++i) {
    const ExactPoint x{{q(i, 7), q(2 * i + 1, 11)}, {}};
    const auto y = m(x);
    EXPECT_EQ(m(m.section(y)), y);
    auto shifted = x;
    shifted.torus[0] = shifted.torus[0] + q(1, 2);
    shifted.torus[1] = shifted.torus[1] + q(1, 2);
    for (auto& t : shifted.torus) t = frac(t);
    EXPECT_EQ(m(shifted), y);
  }
}

TEST(Aperiodize, Examples) {
  const auto period_half = arc(0, q(1, 4)) + arc(q(1, 2), q(3, 4));
  const auto a = aperiodize(period_half);
  EXPECT_EQ(a.certificate.kernel.finite_elements().size(), 2u);
  EXPECT_TRUE(a.certificate.passed);
  ASSERT_TRUE(a.certificate.residual);
  EXPECT_EQ(*a.certificate.residual, Rational(0));
  ASSERT_TRUE(a.psi.explicit_form);
  EXPECT_TRUE(kernel_subgroup(*a.psi.explicit_form).is_trivial());
  EXPECT_EQ(haar_integral(*a.psi.explicit_form), ComplexQ(q(1, 2)));

  const auto already = aperiodize(arc(0, q(1, 3)));
  EXPECT_TRUE(already.certificate.kernel.is_trivial());
  EXPECT_EQ(*already.certificate.residual, Rational(0));
}

TEST(Aperiodize, CorpusCertificates) {
  for (const auto& s : step_corpus()) {
    const auto a = aperiodize(s.f);
    EXPECT_TRUE(a.certificate.passed) << s.name;
    EXPECT_TRUE(a.certificate.lifted_kernel_is_H) << s.name;
    EXPECT_TRUE(a.certificate.weil_exact) << s.name;
    ASSERT_TRUE(a.certificate.residual) << s.name;
    EXPECT_EQ(*a.certificate.residual, Rational(0)) << s.name;
    if (a.certificate.explicit_kernel_trivial) EXPECT_TRUE(*a.certificate.explicit_kernel_trivial) << s.name;
  }
}

TEST(Annihilator, CharactersTrivialOnH) {
  for (const auto& shape : {T, T2, GroupShape{1, {2}}}) {
    for (const auto& h : supported_subgroups(shape)) {
      for (const auto& m : annihilator(h.H)) {
        for (const auto& x : h.H.finite_elements()) {
          Rational phase(0);
          for (std::size_t j = 0; j < x.torus.size(); ++j) phase = phase + Rational(m.torus[j]) * x.torus[j];
          for (std::size_t i = 0; i < x.finite.size(); ++i) phase = phase + Rational(m.finite[i] * x.finite[i]) / shape.finite_orders[i];
          EXPECT_EQ(frac(phase), Rational(0)) << h.name;
        }
        for (int c : h.H.subtorus()) EXPECT_EQ(m.torus[static_cast<std::size_t>(c)], 0) << h.name;
      }
    }
  }
}

TEST(RealizeOnGamma, Cos2IsCyclic) {
  const auto r = realize_on_gamma(cos2_product(2));
  EXPECT_EQ(r.comp.describe(), "T^0 x Z/9");
  EXPECT_TRUE(r.residual_is_bound);
  EXPECT_LE(r.residual, 1e-12);
  for (std::int64_t n = -20; n <= 20; ++n) {
    EXPECT_NEAR(std::abs(r.realization.evaluate(r.comp.embed(n)) - cos2_product(2).evaluate(n)), 0.0, 1e-12);
  }
}

TEST(RealizeOnGamma, UnusedCoordinateDropsRank) {
  // A step function over (√2 − 1, √3 − 1) that ignores the second coordinate.
  const auto comp = Compactification::from_embedding(
      {Character::quadratic(-1, 1, 2, 1), Character::quadratic(-1, 1, 3, 1)}, {}, {});
  const auto f = StepFunction::box(T2, {{0, q(1, 2)}, {0, 1}}, {}, ComplexQ(1));
  const auto r = realize_on_gamma(HartmanFunction::realized(comp, f));
  EXPECT_EQ(r.comp.torus_rank(), 1);
  EXPECT_FALSE(r.residual_is_bound);
  EXPECT_EQ(r.order, 64);
  EXPECT_LT(r.residual, 0.05);
}
