#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hartman/group_model.hpp"
#include "hartman/reconstruct.hpp"
#include "oracles.hpp"

using namespace hartman;

namespace {

Character golden() { return Character::quadratic(-1, 1, 5, 2); }
Character q(std::int64_t p, std::int64_t d) { return Character::rational(Rational(p) / d); }
Compactification induced(std::vector<Character> gens) { return Compactification::induced({std::move(gens)}); }

}  // namespace

TEST(Induce, TorsionOnly) {
  const auto c = induced({q(1, 2)});
  EXPECT_EQ(c.torus_rank(), 0);
  EXPECT_EQ(c.invariant_factors(), std::vector<std::int64_t>{2});
  const auto x = c.embed_exact(3);
  ASSERT_TRUE(x);
  EXPECT_EQ(x->finite, std::vector<std::int64_t>{1});
  EXPECT_EQ(c.certification(), Certification::exact);
}

TEST(Induce, GoldenRotation) {
  const auto c = induced({golden()});
  EXPECT_EQ(c.torus_rank(), 1);
  EXPECT_TRUE(c.invariant_factors().empty());
  EXPECT_NEAR(oracle::circle(c.embed(1).torus[0] - golden().value()), 0.0, 1e-15);
  EXPECT_EQ(c.certification(), Certification::exact);
}

TEST(Induce, GoldenWithThird) {
  const auto c = induced({golden(), q(1, 3)});
  EXPECT_EQ(c.torus_rank(), 1);
  EXPECT_EQ(c.invariant_factors(), std::vector<std::int64_t>{3});
  EXPECT_EQ(c.describe(), "T^1 x Z/3");
  // ι(4) = (4β mod 1; 4u mod 3), and the coordinate characters regenerate the input.
  const auto x = c.embed(4);
  EXPECT_NEAR(oracle::circle(x.torus[0] - 4.0 * c.torus_generators()[0].value()), 0.0, 1e-12);
  EXPECT_EQ(x.finite[0], (4 * c.torsion_units()[0]) % 3);
  EXPECT_EQ(covers(c, induced(c.coordinate_characters())).verdict, Verdict::yes);
  EXPECT_EQ(covers(induced(c.coordinate_characters()), c).verdict, Verdict::yes);
}

TEST(Induce, TrivialAndRedundant) {
  EXPECT_EQ(induced({}).describe(), "T^0");
  // ⟨α, 2α + 1/2⟩ = ⟨α, 1/2⟩
  const Character chars[] = {golden(), q(1, 2)};
  const Integer coeffs[] = {Integer(2), Integer(1)};
  const auto c = induced({golden(), Character::combination(chars, coeffs)});
  EXPECT_EQ(c.torus_rank(), 1);
  EXPECT_EQ(c.invariant_factors(), std::vector<std::int64_t>{2});
}

TEST(Induce, InvariantFactorForm) {
  const auto c = induced({q(1, 4), q(1, 6)});
  // ⟨1/4, 1/6⟩ = ⟨1/12⟩
  EXPECT_EQ(c.invariant_factors(), std::vector<std::int64_t>{12});
}

TEST(Induce, FloatingIsNumericallyCertified) {
  const auto c = induced({Character::floating((std::sqrt(5.0) - 1.0) / 2.0, 1e-12)});
  EXPECT_EQ(c.torus_rank(), 1);
  EXPECT_EQ(c.certification(), Certification::numerical);
}

TEST(Embedding, DenseCheck) {
  EXPECT_THROW(Compactification::from_embedding({q(1, 3)}, {}, {}), std::invalid_argument);
  EXPECT_THROW(Compactification::from_embedding({}, {4}, {2}), std::invalid_argument);
  EXPECT_NO_THROW(Compactification::from_embedding({golden()}, {4}, {3}));
}

TEST(Embedding, IsAHomomorphism) {
  const auto c = Compactification::from_embedding({golden(), Character::quadratic(0, 1, 2, 1)}, {2, 3}, {1, 2});
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
    const auto m = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
    const auto a = c.embed(n), b = c.embed(m), s = c.embed(n + m);
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(oracle::circle(a.torus[j] + b.torus[j] - s.torus[j]), 0.0, 1e-9);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ((a.finite[i] + b.finite[i]) % c.finite_part()[i], s.finite[i]);
  }
}

TEST(Covers, SpecExamples) {
  EXPECT_EQ(covers(induced({q(1, 2)}), induced({q(1, 4)})).verdict, Verdict::yes);
  const Character half_golden = Character::exact(Rational(-1, 4), {Surd{5, Rational(1, 4)}});
  EXPECT_EQ(covers(induced({golden()}), induced({half_golden})).verdict, Verdict::yes);
  EXPECT_EQ(covers(induced({half_golden}), induced({golden()})).verdict, Verdict::no);
  EXPECT_EQ(covers(induced({golden()}), induced({q(1, 3)})).verdict, Verdict::no);
  EXPECT_EQ(covers(induced({q(1, 3)}), induced({q(1, 2)})).verdict, Verdict::no);
}

TEST(Covers, IsAPreorder) {
  const std::vector<Compactification> cs{induced({}), induced({q(1, 2)}), induced({q(1, 4)}), induced({golden()}),
                                         induced({golden(), q(1, 2)}), induced({golden(), q(1, 12)})};
  for (const auto& a : cs) {
    EXPECT_EQ(covers(a, a).verdict, Verdict::yes);
    for (const auto& b : cs) {
      for (const auto& c : cs) {
        if (covers(a, b).verdict == Verdict::yes && covers(b, c).verdict == Verdict::yes) {
          EXPECT_EQ(covers(a, c).verdict, Verdict::yes) << a.describe() << " " << b.describe() << " " << c.describe();
        }
      }
    }
  }
}

TEST(Covers, FloatingAgainstExact) {
  const auto exact = induced({Character::quadratic(-1, 1, 2, 1)});
  const auto approx = induced({Character::floating(std::sqrt(2.0) - 1.0, 1e-9)});
  EXPECT_EQ(covers(approx, exact).verdict, Verdict::yes);
  EXPECT_EQ(covers(exact, approx).verdict, Verdict::yes);
}

TEST(Locate, FindsFrequencies) {
  const auto c = induced({golden(), q(1, 3)});
  const Character chars[] = {golden(), q(1, 3)};
  const Integer coeffs[] = {Integer(-5), Integer(2)};
  const auto chi = Character::combination(chars, coeffs);
  const auto loc = locate(c, chi);
  ASSERT_EQ(loc.verdict, Verdict::yes);
  ASSERT_TRUE(loc.frequency);
  EXPECT_NEAR(oracle::circle(c.character_of(*loc.frequency).value() - chi.value()), 0.0, 1e-12);
  EXPECT_EQ(locate(c, q(1, 2)).verdict, Verdict::no);
}

TEST(Equivalence, SpecExamples) {
  EXPECT_EQ(equivalence_check(induced({q(1, 2), q(1, 3)}), induced({q(1, 6)})).verdict, Verdict::yes);
  EXPECT_EQ(equivalence_check(induced({golden()}), induced({golden(), q(1, 2)})).verdict, Verdict::no);
}
