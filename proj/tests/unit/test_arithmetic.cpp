#include <gtest/gtest.h>

#include <cmath>

#include "hartman/character.hpp"
#include "hartman/continued_fraction.hpp"
#include "hartman/json_io.hpp"
#include "hartman/lattice.hpp"
#include "hartman/rational.hpp"
#include "hartman/spectrum.hpp"
#include "oracles.hpp"

using namespace hartman;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational(" 6/8 "), Rational(3, 4));
  EXPECT_EQ(parse_rational("-5"), Rational(-5));
  EXPECT_EQ(to_string(Rational(3, 4)), "3/4");
  EXPECT_EQ(to_string(Rational(-2)), "-2");
  EXPECT_EQ(frac(Rational(-1, 3)), Rational(2, 3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Rational, FromDoubleIsExact) {
  EXPECT_EQ(from_double(0.375), Rational(3, 8));
  EXPECT_EQ(to_double(from_double(0.1)), 0.1);
}

TEST(ContinuedFraction, GoldenConvergentsAreFibonacci) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto cf = convergents(g, 100000);
  const auto ref = oracle::convergent_denominators((std::sqrt(5.0L) - 1.0L) / 2.0L, 100000);
  std::vector<std::int64_t> q;
  for (std::size_t i = 1; i < cf.size(); ++i) q.push_back(cf[i].q);
  ASSERT_EQ(q, ref);
  // 1, 1, 2, 3, 5, 8, … with the repeated 1 collapsed by the recursion.
  for (std::size_t i = 2; i < ref.size(); ++i) EXPECT_EQ(ref[i], ref[i - 1] + ref[i - 2]);
}

TEST(ContinuedFraction, SilverConvergentsArePell) {
  const auto ref = oracle::convergent_denominators(std::sqrt(2.0L) - 1.0L, 1000000);
  const auto cf = convergents(std::sqrt(2.0) - 1.0, 1000000);
  std::vector<std::int64_t> q;
  for (std::size_t i = 1; i < cf.size(); ++i) q.push_back(cf[i].q);
  EXPECT_EQ(q, ref);
  for (std::size_t i = 2; i < ref.size(); ++i) EXPECT_EQ(ref[i], 2 * ref[i - 1] + ref[i - 2]);
}

TEST(ContinuedFraction, MatchRational) {
  const auto m = match_rational(0.3333333333, 1000, 1e-9);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->p, 1);
  EXPECT_EQ(m->q, 3);
  EXPECT_FALSE(match_rational((std::sqrt(5.0) - 1.0) / 2.0, 1000, 1e-10));
  EXPECT_NEAR(circle_distance(0.9), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(wrap_unit(-0.25), 0.75);
}

TEST(Rationality, SpecExamples) {
  const auto third = classify_rationality(0.3333333333, 1e-10, 1000);
  EXPECT_TRUE(third.rational);
  EXPECT_EQ(third.p, 1);
  EXPECT_EQ(third.q, 3);
  EXPECT_FALSE(classify_rationality((std::sqrt(5.0) - 1.0) / 2.0, 1e-10, 1000).rational);
  const auto zero = classify_rationality(0.0, 1e-10, 1000);
  EXPECT_TRUE(zero.rational);
  EXPECT_EQ(zero.p, 0);
  EXPECT_EQ(zero.q, 1);
}

TEST(Lattice, HermiteFormSpansAndSolves) {
  lattice::IntMatrix m{{Integer(2), Integer(4)}, {Integer(6), Integer(8)}};
  const auto h = lattice::hermite_form(m);
  ASSERT_EQ(h.rows.size(), 2u);
  EXPECT_EQ(h.rows[0][0], 2);
  EXPECT_EQ(h.rows[1][1], 4);
  const auto x = lattice::solve_input(h, {Integer(8), Integer(12)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0] * 2 + (*x)[1] * 6, 8);
  EXPECT_EQ((*x)[0] * 4 + (*x)[1] * 8, 12);
  EXPECT_FALSE(lattice::solve_input(h, {Integer(1), Integer(0)}));
}

TEST(Lattice, SmithInvariants) {
  const auto d = lattice::smith_invariants({{Integer(2), Integer(4)}, {Integer(6), Integer(8)}});
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0], 2);
  EXPECT_EQ(d[1], 4);
}

TEST(Lattice, DiagonalFormInverse) {
  lattice::IntMatrix a{{Integer(4), Integer(6), Integer(0)}, {Integer(2), Integer(0), Integer(3)}, {Integer(0), Integer(5), Integer(7)}};
  const auto f = lattice::diagonal_form(a);
  Integer prod = 1;
  for (const auto& d : f.diagonal) {
    EXPECT_GT(d, 0);
    prod *= d;
  }
  // det = 4(0 − 15) − 6(14 − 0) = −144
  EXPECT_EQ(prod, 144);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < 3; ++k) s += f.right[i][k] * f.right_inverse[k][j];
      EXPECT_EQ(s, i == j ? 1 : 0);
    }
  }
}

TEST(Character, QuadraticNormalizesIntoUnitInterval) {
  const auto g = Character::quadratic(-1, 1, 5, 2);
  EXPECT_NEAR(g.value(), (std::sqrt(5.0) - 1.0) / 2.0, 1e-15);
  // (1 − √5)/2 ≡ (3 − √5)/2 mod 1
  const auto h = Character::quadratic(1, -1, 5, 2);
  EXPECT_NEAR(h.value(), (3.0 - std::sqrt(5.0)) / 2.0, 1e-15);
  // √8 = 2√2
  EXPECT_EQ(Character::quadratic(0, 1, 8, 1), Character::quadratic(0, 2, 2, 1));
  EXPECT_TRUE(Character::rational(Rational(5, 4)) == Character::rational(Rational(1, 4)));
}

TEST(Character, ExactPhaseAtLargeN) {
  const auto g = Character::quadratic(-1, 1, 5, 2);
  for (std::int64_t n : {1LL, 1000LL, 123456789LL, -987654321LL}) {
    const long double ref = static_cast<long double>(n) * (std::sqrt(5.0L) - 1.0L) / 2.0L;
    const double want = static_cast<double>(ref - std::floor(ref));
    EXPECT_NEAR(oracle::circle(g.phase(n) - want), 0.0, 1e-9) << n;
  }
  EXPECT_EQ(Character::rational(Rational(1, 3)).phase(4), 1.0 / 3.0);
}

TEST(Character, CombinationAndNegation) {
  const auto g = Character::quadratic(-1, 1, 5, 2);
  const Character chars[] = {g, Character::rational(Rational(1, 3))};
  const Integer coeffs[] = {Integer(2), Integer(1)};
  const auto c = Character::combination(chars, coeffs);
  EXPECT_TRUE(c.is_exact());
  EXPECT_NEAR(oracle::circle(c.value() - (2 * g.value() + 1.0 / 3.0)), 0.0, 1e-14);
  EXPECT_TRUE(g.negated().negated() == g);
}

TEST(CharacterLiterals, Parse) {
  EXPECT_TRUE(parse_character("1/3") == Character::rational(Rational(1, 3)));
  EXPECT_TRUE(parse_character("quadratic:-1,1,5,2") == Character::quadratic(-1, 1, 5, 2));
  const auto f = parse_character("float:0.25,1e-6");
  EXPECT_TRUE(f.is_floating());
  EXPECT_EQ(f.tolerance(), 1e-6);
  EXPECT_TRUE(parse_character("0.5").is_floating());
  EXPECT_THROW(parse_character("quadratic:1,2"), std::invalid_argument);
}

TEST(CharacterLiterals, DescriptorRoundTrip) {
  for (const auto& c : {Character::rational(Rational(2, 7)), Character::quadratic(1, -1, 5, 2),
                        Character::quadratic(-1, 1, 2, 1), Character::floating(0.123, 1e-8)}) {
    EXPECT_TRUE(character_from_json(descriptor(c)) == c) << dump(descriptor(c));
  }
  EXPECT_EQ(descriptor(Character::rational(Rational(2, 7))), Json::parse(R"({"num":2,"den":7})"));
}
