#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hartman/rational.hpp"

namespace hartman {

/// coefficient · √radicand with a square-free radicand ≥ 2.
struct Surd {
  Integer radicand;
  Rational coefficient;
  friend bool operator==(const Surd&, const Surd&) = default;
};

/// A character of ℤ, identified with its rotation number α ∈ [0, 1):
/// n ↦ e^{2πinα}.
///
/// Exact characters are elements of ℚ(√c_1, …, √c_m) reduced mod 1; floating
/// characters carry an absolute tolerance on α.
class Character {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  Character();  ///< the trivial character α = 0

  static Character rational(const Rational& alpha);
  /// (a + b√c) / d.
  static Character quadratic(const Integer& a, const Integer& b, const Integer& c, const Integer& d);
  static Character exact(const Rational& rational_part, std::vector<Surd> surds);
  static Character floating(double alpha, double tolerance = kDefaultTolerance);

  bool is_exact() const { return !floating_; }
  bool is_floating() const { return floating_; }
  bool is_rational() const { return !floating_ && surds_.empty(); }
  bool is_trivial() const { return is_rational() && rational_ == 0; }

  /// Rational part of an exact character, in [0, 1) when there are no surds.
  const Rational& rational_part() const { return rational_; }
  const std::vector<Surd>& surds() const { return surds_; }
  std::optional<Rational> as_rational() const;

  double value() const { return approx_; }
  double tolerance() const { return tol_; }

  /// n·α mod 1.
  double phase(std::int64_t n) const;
  std::complex<double> evaluate(std::int64_t n) const;

  Character negated() const;

  /// Σ k_i · χ_i. Exact when every term is exact.
  static Character combination(std::span<const Character> chars, std::span<const Integer> coeffs);

  std::string to_string() const;

  /// Exact characters compare exactly; floating ones by value and tolerance.
  friend bool operator==(const Character& a, const Character& b);

 private:
  void normalize();

  bool floating_ = false;
  Rational rational_{0};
  std::vector<Surd> surds_;
  double approx_ = 0.0;
  double tol_ = 0.0;
  // Cached for fast phase evaluation of exact characters.
  std::int64_t rat_num_ = 0;
  std::int64_t rat_den_ = 1;
  bool rat_small_ = true;
  long double surd_turns_ = 0.0L;
};

}  // namespace hartman
