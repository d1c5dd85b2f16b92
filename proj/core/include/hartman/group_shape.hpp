#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "hartman/rational.hpp"

namespace hartman {

/// The compact group 𝕋^k × ℤ/n_1 × … × ℤ/n_N.
///
/// Elements of the finite part are addressed either by per-factor residues or by a
/// flat mixed-radix index (first factor most significant).
struct GroupShape {
  int torus_rank = 0;
  std::vector<std::int64_t> finite_orders;

  std::int64_t finite_size() const;
  std::vector<std::int64_t> unflatten(std::int64_t index) const;
  std::int64_t flatten(std::span<const std::int64_t> residues) const;
  /// Flat index of a + b (sign = +1) or a - b (sign = -1).
  std::int64_t combine(std::int64_t a, std::int64_t b, int sign = 1) const;

  void validate() const;

  friend bool operator==(const GroupShape&, const GroupShape&) = default;
};

/// A point with floating torus coordinates.
struct Point {
  std::vector<double> torus;
  std::vector<std::int64_t> finite;  ///< per-factor residues
};

/// A point with exact rational torus coordinates in [0, 1).
struct ExactPoint {
  std::vector<Rational> torus;
  std::vector<std::int64_t> finite;

  Point approximate() const;
  bool is_zero() const;
  friend bool operator==(const ExactPoint&, const ExactPoint&) = default;
};

ExactPoint zero_point(const GroupShape& shape);
/// Componentwise a + b reduced mod 1 / mod n_i.
ExactPoint add(const GroupShape& shape, const ExactPoint& a, const ExactPoint& b);
ExactPoint negate(const GroupShape& shape, const ExactPoint& a);
/// Lexicographic order on reduced coordinates.
bool exact_point_less(const ExactPoint& a, const ExactPoint& b);

/// A character of 𝕋^k × F: integer torus frequencies and residues t_i ∈ ℤ/n_i acting
/// as z ↦ e^{2πi t_i z_i / n_i}.
struct Frequency {
  std::vector<std::int64_t> torus;
  std::vector<std::int64_t> finite;

  bool is_zero() const;
  friend auto operator<=>(const Frequency&, const Frequency&) = default;
};

/// Phase (in turns, not reduced) of a frequency at a point.
double pairing(const GroupShape& shape, const Frequency& freq, const Point& x);

}  // namespace hartman
