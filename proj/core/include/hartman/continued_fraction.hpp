#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace hartman {

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

/// Convergents p/q of the simple continued fraction of x with q <= max_denominator.
/// The first entry is floor(x)/1.
std::vector<Convergent> convergents(double x, std::int64_t max_denominator);

struct RationalMatch {
  std::int64_t p = 0;  ///< reduced into [0, q)
  std::int64_t q = 1;
  double error = 0.0;  ///< |x - p/q| measured on the circle
};

/// First convergent of (x mod 1) whose circle distance to x is within tolerance.
std::optional<RationalMatch> match_rational(double x, std::int64_t max_denominator, double tolerance);

/// Distance from x to the nearest integer.
double circle_distance(double x);

/// x mod 1 in [0, 1).
double wrap_unit(double x);

}  // namespace hartman
