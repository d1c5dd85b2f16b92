#include "hartman/continued_fraction.hpp"

#include <cmath>
#include <stdexcept>

namespace hartman {

double wrap_unit(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

double circle_distance(double x) {
  double r = wrap_unit(x);
  return std::min(r, 1.0 - r);
}

std::vector<Convergent> convergents(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) throw std::invalid_argument("convergents of a non-finite value");
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be positive");
  std::vector<Convergent> out;
  long double rest = x;
  std::int64_t p_prev = 1, q_prev = 0;
  std::int64_t p_prev2 = 0, q_prev2 = 1;
  for (int step = 0; step < 64; ++step) {
    long double a_ld = std::floor(rest);
    if (std::fabs(a_ld) > 9.0e15L) break;
    auto a = static_cast<std::int64_t>(a_ld);
    // Overflow guard: stop before q would exceed the bound.
    if (q_prev != 0 && a > (max_denominator - q_prev2) / q_prev) break;
    std::int64_t p = a * p_prev + p_prev2;
    std::int64_t q = a * q_prev + q_prev2;
    if (q > max_denominator) break;
    out.push_back({p, q});
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    long double f = rest - a_ld;
    if (f <= 0.0L) break;
    rest = 1.0L / f;
  }
  return out;
}

std::optional<RationalMatch> match_rational(double x, std::int64_t max_denominator,
                                            double tolerance) {
  double wrapped = wrap_unit(x);
  for (const auto& c : convergents(wrapped, max_denominator)) {
    long double approx = static_cast<long double>(c.p) / static_cast<long double>(c.q);
    double err = circle_distance(static_cast<double>(static_cast<long double>(wrapped) - approx));
    if (err <= tolerance) {
      std::int64_t p = c.p % c.q;
      if (p < 0) p += c.q;
      return RationalMatch{p, c.q, err};
    }
  }
  return std::nullopt;
}

}  // namespace hartman
