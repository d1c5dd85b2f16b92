#include "hartman/character.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace hartman {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

BigFloat to_big(const Rational& r) {
  return BigFloat(boost::multiprecision::numerator(r)) / BigFloat(boost::multiprecision::denominator(r));
}

// Splits c = s² · c' with c' square-free.
std::pair<Integer, Integer> square_free_split(Integer c) {
  Integer square = 1;
  for (Integer p = 2; p * p <= c; ++p) {
    while (c % (p * p) == 0) {
      c /= p * p;
      square *= p;
    }
  }
  return {square, c};
}

}  // namespace

Character::Character() = default;

Character Character::rational(const Rational& alpha) {
  Character c;
  c.rational_ = alpha;
  c.normalize();
  return c;
}

Character Character::quadratic(const Integer& a, const Integer& b, const Integer& c,
                               const Integer& d) {
  if (d == 0) throw std::invalid_argument("quadratic character with zero denominator");
  if (c < 0) throw std::invalid_argument("quadratic character needs a non-negative radicand");
  auto [square, core] = square_free_split(c);
  Rational rat(a, d);
  std::vector<Surd> surds;
  Rational coef = Rational(b * square, d);
  if (core == 1) {
    rat += coef;
  } else if (core != 0 && coef != 0) {
    surds.push_back({core, coef});
  }
  return exact(rat, std::move(surds));
}

Character Character::exact(const Rational& rational_part, std::vector<Surd> surds) {
  Character c;
  c.rational_ = rational_part;
  std::vector<Surd> merged;
  for (auto& s : surds) {
    if (s.radicand < 2) throw std::invalid_argument("surd radicand must be square-free and >= 2");
    auto [square, core] = square_free_split(s.radicand);
    if (core == 1) {
      c.rational_ += s.coefficient * Rational(square);
      continue;
    }
    Rational coef = s.coefficient * Rational(square);
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Surd& m) { return m.radicand == core; });
    if (it == merged.end()) {
      merged.push_back({core, coef});
    } else {
      it->coefficient += coef;
    }
  }
  std::erase_if(merged, [](const Surd& s) { return s.coefficient == 0; });
  std::sort(merged.begin(), merged.end(), [](const Surd& x, const Surd& y) { return x.radicand < y.radicand; });
  c.surds_ = std::move(merged);
  c.normalize();
  return c;
}

Character Character::floating(double alpha, double tolerance) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("rotation number must be finite");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  Character c;
  c.floating_ = true;
  double r = alpha - std::floor(alpha);
  c.approx_ = r >= 1.0 ? 0.0 : r;
  c.tol_ = tolerance;
  return c;
}

void Character::normalize() {
  if (floating_) return;
  // Reduce mod 1; the floor of an element of a multi-quadratic field is decided
  // at 100 digits, which is exact unless the value is within 1e-90 of an integer.
  BigFloat value = to_big(rational_);
  for (const auto& s : surds_) value += to_big(s.coefficient) * sqrt(BigFloat(s.radicand));
  BigFloat fl = floor(value);
  rational_ -= Rational(fl.convert_to<Integer>());
  BigFloat reduced = value - fl;
  approx_ = reduced.convert_to<double>();
  if (approx_ >= 1.0) approx_ = std::nextafter(1.0, 0.0);
  tol_ = 0.0;

  const Integer& num = boost::multiprecision::numerator(rational_);
  const Integer& den = boost::multiprecision::denominator(rational_);
  rat_small_ = abs(num) < Integer(1) << 60 && den < Integer(1) << 60;
  if (rat_small_) {
    rat_num_ = num.convert_to<std::int64_t>();
    rat_den_ = den.convert_to<std::int64_t>();
  }
  BigFloat surd_part = 0;
  for (const auto& s : surds_) surd_part += to_big(s.coefficient) * sqrt(BigFloat(s.radicand));
  surd_part -= floor(surd_part);
  surd_turns_ = surd_part.convert_to<long double>();
}

std::optional<Rational> Character::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return rational_;
}

double Character::phase(std::int64_t n) const {
  if (floating_) {
    long double x = static_cast<long double>(n) * static_cast<long double>(approx_);
    x -= std::floor(x);
    return static_cast<double>(x);
  }
  long double rat_turns;
  if (rat_small_) {
    Int128 prod = static_cast<Int128>(n) * rat_num_;
    Int128 r = prod % rat_den_;
    if (r < 0) r += rat_den_;
    rat_turns = static_cast<long double>(static_cast<std::int64_t>(r)) / static_cast<long double>(rat_den_);
  } else {
    rat_turns = static_cast<long double>(to_double(frac(rational_ * Rational(n))));
  }
  long double x = rat_turns;
  if (!surds_.empty()) {
    long double s = static_cast<long double>(n) * surd_turns_;
    x += s - std::floor(s);
  }
  x -= std::floor(x);
  return static_cast<double>(x);
}

std::complex<double> Character::evaluate(std::int64_t n) const {
  double turns = phase(n);
  double angle = 2.0 * std::numbers::pi * turns;
  return {std::cos(angle), std::sin(angle)};
}

Character Character::negated() const {
  if (floating_) return floating(-approx_, tol_);
  std::vector<Surd> neg = surds_;
  for (auto& s : neg) s.coefficient = -s.coefficient;
  return exact(-rational_, std::move(neg));
}

Character Character::combination(std::span<const Character> chars, std::span<const Integer> coeffs) {
  if (chars.size() != coeffs.size()) throw std::invalid_argument("combination size mismatch");
  bool all_exact = std::all_of(chars.begin(), chars.end(), [](const Character& c) { return c.is_exact(); });
  if (all_exact) {
    Rational rat = 0;
    std::vector<Surd> surds;
    for (std::size_t i = 0; i < chars.size(); ++i) {
      if (coeffs[i] == 0) continue;
      rat += chars[i].rational_ * Rational(coeffs[i]);
      for (const auto& s : chars[i].surds_) surds.push_back({s.radicand, s.coefficient * Rational(coeffs[i])});
    }
    return exact(rat, std::move(surds));
  }
  long double sum = 0.0L;
  double tol = 0.0;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (coeffs[i] == 0) continue;
    long double k = coeffs[i].convert_to<long double>();
    sum += k * static_cast<long double>(chars[i].approx_);
    sum -= std::floor(sum);
    tol += std::fabs(static_cast<double>(k)) * (chars[i].tol_ + 1e-16);
  }
  return floating(static_cast<double>(sum), tol);
}

std::string Character::to_string() const {
  std::ostringstream os;
  if (floating_) {
    os.precision(17);
    os << approx_;
    return os.str();
  }
  os << hartman::to_string(rational_);
  for (const auto& s : surds_) {
    os << (s.coefficient < 0 ? " - " : " + ") << hartman::to_string(abs(s.coefficient)) << "*sqrt("
       << s.radicand.str() << ")";
  }
  return os.str();
}

bool operator==(const Character& a, const Character& b) {
  if (a.floating_ != b.floating_) return false;
  if (a.floating_) return a.approx_ == b.approx_ && a.tol_ == b.tol_;
  return a.rational_ == b.rational_ && a.surds_ == b.surds_;
}

}  // namespace hartman
