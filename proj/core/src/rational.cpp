#include "hartman/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace hartman {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("malformed integer literal");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw std::invalid_argument("malformed integer literal: " + std::string(s));
    }
  }
  std::string digits(s.substr(s.front() == '+' ? 1 : 0));
  return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in rational literal");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const Integer& den = boost::multiprecision::denominator(value);
  std::string out = boost::multiprecision::numerator(value).str();
  if (den != 1) out += "/" + den.str();
  return out;
}

std::string to_string(const ComplexQ& value) {
  if (value.im == 0) return to_string(value.re);
  return to_string(value.re) + (value.im < 0 ? "-" : "+") + to_string(abs(value.im)) + "i";
}

Integer floor(const Rational& value) {
  const Integer& num = boost::multiprecision::numerator(value);
  const Integer& den = boost::multiprecision::denominator(value);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Rational frac(const Rational& value) { return value - Rational(floor(value)); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // 53 bits of mantissa are exact in an int64.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational out{Integer(scaled)};
  if (exponent > 0) {
    out *= Rational(Integer(1) << exponent);
  } else if (exponent < 0) {
    out /= Rational(Integer(1) << -exponent);
  }
  return out;
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

}  // namespace hartman
