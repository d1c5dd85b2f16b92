#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hartman {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
__extension__ using Int128 = __int128;

/// Parses "p", "-p" or "p/q" (whitespace tolerant). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& value);

Integer floor(const Rational& value);

/// value - floor(value), always in [0, 1).
Rational frac(const Rational& value);

double to_double(const Rational& value);

/// Exact conversion; every finite double is a dyadic rational.
Rational from_double(double value);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Complex number with exact rational parts.
struct ComplexQ {
  Rational re{0};
  Rational im{0};

  ComplexQ() = default;
  ComplexQ(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ComplexQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_real() const { return im == 0; }
  bool is_zero() const { return re == 0 && im == 0; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  ComplexQ& operator+=(const ComplexQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexQ& operator-=(const ComplexQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexQ& operator*=(const Rational& s) {
    re *= s;
    im *= s;
    return *this;
  }

  friend ComplexQ operator+(ComplexQ a, const ComplexQ& b) { return a += b; }
  friend ComplexQ operator-(ComplexQ a, const ComplexQ& b) { return a -= b; }
  friend ComplexQ operator*(ComplexQ a, const Rational& s) { return a *= s; }
  friend ComplexQ operator*(const Rational& s, ComplexQ a) { return a *= s; }
  friend ComplexQ operator*(const ComplexQ& a, const ComplexQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexQ operator-(const ComplexQ& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexQ& a, const ComplexQ& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string to_string(const ComplexQ& value);

}  // namespace hartman
