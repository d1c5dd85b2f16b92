#include "hartman/trig_polynomial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hartman {

TrigPolynomial::TrigPolynomial(GroupShape shape, Terms terms) : shape_(std::move(shape)) {
  shape_.validate();
  for (auto& [m, c] : terms) add_term(m, c);
}

Frequency TrigPolynomial::normalized(Frequency m) const {
  if (m.torus.size() != static_cast<std::size_t>(shape_.torus_rank) || m.finite.size() != shape_.finite_orders.size()) {
    throw std::invalid_argument("frequency does not match the domain");
  }
  for (std::size_t i = 0; i < m.finite.size(); ++i) {
    const std::int64_t n = shape_.finite_orders[i];
    m.finite[i] = ((m.finite[i] % n) + n) % n;
  }
  return m;
}

void TrigPolynomial::add_term(Frequency m, std::complex<double> c) {
  m = normalized(std::move(m));
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) it->second += c;
  if (it->second == std::complex<double>(0.0, 0.0)) terms_.erase(it);
}

std::complex<double> TrigPolynomial::coefficient(const Frequency& m) const {
  auto it = terms_.find(normalized(m));
  return it == terms_.end() ? std::complex<double>{} : it->second;
}

std::complex<double> TrigPolynomial::evaluate(const double* torus, const std::int64_t* finite) const {
  std::complex<double> out{};
  for (const auto& [m, c] : terms_) {
    long double turns = 0.0L;
    for (std::size_t j = 0; j < m.torus.size(); ++j) turns += static_cast<long double>(m.torus[j]) * torus[j];
    for (std::size_t i = 0; i < m.finite.size(); ++i) {
      const std::int64_t n = shape_.finite_orders[i];
      turns += static_cast<long double>((static_cast<Int128>(m.finite[i]) * finite[i]) % n) / n;
    }
    turns -= std::floor(turns);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(turns);
    out += c * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return out;
}

std::complex<double> TrigPolynomial::evaluate(const Point& x) const { return evaluate(x.torus.data(), x.finite.data()); }

std::complex<double> TrigPolynomial::mean() const {
  Frequency zero{std::vector<std::int64_t>(static_cast<std::size_t>(shape_.torus_rank), 0),
                 std::vector<std::int64_t>(shape_.finite_orders.size(), 0)};
  return coefficient(zero);
}

double TrigPolynomial::coefficient_l1() const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) s += std::abs(c);
  return s;
}

std::int64_t TrigPolynomial::degree() const {
  std::int64_t d = 0;
  for (const auto& [m, c] : terms_) {
    for (auto v : m.torus) d = std::max(d, v < 0 ? -v : v);
  }
  return d;
}

namespace {
std::complex<double> unit(const Rational& turns) {
  const double angle = 2.0 * std::numbers::pi * to_double(frac(turns));
  return {std::cos(angle), std::sin(angle)};
}
}  // namespace

std::complex<double> arc_coefficient(std::int64_t m, const Rational& a, const Rational& b) {
  if (m == 0) return {to_double(b - a), 0.0};
  // (e^{−2πima} − e^{−2πimb}) / (2πim), phases reduced exactly before rounding.
  const std::complex<double> num = unit(-Rational(m) * a) - unit(-Rational(m) * b);
  return num / std::complex<double>(0.0, 2.0 * std::numbers::pi * static_cast<double>(m));
}

std::complex<double> step_coefficient(const StepFunction& f, const Frequency& m) {
  const GroupShape& shape = f.shape();
  const double fsize = static_cast<double>(shape.finite_size());
  std::complex<double> total{};
  for (const auto& p : f.pieces()) {
    std::complex<double> term = p.value.to_complex();
    for (std::size_t j = 0; j < p.box.size(); ++j) term *= arc_coefficient(m.torus[j], p.box[j].lo, p.box[j].hi);
    if (term == std::complex<double>{}) continue;
    std::complex<double> fiber_sum{};
    for (auto z : p.fiber) {
      auto res = shape.unflatten(z);
      Rational turns(0);
      for (std::size_t i = 0; i < res.size(); ++i) turns += Rational(Integer(m.finite[i]) * res[i], Integer(shape.finite_orders[i]));
      fiber_sum += unit(-turns);
    }
    total += term * fiber_sum / fsize;
  }
  return total;
}

}  // namespace hartman
