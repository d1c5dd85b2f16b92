#pragma once

#include <complex>
#include <map>

#include "hartman/group_shape.hpp"
#include "hartman/step_function.hpp"

namespace hartman {

/// Finite sum Σ c_m η_m of characters of 𝕋^k × F.
class TrigPolynomial {
 public:
  using Terms = std::map<Frequency, std::complex<double>>;

  TrigPolynomial() = default;
  explicit TrigPolynomial(GroupShape shape) : shape_(std::move(shape)) {}
  TrigPolynomial(GroupShape shape, Terms terms);

  const GroupShape& shape() const { return shape_; }
  const Terms& terms() const { return terms_; }

  /// Adds c to the coefficient at m (finite residues are reduced).
  void add_term(Frequency m, std::complex<double> c);
  std::complex<double> coefficient(const Frequency& m) const;

  std::complex<double> evaluate(const Point& x) const;
  std::complex<double> evaluate(const double* torus, const std::int64_t* finite) const;

  /// Coefficient of the zero frequency, i.e. the Haar integral.
  std::complex<double> mean() const;
  /// Σ |c_m|, an upper bound for the sup norm.
  double coefficient_l1() const;
  /// Largest |m_j| over torus coordinates of the support.
  std::int64_t degree() const;

 private:
  Frequency normalized(Frequency m) const;

  GroupShape shape_;
  Terms terms_;
};

/// ∫_a^b e^{−2πi m t} dt.
std::complex<double> arc_coefficient(std::int64_t m, const Rational& a, const Rational& b);

/// Fourier coefficient ∫ f · η̄_m dμ of a rational step function, from exact arc integrals.
std::complex<double> step_coefficient(const StepFunction& f, const Frequency& m);

}  // namespace hartman
