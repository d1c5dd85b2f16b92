#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hartman/group_model.hpp"
#include "hartman/step_function.hpp"
#include "hartman/trig_polynomial.hpp"

namespace hartman {

using Realization = std::variant<StepFunction, ApproxStepFunction, TrigPolynomial>;

const GroupShape& realization_shape(const Realization& r);

/// A bounded function on ℤ: either φ = φ* ∘ ι over a compactification, or a finite
/// window of samples on [−N, N].
class HartmanFunction {
 public:
  struct Realized {
    Compactification comp;
    Realization realization;
    std::int64_t shift = 0;  ///< evaluates φ*(ι(n + shift))
  };
  struct Sampled {
    std::int64_t radius;
    std::vector<std::complex<double>> values;  ///< values[n + radius]
  };

  static HartmanFunction realized(Compactification comp, Realization realization);
  static HartmanFunction sampled(std::int64_t radius, std::vector<std::complex<double>> values);

  bool is_realized() const { return std::holds_alternative<Realized>(data_); }
  bool is_sampled() const { return std::holds_alternative<Sampled>(data_); }
  const Realized& as_realized() const { return std::get<Realized>(data_); }
  const Sampled& as_sampled() const { return std::get<Sampled>(data_); }

  /// Largest N with [−N, N] available; nullopt when unbounded.
  std::optional<std::int64_t> radius() const;
  /// Throws std::invalid_argument unless [−N − margin, N + margin] is available.
  void require_window(std::int64_t N, std::int64_t margin = 0) const;

  /// Throws std::out_of_range outside a sampled window.
  std::complex<double> evaluate(std::int64_t n) const;
  /// out[i] = φ(first + i), computed in parallel chunks.
  void evaluate_range(std::int64_t first, std::span<std::complex<double>> out) const;
  /// φ on [−N, N].
  std::vector<std::complex<double>> window(std::int64_t N) const;

  /// An upper bound for sup|φ|.
  double sup_bound() const;

  /// n ↦ φ(n + g).
  HartmanFunction translated(std::int64_t g) const;

 private:
  void build_table();
  std::complex<double> evaluate_realized(std::int64_t n) const;

  std::variant<Sampled, Realized> data_;
  std::vector<std::complex<double>> table_;  ///< one period when the torus rank is zero
};

/// φ_n(k) = ∏_{j=1}^n cos²(2πk/3^j), realized as a trigonometric polynomial on ℤ/3^n.
HartmanFunction cos2_product(int n);
/// n ↦ 1_{[0,β)}(nα mod 1).
HartmanFunction cut_sequence(const Character& alpha, const Rational& beta);
/// n ↦ amplitude · e^{2πinα}.
HartmanFunction character_sequence(const Character& alpha, std::complex<double> amplitude = 1.0);
/// n ↦ (−1)^n, realized on ℤ/2 with values (1, −1).
HartmanFunction alternating();

/// Samples φ on [−N, N].
HartmanFunction sample(const HartmanFunction& phi, std::int64_t N);

/// CSV lines "n,re,im" for n ∈ [−N, N].
void write_csv(std::ostream& out, const HartmanFunction& phi, std::int64_t N);
/// Parses and validates contiguity of n from −N to N; throws std::invalid_argument.
HartmanFunction read_csv(std::istream& in);

}  // namespace hartman
