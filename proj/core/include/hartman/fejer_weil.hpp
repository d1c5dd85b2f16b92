#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hartman/distance_filter.hpp"
#include "hartman/group_model.hpp"
#include "hartman/hartman_function.hpp"
#include "hartman/lattice.hpp"
#include "hartman/step_function.hpp"
#include "hartman/trig_polynomial.hpp"

namespace hartman {

/// (1/n)·(sin πnt / sin πt)², normalized so that ∫_𝕋 K_n = 1.
double fejer_kernel(std::int64_t n, double t);

/// σ_n on 𝕋^k × F: torus coefficients are damped by ∏_j (1 − |m_j|/n)₊, finite
/// frequencies pass through.
struct FejerOperator {
  std::int64_t n = 1;
  int k = 0;

  FejerOperator(std::int64_t order, int torus_rank);

  double damping(const Frequency& m) const;
  /// K_n on 𝕋^k, the product of one-dimensional kernels.
  double kernel(std::span<const double> t) const;
};

TrigPolynomial fejer_apply(const FejerOperator& op, const TrigPolynomial& f);
/// Uses the exact arc integrals for every frequency with all |m_j| < n.
TrigPolynomial fejer_apply(const FejerOperator& op, const StepFunction& f);

/// Values at the grid points ((i_1 + s)/G, …, (i_k + s)/G; z), s = 1/2 when midpoint,
/// torus index mixed-radix (first coordinate slowest), fiber fastest. Separable, so the
/// cost is about G^k·(2d+1)·|F| rather than G^k times the number of terms.
std::vector<std::complex<double>> evaluate_on_grid(const TrigPolynomial& p, int grid, bool midpoint = true);

/// Exact part: for real f, ‖σ_n f‖₁ ≤ ∫σ_n f⁺ + ∫σ_n f⁻ = ∫f⁺ + ∫f⁻ = ‖f‖₁, because σ_n
/// leaves the zero frequency alone and maps nonnegative functions to nonnegative ones
/// (complex f: |σ_n f| ≤ σ_n|f|). The grid part checks the nonnegativity of σ_n applied
/// to the positive and negative parts of Re f and Im f, and the resulting L¹ norm.
struct FejerNormCertificate {
  bool real_input = false;
  std::optional<Rational> input_l1;  ///< ‖f‖₁, exact when every value is real or imaginary
  double input_l1_value = 0.0;       ///< ‖f‖₁ as a double
  Rational positive_mass{0};         ///< ∫f⁺ = ∫σ_n f⁺
  Rational negative_mass{0};         ///< ∫f⁻ = ∫σ_n f⁻
  int grid = 0;
  double grid_l1 = 0.0;          ///< midpoint-rule ‖σ_n f‖₁
  double grid_min = 0.0;         ///< min over the grid of σ_n applied to each part
  double tolerance = 0.0;
  bool passed = false;
};

FejerNormCertificate certify_fejer_norm(const FejerOperator& op, const StepFunction& f, int grid = 0);

/// The projection π_H: 𝕋^k × F → (𝕋^k × F)/H ≅ 𝕋^J × F' for H = 𝕋^C × H_fin, where J
/// are the coordinates outside C. With u = D·x_J and integer lifts z of the fiber,
///   w = (u + z·Q)·B⁻¹ mod 1,  y = z·V mod d,
/// B a basis of {u : (u, 0) ∈ L}, L the lattice of lifts of H.
class QuotientMap {
 public:
  static QuotientMap build(const SubgroupH& H);

  const GroupShape& source() const { return source_; }
  const GroupShape& target() const { return target_; }
  const std::vector<int>& kept_coordinates() const { return kept_; }
  /// B is diagonal, so boxes pull back to unions of boxes and back.
  bool is_diagonal() const { return diagonal_; }

  ExactPoint operator()(const ExactPoint& x) const;
  /// Some x with π_H(x) = y; zero on the collapsed coordinates.
  ExactPoint section(const ExactPoint& y) const;

  /// f∘π_H for a step function on the quotient; requires is_diagonal().
  StepFunction pullback(const StepFunction& g) const;
  /// g with g∘π_H = f for an H-invariant f; requires is_diagonal().
  StepFunction push_forward(const StepFunction& f) const;

 private:
  std::vector<Rational> offset(std::span<const Integer> z) const;  ///< z·Q
  std::vector<Integer> fiber_lift(std::int64_t flat) const;
  std::int64_t target_fiber(std::span<const Integer> z) const;

  GroupShape source_, target_;
  std::vector<int> kept_;
  Integer D_ = 1;
  std::vector<std::vector<Rational>> Q_;     ///< N × |J|
  std::vector<std::vector<Rational>> B_;     ///< |J| × |J|
  std::vector<std::vector<Rational>> Binv_;
  lattice::DiagonalForm smith_;
  std::vector<std::size_t> kept_factors_;    ///< indices i with d_i > 1
  bool diagonal_ = true;
};

/// b̄f on X/H. `lifted` is b̄f∘π_H, an H-invariant step function on X; the explicit
/// form on the quotient exists when the quotient map is diagonal.
struct QuotientFunction {
  SubgroupH H;
  QuotientMap map;
  StepFunction lifted;
  std::optional<StepFunction> explicit_form;

  const GroupShape& quotient_shape() const { return map.target(); }
};

/// b̄f(s + H) = ∫_H f(s + t) dμ_H(t), exact: arc-length weighted averages over the
/// subtorus, then the mean over the finite orbit.
QuotientFunction fiber_average(const StepFunction& f, const SubgroupH& H);

struct AperiodizeCertificate {
  SubgroupH kernel;              ///< H = ker d_{φ*}
  /// ker of ψ*∘π_H equals H, i.e. ψ* is aperiodic on X/H.
  bool lifted_kernel_is_H = false;
  std::optional<bool> explicit_kernel_trivial;  ///< kernel_subgroup(ψ*) = {0} on X/H
  std::optional<Rational> residual;  ///< ‖φ* − ψ*∘π_H‖₁
  bool weil_exact = false;           ///< ∫_{X/H} ψ* = ∫_X φ*
  bool passed = false;
};

struct Aperiodization {
  QuotientFunction psi;
  AperiodizeCertificate certificate;
};

Aperiodization aperiodize(const StepFunction& phi_star);

struct GammaRealizationOptions {
  std::int64_t order = 64;  ///< Fejér order n_max
  int residual_grid = 0;    ///< 0 picks a grid from the torus rank
  CertifyOptions certify;
};

/// ψ*_n = σ_n ψ* on C_Γ for Γ = Γ(φ).
struct GammaRealization {
  SpectralSubgroup gamma;
  Compactification comp;
  TrigPolynomial realization;
  std::int64_t order = 0;
  /// ‖σ_n ψ* − ψ*‖₁: an exact bound Σ|c|(1 − damping) for trigonometric input, a
  /// midpoint-grid estimate for step functions.
  double residual = 0.0;
  bool residual_is_bound = false;
};

GammaRealization realize_on_gamma(const HartmanFunction& phi, const GammaRealizationOptions& options = {});

/// Generators of H^⊥ = {m : η_m = 1 on H} as frequencies of the ambient group.
std::vector<Frequency> annihilator(const SubgroupH& H);

}  // namespace hartman
