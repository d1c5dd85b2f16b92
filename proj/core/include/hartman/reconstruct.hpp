#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hartman/group_model.hpp"
#include "hartman/hartman_function.hpp"
#include "hartman/spectrum.hpp"
#include "hartman/trig_polynomial.hpp"

namespace hartman {

struct ReconstructParams {
  std::int64_t N = 0;  ///< window radius; 0 uses the whole sampled window
  SpectrumOptions spectrum;
  std::int64_t order = 256;  ///< Fejér synthesis order
  std::vector<std::int64_t> error_orders{8, 16, 32, 64, 128, 256};
};

struct FrequencyResidual {
  double alpha = 0.0;
  std::complex<double> coefficient;
  double refinement_residual = 0.0;  ///< from the spectrum scan
  Frequency frequency;               ///< the character of C_Γ it was assigned to
  double alpha_mismatch = 0.0;       ///< circle distance from α to that character
};

struct ReconstructReport {
  SpectrumReport spectrum;
  bool empty_spectrum = false;
  std::vector<FrequencyResidual> residuals;  ///< one per peak, increasing α
  std::vector<std::pair<std::int64_t, double>> l1_errors;  ///< (order, mean |ψ_n∘ι − φ|)
  double fitted_l1 = 0.0;  ///< at the synthesis order
  /// Whether the fitted frequencies generate the dual of C_Γ, i.e. the realization
  /// is aperiodic. Always "estimated": the coefficients come from samples.
  bool kernel_trivial = false;
  std::string kernel_check = "estimated";
  Certification certification = Certification::numerical;
};

struct Reconstruction {
  Compactification comp;
  TrigPolynomial realization;  ///< σ_n ψ* on C_Γ at the synthesis order
  ReconstructReport report;
};

/// spectrum → Γ(φ) → C_Γ → Fejér synthesis of the estimated coefficients.
/// Throws CannotCertify when Γ cannot be presented.
Reconstruction reconstruct(const HartmanFunction& samples, const ReconstructParams& params = {});

struct EquivalenceResult {
  Verdict verdict = Verdict::undecided;
  CoverResult forward;   ///< c1 ≤ c2
  CoverResult backward;  ///< c2 ≤ c1
  bool same_shape = false;  ///< equal torus rank and invariant factors
  std::string detail;
};

EquivalenceResult equivalence_check(const Compactification& c1, const Compactification& c2,
                                    const CertifyOptions& options = {});

}  // namespace hartman
