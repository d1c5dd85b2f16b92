#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hartman/character.hpp"
#include "hartman/continued_fraction.hpp"
#include "hartman/group_model.hpp"
#include "hartman/hartman_function.hpp"

namespace hartman {

struct SpectrumOptions {
  double theta = 1e-3;               ///< report peaks with |coefficient| >= theta
  double refine_tolerance = 1e-10;   ///< golden-section tolerance on α
  int polish_sweeps = 2;             ///< re-refinement passes over all peaks
  std::size_t max_iterations = 8192; ///< cap on subtraction steps
  double uncertainty_factor = 4.0;   ///< κ in u = κ·σ/(|c|·M^{3/2})
  CertifyOptions certify;
};

struct Peak {
  Character alpha;  ///< floating; its tolerance is the frequency uncertainty
  std::complex<double> coefficient;
  double residual = 0.0;  ///< |m̂((φ − fit)·χ̄)| at the refined frequency
  std::optional<RationalMatch> rational;
};

struct SpectrumReport {
  std::int64_t window_radius = 0;
  double theta = 0.0;
  double residual_rms = 0.0;  ///< rms of φ minus the fitted tones over the window
  std::vector<Peak> peaks;    ///< increasing α
  SpectralSubgroup generated_subgroup;
  bool presentation_certified = true;
  std::string presentation_detail;
};

/// Smallest threshold the window supports: one sample of size sup|φ| moves every
/// coefficient estimate by sup|φ|/(2N+1).
double minimum_theta(double sup, std::int64_t N);

SpectrumReport scan_spectrum(const HartmanFunction& phi, std::int64_t N, const SpectrumOptions& options = {});
SpectrumReport scan_spectrum_of_window(std::span<const std::complex<double>> values, const SpectrumOptions& options = {});

/// Reduced presentation of the group generated by the peaks, strongest first.
/// Throws CannotCertify.
SpectralSubgroup subgroup_of(const SpectrumReport& report, const CertifyOptions& options = {});

struct RationalityResult {
  bool rational = false;
  std::int64_t p = 0;
  std::int64_t q = 1;
  double error = 0.0;
};

/// p/q when a convergent with q <= Q lies within the residual of α, otherwise
/// irrational up to Q.
RationalityResult classify_rationality(double alpha, double residual, std::int64_t Q);
RationalityResult classify_rationality(const Character& alpha, std::int64_t Q);

/// (1/M) Σ_{|n|≤N} x_n e^{−2πinα} for a window of length M = 2N+1.
std::complex<double> window_coefficient(std::span<const std::complex<double>> values, double alpha);

/// (1/M) Σ_{|n|≤N} e^{2πinu}.
double dirichlet(double u, std::int64_t M);

}  // namespace hartman
