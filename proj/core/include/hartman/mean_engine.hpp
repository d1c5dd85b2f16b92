#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hartman/character.hpp"
#include "hartman/hartman_function.hpp"
#include "hartman/rational.hpp"

namespace hartman {

/// A symmetric Cesàro average with its values on dyadic sub-windows.
struct MeanEstimate {
  std::complex<double> value;
  std::int64_t window_radius = 0;
  /// (radius, average over [−radius, radius]) for radius = N, N/2, N/4, …, 1.
  std::vector<std::pair<std::int64_t, std::complex<double>>> diagnostics;
};

/// (1/(2N+1)) Σ_{|n|≤N} values[n + N], with compensated summation outward from 0.
MeanEstimate cesaro_mean_of_window(std::span<const std::complex<double>> values);

MeanEstimate cesaro_mean(const HartmanFunction& phi, std::int64_t N);

/// Cesàro mean of n ↦ φ(n)·e^{−2πinα}.
MeanEstimate fourier_coefficient(const HartmanFunction& phi, const Character& chi, std::int64_t N);
MeanEstimate fourier_coefficient_of_window(std::span<const std::complex<double>> values, const Character& chi);

/// The invariant mean computed exactly: the Haar integral of a rational step
/// realization, or the (dyadic) zero coefficient of a trigonometric realization.
/// Throws std::invalid_argument for floating realizations and sampled input.
ComplexQ exact_mean(const HartmanFunction& phi);

}  // namespace hartman
