#include "hartman/mean_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hartman {

namespace {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

MeanEstimate cesaro_mean_of_window(std::span<const std::complex<double>> values) {
  if (values.size() % 2 == 0) throw std::invalid_argument("a symmetric window has odd length");
  const auto N = static_cast<std::int64_t>(values.size() / 2);
  std::vector<std::int64_t> radii;
  for (std::int64_t r = N; r >= 1; r /= 2) radii.push_back(r);
  if (radii.empty()) radii.push_back(0);

  MeanEstimate est;
  est.window_radius = N;
  CompensatedSum re, im;
  auto next = radii.rbegin();
  for (std::int64_t r = 0; r <= N; ++r) {
    const auto& a = values[static_cast<std::size_t>(N + r)];
    re.add(a.real());
    im.add(a.imag());
    if (r > 0) {
      const auto& b = values[static_cast<std::size_t>(N - r)];
      re.add(b.real());
      im.add(b.imag());
    }
    if (next != radii.rend() && *next == r) {
      const double count = static_cast<double>(2 * r + 1);
      est.diagnostics.emplace_back(r, std::complex<double>(re.value() / count, im.value() / count));
      ++next;
    }
  }
  // Largest radius first.
  std::reverse(est.diagnostics.begin(), est.diagnostics.end());
  est.value = est.diagnostics.front().second;
  return est;
}

MeanEstimate cesaro_mean(const HartmanFunction& phi, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("window radius must be at least 1");
  auto values = phi.window(N);
  return cesaro_mean_of_window(values);
}

MeanEstimate fourier_coefficient_of_window(std::span<const std::complex<double>> values, const Character& chi) {
  const auto N = static_cast<std::int64_t>(values.size() / 2);
  std::vector<std::complex<double>> twisted(values.size());
  for (std::int64_t n = -N; n <= N; ++n) {
    const double angle = -2.0 * std::numbers::pi * chi.phase(n);
    twisted[static_cast<std::size_t>(n + N)] =
        values[static_cast<std::size_t>(n + N)] * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return cesaro_mean_of_window(twisted);
}

MeanEstimate fourier_coefficient(const HartmanFunction& phi, const Character& chi, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("window radius must be at least 1");
  auto values = phi.window(N);
  return fourier_coefficient_of_window(values, chi);
}

ComplexQ exact_mean(const HartmanFunction& phi) {
  if (!phi.is_realized()) throw std::invalid_argument("exact mean needs a realized function");
  const auto& r = phi.as_realized().realization;
  if (phi.as_realized().comp.certification() != Certification::exact) {
    throw std::invalid_argument("exact mean rejects floating realizations");
  }
  if (const auto* f = std::get_if<StepFunction>(&r)) return haar_integral(*f);
  if (const auto* p = std::get_if<TrigPolynomial>(&r)) {
    const auto c = p->mean();
    return ComplexQ(from_double(c.real()), from_double(c.imag()));
  }
  throw std::invalid_argument("exact mean rejects floating realizations");
}

}  // namespace hartman
