#include "hartman/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace hartman {

namespace {
// Planning is not thread-safe in FFTW; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Dft::Dft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("empty transform");
  std::lock_guard lock(planner_mutex());
  in_ = fftw_malloc(sizeof(fftw_complex) * n);
  out_ = fftw_malloc(sizeof(fftw_complex) * n);
  if (in_ == nullptr || out_ == nullptr) {
    fftw_free(in_);
    fftw_free(out_);
    throw std::bad_alloc();
  }
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), static_cast<fftw_complex*>(in_), static_cast<fftw_complex*>(out_),
                           FFTW_FORWARD, FFTW_ESTIMATE);
}

Dft::~Dft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

std::vector<std::complex<double>> Dft::forward(std::span<const std::complex<double>> input) {
  if (input.size() != n_) throw std::invalid_argument("transform length mismatch");
  auto* in = static_cast<fftw_complex*>(in_);
  for (std::size_t i = 0; i < n_; ++i) {
    in[i][0] = input[i].real();
    in[i][1] = input[i].imag();
  }
  fftw_execute(static_cast<fftw_plan>(plan_));
  const auto* out = static_cast<const fftw_complex*>(out_);
  std::vector<std::complex<double>> result(n_);
  for (std::size_t i = 0; i < n_; ++i) result[i] = {out[i][0], out[i][1]};
  return result;
}

}  // namespace hartman
