#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hartman {

/// Unnormalized forward DFT X[f] = Σ_j x[j] e^{−2πijf/n} of a fixed length.
class Dft {
 public:
  explicit Dft(std::size_t n);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  std::size_t size() const { return n_; }
  std::vector<std::complex<double>> forward(std::span<const std::complex<double>> input);

 private:
  std::size_t n_;
  void* in_ = nullptr;
  void* out_ = nullptr;
  void* plan_ = nullptr;
};

}  // namespace hartman
