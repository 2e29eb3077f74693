#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "squashlab/kernels.hpp"

namespace squashlab::kern {

// Iterative radix-2 FFT with precomputed bit-reversal permutation and
// per-stage twiddle tables. The butterfly inner loop goes through the
// dispatched kernel table, so the same plan runs scalar or AVX2.
class Fft {
 public:
  // n must be a power of two.
  explicit Fft(std::size_t n, const Ops& ops = active_ops());

  std::size_t size() const { return n_; }

  // In-place transform with kernel convention sum_j x[j] e^{-2 pi i jk / n}.
  void forward(std::complex<double>* x) const;

  // Inverse including the 1/n normalization.
  void inverse(std::complex<double>* x) const;

 private:
  std::size_t n_;
  const Ops* ops_;
  std::vector<std::uint32_t> bit_reversal_;
  std::vector<std::complex<double>> twiddles_;  // stages concatenated
  std::vector<std::size_t> stage_offsets_;
};

}  // namespace squashlab::kern
