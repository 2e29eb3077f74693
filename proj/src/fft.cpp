#include "squashlab/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "squashlab/errors.hpp"

namespace squashlab::kern {

namespace {
bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Fft::Fft(std::size_t n, const Ops& ops) : n_(n), ops_(&ops) {
  if (!is_power_of_two(n)) {
    throw DomainError("Fft: size must be a power of two");
  }

  bit_reversal_.resize(n);
  std::uint32_t log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t r = 0;
    for (std::uint32_t bit = 0; bit < log2n; ++bit) {
      r |= ((i >> bit) & 1u) << (log2n - 1 - bit);
    }
    bit_reversal_[i] = r;
  }

  // Stage tables: for block length len, half = len/2 twiddles
  // w_j = exp(-2 pi i j / len).
  for (std::size_t len = 2; len <= n; len <<= 1) {
    stage_offsets_.push_back(twiddles_.size());
    const std::size_t half = len / 2;
    for (std::size_t j = 0; j < half; ++j) {
      const double angle =
          -2.0 * std::numbers::pi * static_cast<double>(j) /
          static_cast<double>(len);
      twiddles_.emplace_back(std::cos(angle), std::sin(angle));
    }
  }
}

void Fft::forward(std::complex<double>* x) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j = bit_reversal_[i];
    if (i < j) std::swap(x[i], x[j]);
  }
  std::size_t stage = 0;
  for (std::size_t len = 2; len <= n_; len <<= 1, ++stage) {
    const std::size_t half = len / 2;
    const std::complex<double>* w = twiddles_.data() + stage_offsets_[stage];
    for (std::size_t start = 0; start < n_; start += len) {
      ops_->butterfly_pass(x + start, x + start + half, w, half);
    }
  }
}

void Fft::inverse(std::complex<double>* x) const {
  for (std::size_t i = 0; i < n_; ++i) x[i] = std::conj(x[i]);
  forward(x);
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = std::conj(x[i]) * inv_n;
}

}  // namespace squashlab::kern
