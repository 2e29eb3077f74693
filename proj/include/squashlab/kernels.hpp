#pragma once

#include <complex>
#include <cstddef>

namespace squashlab::kern {

// Data-parallel primitives used by the spectral estimator. Every entry has a
// scalar reference implementation and, on x86-64 hardware that supports it,
// an AVX2 variant selected once at startup. The element-wise kernels
// (multiply, accumulate_abs2, butterfly_pass, scale) preserve the scalar
// operation order and round identically; the reductions (sum, sum_squares)
// reassociate and agree only to rounding.
struct Ops {
  const char* name;

  // out[i] = a[i] * b[i]
  void (*multiply)(const double* a, const double* b, double* out,
                   std::size_t n);

  // acc[i] += |x[i]|^2
  void (*accumulate_abs2)(const std::complex<double>* x, double* acc,
                          std::size_t n);

  // x[i] *= s
  void (*scale)(double* x, double s, std::size_t n);

  double (*sum)(const double* x, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);

  // Radix-2 butterfly over paired halves of one FFT block:
  //   t = b[i] * w[i]; b[i] = a[i] - t; a[i] = a[i] + t
  void (*butterfly_pass)(std::complex<double>* a, std::complex<double>* b,
                         const std::complex<double>* w, std::size_t n);
};

const Ops& scalar_ops();

// nullptr when the binary or the CPU lacks AVX2.
const Ops* avx2_ops();

// AVX2 when available unless SQUASHLAB_FORCE_SCALAR is set in the
// environment at first use.
const Ops& active_ops();

}  // namespace squashlab::kern
