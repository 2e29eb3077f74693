#include "squashlab/kernels.hpp"

namespace squashlab::kern {
namespace {

void multiply_scalar(const double* a, const double* b, double* out,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void accumulate_abs2_scalar(const std::complex<double>* x, double* acc,
                            std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real();
    const double im = x[i].imag();
    acc[i] += re * re + im * im;
  }
}

void scale_scalar(double* x, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sum_squares_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void butterfly_pass_scalar(std::complex<double>* a, std::complex<double>* b,
                           const std::complex<double>* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double br = b[i].real(), bi = b[i].imag();
    const double wr = w[i].real(), wi = w[i].imag();
    const double tr = br * wr - bi * wi;
    const double ti = bi * wr + br * wi;
    const double ar = a[i].real(), ai = a[i].imag();
    a[i] = {ar + tr, ai + ti};
    b[i] = {ar - tr, ai - ti};
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{
      "scalar",       multiply_scalar,    accumulate_abs2_scalar,
      scale_scalar,   sum_scalar,         sum_squares_scalar,
      butterfly_pass_scalar,
  };
  return ops;
}

}  // namespace squashlab::kern
