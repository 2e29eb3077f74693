// AVX2 variants of the estimator kernels. Compiled with -mavx2 and reached
// only through the runtime dispatch in kernels_dispatch.cpp.

#include "squashlab/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace squashlab::kern {
namespace {

void multiply_avx2(const double* a, const double* b, double* out,
                   std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void accumulate_abs2_avx2(const std::complex<double>* x, double* acc,
                          std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // Four complex values = two 256-bit loads of [re im re im].
    const __m256d v0 = _mm256_loadu_pd(p + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
    const __m256d sq0 = _mm256_mul_pd(v0, v0);
    const __m256d sq1 = _mm256_mul_pd(v1, v1);
    // hadd of [r0 i0 r1 i1], [r2 i2 r3 i3] -> [|0|^2 |2|^2 |1|^2 |3|^2]
    const __m256d h = _mm256_hadd_pd(sq0, sq1);
    const __m256d norm = _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
    const __m256d va = _mm256_loadu_pd(acc + i);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(va, norm));
  }
  for (; i < n; ++i) {
    const double re = x[i].real();
    const double im = x[i].imag();
    acc[i] += re * re + im * im;
  }
}

void scale_avx2(double* x, double s, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), vs));
  }
  for (; i < n; ++i) x[i] *= s;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
  for (; i < n; ++i) total += x[i];
  return total;
}

double sum_squares_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

void butterfly_pass_avx2(std::complex<double>* a, std::complex<double>* b,
                         const std::complex<double>* w, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  double* pb = reinterpret_cast<double*>(b);
  const double* pw = reinterpret_cast<const double*>(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d vw = _mm256_loadu_pd(pw + 2 * i);
    const __m256d wre = _mm256_movedup_pd(vw);         // [wr wr wr wr]
    const __m256d wim = _mm256_permute_pd(vw, 0xF);    // [wi wi wi wi]
    const __m256d bsw = _mm256_permute_pd(vb, 0x5);    // [bi br bi br]
    // addsub: even lanes re = br*wr - bi*wi, odd lanes im = bi*wr + br*wi
    const __m256d t =
        _mm256_addsub_pd(_mm256_mul_pd(vb, wre), _mm256_mul_pd(bsw, wim));
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    _mm256_storeu_pd(pa + 2 * i, _mm256_add_pd(va, t));
    _mm256_storeu_pd(pb + 2 * i, _mm256_sub_pd(va, t));
  }
  for (; i < n; ++i) {
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

const Ops* avx2_ops_impl() {
  static const Ops ops{
      "avx2",     multiply_avx2,    accumulate_abs2_avx2,
      scale_avx2, sum_avx2,         sum_squares_avx2,
      butterfly_pass_avx2,
  };
  return &ops;
}

}  // namespace squashlab::kern

#else

namespace squashlab::kern {
const Ops* avx2_ops_impl() { return nullptr; }
}  // namespace squashlab::kern

#endif
