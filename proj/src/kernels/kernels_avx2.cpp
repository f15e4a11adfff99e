// Built with -mavx2 -mfma; only reached through dispatch after a CPU check.
#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "dualitykit/kernels.hpp"

namespace dualitykit::kernels::avx2 {

// Two complex doubles per __m256d, laid out [re0 im0 re1 im1].

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);  // [im re im re]
    // a*x = [ar*xr - ai*xi, ar*xi + ai*xr]
    const __m256d t = _mm256_mul_pd(ai, xs);
    const __m256d ax = _mm256_fmaddsub_pd(ar, xv, t);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, ax));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = cplx(y[i].real() + a.real() * xr - a.imag() * xi, y[i].imag() + a.real() * xi + a.imag() * xr);
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<const double*>(y);
  __m256d acc_rr = _mm256_setzero_pd();  // xr*yr, xi*yi
  __m256d acc_ri = _mm256_setzero_pd();  // xr*yi, xi*yr
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc_rr = _mm256_fmadd_pd(xv, yv, acc_rr);
    acc_ri = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_ri);
  }
  alignas(32) double rr[4];
  alignas(32) double ri[4];
  _mm256_store_pd(rr, acc_rr);
  _mm256_store_pd(ri, acc_ri);
  double re = rr[0] + rr[1] + rr[2] + rr[3];
  double im = (ri[0] - ri[1]) + (ri[2] - ri[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double max_abs_diff(std::size_t n, const cplx* x, const cplx* y) {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<const double*>(y);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xd + 2 * i), _mm256_loadu_pd(yd + 2 * i));
    const __m256d sq = _mm256_mul_pd(d, d);
    // re^2 + im^2 in both lanes of each pair
    const __m256d s = _mm256_hadd_pd(sq, sq);
    best = _mm256_max_pd(best, s);
  }
  alignas(32) double b[4];
  _mm256_store_pd(b, best);
  double m = std::sqrt(std::max(std::max(b[0], b[1]), std::max(b[2], b[3])));
  for (; i < n; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace dualitykit::kernels::avx2
