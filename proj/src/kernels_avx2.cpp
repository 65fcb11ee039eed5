// AVX2/FMA variants of the grid kernels, 4 grid points per iteration in
// split-lane complex form. Compiled with -mavx2 -mfma; callers reach this TU
// only after the CPUID probe in kernels.cpp.

#include <immintrin.h>

#include "fractree/kernels.hpp"

namespace fractree::kernels {

namespace {

struct Lane4 {
  __m256d re;
  __m256d im;
};

// (a.re, a.im) *= (b.re, b.im)
inline Lane4 cmul(Lane4 a, Lane4 b) {
  const __m256d re = _mm256_fmsub_pd(a.re, b.re, _mm256_mul_pd(a.im, b.im));
  const __m256d im = _mm256_fmadd_pd(a.re, b.im, _mm256_mul_pd(a.im, b.re));
  return {re, im};
}

inline Lane4 ratio(Lane4 num, Lane4 den) {
  const __m256d mag = _mm256_fmadd_pd(den.re, den.re, _mm256_mul_pd(den.im, den.im));
  const __m256d re = _mm256_fmadd_pd(num.re, den.re, _mm256_mul_pd(num.im, den.im));
  const __m256d im = _mm256_fmsub_pd(num.im, den.re, _mm256_mul_pd(num.re, den.im));
  return {_mm256_div_pd(re, mag), _mm256_div_pd(im, mag)};
}

inline Lane4 eval_block(__m256d wr, __m256d wi, const Complex* zeros, const Complex* poles,
                        std::size_t order, Lane4* den_out) {
  Lane4 num{_mm256_set1_pd(1.0), _mm256_setzero_pd()};
  Lane4 den{_mm256_set1_pd(1.0), _mm256_setzero_pd()};
  for (std::size_t j = 0; j < order; ++j) {
    const Lane4 zf{_mm256_add_pd(wr, _mm256_set1_pd(zeros[j].real())),
                   _mm256_add_pd(wi, _mm256_set1_pd(zeros[j].imag()))};
    num = cmul(num, zf);
    const Lane4 pf{_mm256_add_pd(wr, _mm256_set1_pd(poles[j].real())),
                   _mm256_add_pd(wi, _mm256_set1_pd(poles[j].imag()))};
    den = cmul(den, pf);
  }
  *den_out = den;
  return num;
}

void eval_grid_avx2(const double* w_re, const double* w_im, std::size_t count, const Complex* zeros,
                    const Complex* poles, std::size_t order, double* out_re, double* out_im) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d wr = _mm256_loadu_pd(w_re + i);
    const __m256d wi = _mm256_loadu_pd(w_im + i);
    Lane4 den;
    const Lane4 num = eval_block(wr, wi, zeros, poles, order, &den);
    const Lane4 v = ratio(num, den);
    _mm256_storeu_pd(out_re + i, v.re);
    _mm256_storeu_pd(out_im + i, v.im);
  }
  if (i < count) {
    scalar_backend().eval_grid(w_re + i, w_im + i, count - i, zeros, poles, order, out_re + i, out_im + i);
  }
}

double error_sum_avx2(const double* w_re, const double* w_im, const double* meas_re, const double* meas_im,
                      const double* meas_abs, std::size_t count, const Complex* zeros, const Complex* poles,
                      std::size_t order) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d wr = _mm256_loadu_pd(w_re + i);
    const __m256d wi = _mm256_loadu_pd(w_im + i);
    Lane4 den;
    const Lane4 num = eval_block(wr, wi, zeros, poles, order, &den);
    const Lane4 v = ratio(num, den);
    const __m256d er = _mm256_sub_pd(v.re, _mm256_loadu_pd(meas_re + i));
    const __m256d ei = _mm256_sub_pd(v.im, _mm256_loadu_pd(meas_im + i));
    const __m256d dist = _mm256_sqrt_pd(_mm256_fmadd_pd(er, er, _mm256_mul_pd(ei, ei)));
    acc = _mm256_add_pd(acc, _mm256_div_pd(dist, _mm256_loadu_pd(meas_abs + i)));
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  double total = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  if (i < count) {
    total += scalar_backend().error_sum(w_re + i, w_im + i, meas_re + i, meas_im + i, meas_abs + i,
                                        count - i, zeros, poles, order);
  }
  return total;
}

}

const Backend& avx2_backend() {
  static const Backend backend{"avx2", &eval_grid_avx2, &error_sum_avx2};
  return backend;
}

}
