#include "fractree/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "fractree/errors.hpp"

namespace fractree::kernels {

namespace {

// Plain-double complex arithmetic: identical operation order to the SIMD
// variants and free of the library's NaN-recovery slow path.
void eval_grid_scalar(const double* w_re, const double* w_im, std::size_t count, const Complex* zeros,
                      const Complex* poles, std::size_t order, double* out_re, double* out_im) {
  for (std::size_t i = 0; i < count; ++i) {
    const double wr = w_re[i], wi = w_im[i];
    double nr = 1.0, ni = 0.0, dr = 1.0, di = 0.0;
    for (std::size_t j = 0; j < order; ++j) {
      const double zr = wr + zeros[j].real(), zi = wi + zeros[j].imag();
      const double t = nr * zr - ni * zi;
      ni = nr * zi + ni * zr;
      nr = t;
      const double pr = wr + poles[j].real(), pi = wi + poles[j].imag();
      const double u = dr * pr - di * pi;
      di = dr * pi + di * pr;
      dr = u;
    }
    const double mag = dr * dr + di * di;
    out_re[i] = (nr * dr + ni * di) / mag;
    out_im[i] = (ni * dr - nr * di) / mag;
  }
}

double error_sum_scalar(const double* w_re, const double* w_im, const double* meas_re, const double* meas_im,
                        const double* meas_abs, std::size_t count, const Complex* zeros, const Complex* poles,
                        std::size_t order) {
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double wr = w_re[i], wi = w_im[i];
    double nr = 1.0, ni = 0.0, dr = 1.0, di = 0.0;
    for (std::size_t j = 0; j < order; ++j) {
      const double zr = wr + zeros[j].real(), zi = wi + zeros[j].imag();
      const double t = nr * zr - ni * zi;
      ni = nr * zi + ni * zr;
      nr = t;
      const double pr = wr + poles[j].real(), pi = wi + poles[j].imag();
      const double u = dr * pr - di * pi;
      di = dr * pi + di * pr;
      dr = u;
    }
    const double mag = dr * dr + di * di;
    const double vr = (nr * dr + ni * di) / mag;
    const double vi = (ni * dr - nr * di) / mag;
    const double er = vr - meas_re[i];
    const double ei = vi - meas_im[i];
    acc += std::sqrt(er * er + ei * ei) / meas_abs[i];
  }
  return acc;
}

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}

#if defined(FRACTREE_HAVE_AVX2_TU)
const Backend& avx2_backend();  // kernels_avx2.cpp
#endif

const Backend& scalar_backend() {
  static const Backend backend{"scalar", &eval_grid_scalar, &error_sum_scalar};
  return backend;
}

const std::vector<const Backend*>& available_backends() {
  static const std::vector<const Backend*> backends = [] {
    std::vector<const Backend*> list{&scalar_backend()};
#if defined(FRACTREE_HAVE_AVX2_TU)
    if (cpu_has_avx2_fma()) list.push_back(&avx2_backend());
#endif
    return list;
  }();
  return backends;
}

const Backend& active_backend() {
  static const Backend* chosen = [] {
    const auto& backends = available_backends();
    if (const char* env = std::getenv("FRACTREE_KERNEL")) {
      const std::string wanted(env);
      for (const Backend* backend : backends) {
        if (wanted == backend->name) return backend;
      }
      throw InputError("kernels: FRACTREE_KERNEL names no available backend: " + wanted);
    }
    return backends.back();
  }();
  return *chosen;
}

}
