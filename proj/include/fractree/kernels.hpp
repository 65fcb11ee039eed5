#pragma once

#include <cstddef>
#include <vector>

#include "fractree/complex.hpp"

namespace fractree::kernels {

// Batched evaluation of prod_j (w + z_j) / prod_j (w + p_j) over a grid of
// w points held in split re/im arrays. Root arrays are interleaved complex.
using EvalGridFn = void (*)(const double* w_re, const double* w_im, std::size_t count,
                            const Complex* zeros, const Complex* poles, std::size_t order,
                            double* out_re, double* out_im);

// Fused identification-error accumulation: sum over the grid of
// |value_i - meas_i| / |meas_i| with value_i as in EvalGridFn.
using ErrorSumFn = double (*)(const double* w_re, const double* w_im, const double* meas_re,
                              const double* meas_im, const double* meas_abs, std::size_t count,
                              const Complex* zeros, const Complex* poles, std::size_t order);

struct Backend {
  const char* name;
  EvalGridFn eval_grid;
  ErrorSumFn error_sum;
};

const Backend& scalar_backend();

// All backends usable on this machine, scalar first, widest last.
const std::vector<const Backend*>& available_backends();

// Backend used by the hot paths. FRACTREE_KERNEL=<name> overrides the default
// (the widest supported variant); unknown names throw.
const Backend& active_backend();

}
