#pragma once

#include <algorithm>
#include <cmath>

namespace fractree {

struct ScalarMinResult {
  double x = 0.0;
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
  bool at_bound = false;
};

namespace detail {

// Brent's golden-section / parabolic minimizer on a bracketing interval
// [a, b] containing interior point x0 with f(x0) below both ends.
template <typename F>
ScalarMinResult brent_minimize(const F& f, double a, double b, double x0, double f0, double tol,
                               int max_iter, int evals_so_far) {
  constexpr double kGolden = 0.3819660112501051;
  double x = x0, w = x0, v = x0;
  double fx = f0, fw = f0, fv = f0;
  double d = 0.0, e = 0.0;
  ScalarMinResult result;
  result.evals = evals_so_far;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double mid = 0.5 * (a + b);
    const double tol1 = tol + 1e-14 * std::abs(x);
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) {
      result.converged = true;
      break;
    }
    bool take_golden = true;
    if (std::abs(e) > tol1) {
      // Trial parabola through x, w, v.
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, mid - x);
        take_golden = false;
      }
    }
    if (take_golden) {
      e = (x >= mid ? a : b) - x;
      d = kGolden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
    const double fu = f(u);
    ++result.evals;
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  result.x = x;
  result.fx = fx;
  return result;
}

}

// Local bounded minimization: golden-ratio downhill walk from x0 (bounded to
// [lo, hi]) to bracket the minimum in whose basin x0 lies, then Brent. A walk
// that runs into a bound while still descending reports the bound itself.
template <typename F>
ScalarMinResult minimize_local(const F& f, double x0, double step, double lo, double hi, double tol,
                               int max_iter) {
  constexpr double kGold = 1.618033988749895;
  x0 = std::clamp(x0, lo, hi);
  const double f0 = f(x0);
  const double right = std::min(x0 + step, hi);
  const double left = std::max(x0 - step, lo);
  const double fr = f(right);
  const double fl = f(left);
  int evals = 3;
  if (f0 <= fr && f0 <= fl) {
    return detail::brent_minimize(f, left, right, x0, f0, tol, max_iter, evals);
  }

  const double dir = fr < fl ? 1.0 : -1.0;
  double a = x0;
  double b = dir > 0.0 ? right : left;
  double fb = dir > 0.0 ? fr : fl;
  double stride = step * kGold;
  while (true) {
    double c = std::clamp(b + dir * stride, lo, hi);
    if (c == b) {
      // Ran into the bound while still descending: boundary minimum.
      ScalarMinResult result;
      result.x = b;
      result.fx = fb;
      result.evals = evals;
      result.converged = true;
      result.at_bound = true;
      return result;
    }
    const double fc = f(c);
    ++evals;
    if (fc > fb) {
      return detail::brent_minimize(f, std::min(a, c), std::max(a, c), b, fb, tol, max_iter, evals);
    }
    a = b;
    b = c;
    fb = fc;
    stride *= kGold;
  }
}

}
