#include "fractree/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fractree {

PolyW::PolyW(std::vector<Complex> coeffs) : coef_(std::move(coeffs)) {
  if (coef_.empty()) {
    throw InputError("poly: empty coefficient list");
  }
  while (coef_.size() > 1 && coef_.back() == Complex(0.0)) {
    coef_.pop_back();
  }
}

PolyW PolyW::from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{Complex(1.0)};
  for (Complex root : roots) {
    c.push_back(c.back());
    for (std::size_t i = c.size() - 2; i > 0; --i) {
      c[i] = c[i - 1] - root * c[i];
    }
    c[0] *= -root;
  }
  return PolyW(std::move(c));
}

Complex PolyW::coeff(int i) const {
  if (i < 0 || i > degree()) return Complex(0.0);
  return coef_[static_cast<std::size_t>(i)];
}

Complex PolyW::eval(Complex w) const {
  Complex acc = coef_.back();
  for (std::size_t i = coef_.size() - 1; i-- > 0;) {
    acc = acc * w + coef_[i];
  }
  return acc;
}

Complex PolyW::eval_derivative(Complex w) const {
  Complex acc(0.0);
  for (std::size_t i = coef_.size() - 1; i > 0; --i) {
    acc = acc * w + double(i) * coef_[i];
  }
  return acc;
}

PolyW PolyW::shifted_up(int powers) const {
  if (powers < 0) throw InputError("poly: negative shift");
  if (is_zero()) return PolyW();
  std::vector<Complex> c(coef_.size() + static_cast<std::size_t>(powers), Complex(0.0));
  std::copy(coef_.begin(), coef_.end(), c.begin() + powers);
  return PolyW(std::move(c));
}

bool PolyW::is_monic(double tol) const {
  return std::abs(leading() - Complex(1.0)) <= tol;
}

double PolyW::imag_residue() const {
  double norm = 0.0, worst = 0.0;
  for (const Complex& c : coef_) {
    norm += std::abs(c);
    worst = std::max(worst, std::abs(c.imag()));
  }
  return norm > 0.0 ? worst / norm : 0.0;
}

PolyW operator+(const PolyW& a, const PolyW& b) {
  std::vector<Complex> c(std::max(a.coef_.size(), b.coef_.size()), Complex(0.0));
  for (std::size_t i = 0; i < a.coef_.size(); ++i) c[i] += a.coef_[i];
  for (std::size_t i = 0; i < b.coef_.size(); ++i) c[i] += b.coef_[i];
  return PolyW(std::move(c));
}

PolyW operator*(const PolyW& a, const PolyW& b) {
  if (a.is_zero() || b.is_zero()) return PolyW();
  std::vector<Complex> c(a.coef_.size() + b.coef_.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.coef_.size(); ++i) {
    for (std::size_t j = 0; j < b.coef_.size(); ++j) {
      c[i + j] += a.coef_[i] * b.coef_[j];
    }
  }
  return PolyW(std::move(c));
}

PolyW operator*(Complex scale, const PolyW& p) {
  std::vector<Complex> c = p.coef_;
  for (Complex& v : c) v *= scale;
  return PolyW(std::move(c));
}

PolyW operator*(double scale, const PolyW& p) { return Complex(scale) * p; }

double root_residual(const PolyW& p, Complex root) {
  const double scale = std::abs(p.leading()) * std::pow(std::max(1.0, std::abs(root)), p.degree());
  return std::abs(p.eval(root)) / scale;
}

namespace {

// Nudge apart coincident points so the Aberth repulsion terms stay finite.
void separate_duplicates(std::vector<Complex>& z) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(z[i] - z[j]) < 1e-12 * (1.0 + std::abs(z[i]))) {
        const double bump = 1e-6 * (1.0 + std::abs(z[i]));
        z[i] += Complex(bump * std::cos(0.7 * double(i + 1)), bump * std::sin(0.7 * double(i + 1)));
      }
    }
  }
}

}

std::vector<Complex> poly_roots(const PolyW& p, std::span<const Complex> warm_start) {
  const int n = p.degree();
  if (n < 1) {
    throw InputError("poly_roots: degree must be at least 1");
  }

  // Monic working copy.
  std::vector<Complex> a(p.coeffs());
  const Complex lead = a.back();
  for (Complex& c : a) c /= lead;

  std::vector<Complex> z(static_cast<std::size_t>(n));
  if (warm_start.size() == static_cast<std::size_t>(n)) {
    std::copy(warm_start.begin(), warm_start.end(), z.begin());
  } else {
    double radius = 0.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[static_cast<std::size_t>(i)]));
    radius = 1.0 + radius;  // Cauchy bound for a monic polynomial
    for (int k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * (double(k) + 0.25) / double(n) + 0.4;
      z[static_cast<std::size_t>(k)] = 0.7 * radius * Complex(std::cos(angle), std::sin(angle));
    }
  }
  separate_duplicates(z);

  constexpr int kMaxIter = 400;
  constexpr double kMachineFloor = 1e-14;  // backward-error stop, relative to |p| bound at z
  constexpr double kStepTol = 1e-13;

  for (int iter = 0; iter < kMaxIter; ++iter) {
    bool settled = true;
    for (int k = 0; k < n; ++k) {
      Complex& zk = z[static_cast<std::size_t>(k)];
      // Horner for p, p' and the magnitude bound sum |a_i| |z|^i.
      Complex pv = a.back();
      Complex dv(0.0);
      double bound = std::abs(a.back());
      const double zmag = std::abs(zk);
      for (std::size_t i = a.size() - 1; i-- > 0;) {
        dv = dv * zk + pv;
        pv = pv * zk + a[i];
        bound = bound * zmag + std::abs(a[i]);
      }
      if (std::abs(pv) <= kMachineFloor * bound) {
        continue;  // at the rounding floor; no further progress possible
      }
      Complex repulsion(0.0);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        Complex diff = zk - z[static_cast<std::size_t>(j)];
        if (diff == Complex(0.0)) diff = Complex(1e-12 * (1.0 + zmag));
        repulsion += 1.0 / diff;
      }
      Complex step;
      if (dv == Complex(0.0)) {
        step = Complex(1e-3 * (1.0 + zmag));
      } else {
        const Complex newton = pv / dv;
        const Complex denom = Complex(1.0) - newton * repulsion;
        step = denom == Complex(0.0) ? newton : newton / denom;
      }
      zk -= step;
      if (std::abs(step) > kStepTol * (1.0 + std::abs(zk))) settled = false;
    }
    if (settled) break;
  }

  std::vector<double> residuals(z.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    residuals[i] = root_residual(p, z[i]);
    worst = std::max(worst, residuals[i]);
  }
  if (worst > 1e-10) {
    throw RootSolveError(
        "poly_roots: iteration failed to converge (worst normalized residual " + std::to_string(worst) +
            " on degree " + std::to_string(n) + ")",
        std::move(z), std::move(residuals));
  }
  return z;
}

}
