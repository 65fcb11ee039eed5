#pragma once

#include <span>
#include <string>
#include <vector>

#include "fractree/complex.hpp"
#include "fractree/errors.hpp"

namespace fractree {

// Dense polynomial in w = s^(1/2), complex coefficients stored ascending.
// The leading coefficient is kept nonzero (exact-zero leading terms are
// trimmed on construction).
class PolyW {
 public:
  PolyW() : coef_{Complex(0.0)} {}
  explicit PolyW(std::vector<Complex> coeffs);

  static PolyW one() { return PolyW({Complex(1.0)}); }
  // Monic product of (w - root) over the given roots.
  static PolyW from_roots(std::span<const Complex> roots);

  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  bool is_zero() const { return coef_.size() == 1 && coef_[0] == Complex(0.0); }
  Complex leading() const { return coef_.back(); }
  const std::vector<Complex>& coeffs() const { return coef_; }
  Complex coeff(int i) const;

  Complex eval(Complex w) const;             // Horner
  Complex eval_derivative(Complex w) const;

  PolyW shifted_up(int powers) const;        // multiply by w^powers
  bool is_monic(double tol = 1e-12) const;

  // Largest imaginary residue relative to the coefficient magnitude sum;
  // coefficients of the tree polynomials are real up to rounding.
  double imag_residue() const;

  friend PolyW operator+(const PolyW& a, const PolyW& b);
  friend PolyW operator*(const PolyW& a, const PolyW& b);
  friend PolyW operator*(Complex scale, const PolyW& p);
  friend PolyW operator*(double scale, const PolyW& p);

 private:
  std::vector<Complex> coef_;
};

struct RootSolveError : NumericalError {
  RootSolveError(const std::string& message, std::vector<Complex> roots_in, std::vector<double> residuals_in)
      : NumericalError(message), roots(std::move(roots_in)), residuals(std::move(residuals_in)) {}

  std::vector<Complex> roots;
  std::vector<double> residuals;
};

// Normalized backward residual |p(root)| / (|lead| * max(1,|root|)^deg).
double root_residual(const PolyW& p, Complex root);

// All complex roots by Aberth simultaneous iteration. warm_start, when it has
// exactly degree entries, seeds the iteration (used for locus continuation).
// Throws RootSolveError when any normalized residual stays above 1e-10.
std::vector<Complex> poly_roots(const PolyW& p, std::span<const Complex> warm_start = {});

}
