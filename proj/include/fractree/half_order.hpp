#pragma once

#include <span>
#include <vector>

#include "fractree/complex.hpp"
#include "fractree/poly.hpp"
#include "fractree/tree.hpp"

namespace fractree {

// Monic/monic ratio of degree-2g polynomials in w = s^(1/2), stored through
// its roots: numerator factors (w + z_j), denominator factors (w + p_j).
// The half-order zeros/poles of the response sit at w = -z_j / w = -p_j.
struct HalfOrderRational {
  std::vector<Complex> zeros;
  std::vector<Complex> poles;
  int generation = 0;
};

// Checks the type invariants: 2g entries per side, closure of each side under
// conjugation, and product(z) == product(p) within rel_tol (unit DC gain).
void validate(const HalfOrderRational& rat, double rel_tol = 1e-9);

// Compliance of the undamaged tree, c/sqrt(s) on the principal branch.
Complex undamaged_response(const TreeParams& params, Complex s);

// Generation-1 damage responses in closed form.
HalfOrderRational base_delta(ComponentKind kind, double eps, const TreeParams& params);

struct PolyPair {
  PolyW num;
  PolyW den;
};

// Closed-form numerator/denominator polynomials behind base_delta; exact real
// coefficients (built from coefficients, not root products).
PolyPair base_delta_polys(ComponentKind kind, double eps, const TreeParams& params);

// One self-similarity step: the child response moves one generation deeper,
// entering through the spring branch (upper) or the damper branch (lower).
// Child num/den must be monic and of equal degree.
PolyPair wrap_upper(const PolyPair& child, const TreeParams& params);
PolyPair wrap_lower(const PolyPair& child, const TreeParams& params);

// Full forward model: numerator/denominator polynomials by recursive wrapping
// along the branch path, then one root extraction. Root order is canonical
// (sorted) unless warm-start hints are supplied, in which case the solver is
// seeded with them (hints use the same sign convention as the result).
HalfOrderRational delta_for_case(const DamageCase& dc, const TreeParams& params);
HalfOrderRational delta_for_case(const DamageCase& dc, const TreeParams& params,
                                 std::span<const Complex> zero_hints, std::span<const Complex> pole_hints);

// Evaluate at s (w = principal sqrt) or directly at w. Evaluation exactly on
// a pole yields an infinite value rather than a crash.
Complex evaluate(const HalfOrderRational& rat, Complex s);
Complex evaluate_w(const HalfOrderRational& rat, Complex w);

// Snap conjugate pairs (and nearly-real roots) of a real-coefficient root set
// to exact closure; leaves genuinely separated roots untouched.
void enforce_conjugate_closure(std::vector<Complex>& roots);

// Deterministic ordering by (real, imag).
void sort_canonical(std::vector<Complex>& roots);

}
