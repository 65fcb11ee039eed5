#include "fractree/half_order.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fractree {

namespace {

constexpr double kCoeffImagWarn = 1e-9;

void check_child(const PolyPair& child) {
  if (child.num.degree() != child.den.degree()) {
    throw InputError("half_order: child numerator/denominator degrees differ");
  }
  if (!child.num.is_monic(1e-9) || !child.den.is_monic(1e-9)) {
    throw InputError("half_order: child polynomials must be monic");
  }
}

std::vector<Complex> negated(std::span<const Complex> values) {
  std::vector<Complex> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = -values[i];
  return out;
}

}

void validate(const HalfOrderRational& rat, double rel_tol) {
  const std::size_t expected = 2 * static_cast<std::size_t>(rat.generation);
  if (rat.generation < 1 || rat.zeros.size() != expected || rat.poles.size() != expected) {
    throw NumericalError("half_order: root count does not match 2*generation");
  }
  for (const auto* side : {&rat.zeros, &rat.poles}) {
    for (const Complex& root : *side) {
      const double tol = 1e-8 * std::max(1.0, std::abs(root));
      double best = std::numeric_limits<double>::infinity();
      for (const Complex& other : *side) {
        best = std::min(best, std::abs(std::conj(root) - other));
      }
      if (best > tol) {
        throw NumericalError("half_order: root set is not closed under conjugation");
      }
    }
  }
  Complex zp(1.0), pp(1.0);
  for (const Complex& z : rat.zeros) zp *= z;
  for (const Complex& p : rat.poles) pp *= p;
  if (std::abs(zp - pp) > rel_tol * std::abs(pp)) {
    throw NumericalError("half_order: unit DC gain violated (root products differ)");
  }
}

Complex undamaged_response(const TreeParams& params, Complex s) {
  validate(params);
  if (s == Complex(0.0)) {
    throw InputError("half_order: undamaged response is unbounded at s = 0");
  }
  return params.c() / std::sqrt(s);
}

PolyPair base_delta_polys(ComponentKind kind, double eps, const TreeParams& params) {
  validate(params);
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw InputError("half_order: damage amount eps must lie strictly in (0,1)");
  }
  const double r = params.r();
  if (kind == ComponentKind::spring) {
    return {PolyW({Complex(eps * r * r), Complex((1.0 + eps) * r), Complex(1.0)}),
            PolyW({Complex(eps * r * r), Complex(2.0 * eps * r), Complex(1.0)})};
  }
  return {PolyW({Complex(r * r / eps), Complex((1.0 + 1.0 / eps) * r), Complex(1.0)}),
          PolyW({Complex(r * r / eps), Complex(2.0 * r), Complex(1.0)})};
}

HalfOrderRational base_delta(ComponentKind kind, double eps, const TreeParams& params) {
  validate(params);
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw InputError("half_order: damage amount eps must lie strictly in (0,1)");
  }
  const double r = params.r();
  HalfOrderRational rat;
  rat.generation = 1;
  if (kind == ComponentKind::spring) {
    rat.zeros = {Complex(eps * r), Complex(r)};
    const double im = r * std::sqrt(eps - eps * eps);
    rat.poles = {Complex(eps * r, -im), Complex(eps * r, im)};
  } else {
    rat.zeros = {Complex(r), Complex(r / eps)};
    const double im = r * std::sqrt(1.0 / eps - 1.0);
    rat.poles = {Complex(r, -im), Complex(r, im)};
  }
  sort_canonical(rat.zeros);
  sort_canonical(rat.poles);
  return rat;
}

PolyPair wrap_upper(const PolyPair& child, const TreeParams& params) {
  validate(params);
  check_child(child);
  const double r = params.r();
  const PolyW common = r * (child.num + child.den).shifted_up(1);
  const PolyW top = child.den.shifted_up(2);
  return {top + common + (r * r) * child.num, top + common + (r * r) * child.den};
}

PolyPair wrap_lower(const PolyPair& child, const TreeParams& params) {
  validate(params);
  check_child(child);
  const double r = params.r();
  const PolyW common = r * (child.num + child.den).shifted_up(1);
  return {child.num.shifted_up(2) + common + (r * r) * child.den,
          child.den.shifted_up(2) + common + (r * r) * child.den};
}

HalfOrderRational delta_for_case(const DamageCase& dc, const TreeParams& params) {
  return delta_for_case(dc, params, {}, {});
}

HalfOrderRational delta_for_case(const DamageCase& dc, const TreeParams& params,
                                 std::span<const Complex> zero_hints, std::span<const Complex> pole_hints) {
  validate(dc);
  PolyPair nd = base_delta_polys(dc.component.kind, dc.eps, params);
  for (Branch branch : branch_path(dc.component)) {
    nd = branch == Branch::upper ? wrap_upper(nd, params) : wrap_lower(nd, params);
  }
  if (nd.num.imag_residue() > kCoeffImagWarn || nd.den.imag_residue() > kCoeffImagWarn) {
    std::fprintf(stderr, "fractree: warning: complex residue in tree polynomial coefficients (%s)\n",
                 to_string(dc.component).c_str());
  }

  HalfOrderRational rat;
  rat.generation = dc.component.generation;
  // Polynomial roots are the negatives of the stored z_j / p_j.
  rat.zeros = negated(poly_roots(nd.num, negated(zero_hints)));
  rat.poles = negated(poly_roots(nd.den, negated(pole_hints)));
  enforce_conjugate_closure(rat.zeros);
  enforce_conjugate_closure(rat.poles);
  if (zero_hints.empty()) sort_canonical(rat.zeros);
  if (pole_hints.empty()) sort_canonical(rat.poles);
  validate(rat);
  return rat;
}

Complex evaluate_w(const HalfOrderRational& rat, Complex w) {
  Complex num(1.0), den(1.0);
  for (const Complex& z : rat.zeros) num *= w + z;
  for (const Complex& p : rat.poles) den *= w + p;
  if (den == Complex(0.0)) {
    const double inf = std::numeric_limits<double>::infinity();
    return Complex(inf, inf);
  }
  return num / den;
}

Complex evaluate(const HalfOrderRational& rat, Complex s) { return evaluate_w(rat, std::sqrt(s)); }

void enforce_conjugate_closure(std::vector<Complex>& roots) {
  for (Complex& root : roots) {
    if (std::abs(root.imag()) <= 1e-10 * std::max(1.0, std::abs(root))) {
      root = Complex(root.real(), 0.0);
    }
  }
  std::vector<std::size_t> upper, lower;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].imag() > 0.0) upper.push_back(i);
    else if (roots[i].imag() < 0.0) lower.push_back(i);
  }
  std::vector<bool> used(lower.size(), false);
  for (std::size_t ui : upper) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = lower.size();
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(roots[ui] - std::conj(roots[lower[j]]));
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    if (pick < lower.size() && best <= 1e-6 * std::max(1.0, std::abs(roots[ui]))) {
      used[pick] = true;
      const Complex mean = 0.5 * (roots[ui] + std::conj(roots[lower[pick]]));
      roots[ui] = mean;
      roots[lower[pick]] = std::conj(mean);
    }
  }
}

void sort_canonical(std::vector<Complex>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

}
