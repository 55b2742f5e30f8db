#pragma once

#include <cmath>

#include "ortho/errors.hpp"

namespace ortho {

// Controls for the adaptive integrator.
struct QuadratureConfig {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  int max_depth = 48;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-6))
      throw DomainError("QuadratureConfig: rel_tol must be in (0, 1e-6]");
    if (!(abs_tol > 0.0 && abs_tol <= 1e-6))
      throw DomainError("QuadratureConfig: abs_tol must be in (0, 1e-6]");
    if (max_depth < 10) throw DomainError("QuadratureConfig: max_depth must be >= 10");
  }
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (symmetric half listed).
inline constexpr double kKronrodNode[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kKronrodWeight[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGaussWeight[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
struct GK15Result {
  double kronrod;
  double err;
};

template <class F>
GK15Result<F> gk15(const F& f, double lo, double hi) {
  const double h = 0.5 * (hi - lo);
  const double mid = 0.5 * (lo + hi);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(mid - h * kKronrodNode[i]);
    fv[14 - i] = f(mid + h * kKronrodNode[i]);
  }
  fv[7] = f(mid);
  double k = kKronrodWeight[7] * fv[7];
  double g = kGaussWeight[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    k += kKronrodWeight[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) g += kGaussWeight[i / 2] * (fv[i] + fv[14 - i]);
  }
  k *= h;
  g *= h;
  return {k, std::fabs(k - g)};
}

template <class F>
double integrate_rec(const F& f, double lo, double hi, double tol_abs, double rel_tol,
                     int depth, int max_depth, bool& ok) {
  auto r = gk15(f, lo, hi);
  if (r.err <= tol_abs || r.err <= rel_tol * std::fabs(r.kronrod)) return r.kronrod;
  if (depth >= max_depth) {
    ok = false;
    return r.kronrod;
  }
  const double mid = 0.5 * (lo + hi);
  return integrate_rec(f, lo, mid, 0.5 * tol_abs, rel_tol, depth + 1, max_depth, ok) +
         integrate_rec(f, mid, hi, 0.5 * tol_abs, rel_tol, depth + 1, max_depth, ok);
}

}  // namespace detail

// Adaptive Gauss-Kronrod over a finite interval.  Throws ConvergenceError if
// the tolerance is not met within max_depth bisection levels.
template <class F>
double integrate(const F& f, double lo, double hi, const QuadratureConfig& qc = {}) {
  qc.validate();
  if (lo == hi) return 0.0;
  bool ok = true;
  double v = detail::integrate_rec(f, lo, hi, qc.abs_tol, qc.rel_tol, 0, qc.max_depth, ok);
  if (!ok) throw ConvergenceError("integrate: tolerance not reached within max_depth");
  return v;
}

}  // namespace ortho
