#pragma once

#include "ortho/errors.hpp"

namespace ortho {

// Tolerances for series evaluation.
struct EvalConfig {
  double rel_tol = 1e-13;
  int max_terms = 4096;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-6))
      throw DomainError("EvalConfig: rel_tol must be in (0, 1e-6]");
    if (max_terms < 64) throw DomainError("EvalConfig: max_terms must be >= 64");
  }
};

// Volume of the unit n-sphere, Omega_n = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
// Omega_0 = 2, Omega_1 = 2 pi, Omega_2 = 4 pi.
double sphere_volume(int n);

// Volume of the hyperbolic n-ball of radius r,
//   V_n(r) = Omega_{n-1} * integral_0^r sinh^{n-1}(t) dt,
// by the sinh-power recurrence (exact; no quadrature).
double ball_volume(int n, double r, const EvalConfig& cfg = {});

// Real dilogarithm Li2(x) for x <= 1.  Series for |x| <= 1/2; reflection,
// Landen and inversion identities move other arguments into that disc.
double dilog(double x, const EvalConfig& cfg = {});

// Real part of the branch-shifted dilogarithm at y > 1:
//   Re D(y) = -Li2(1/y) - (1/2) log^2 y + pi^2/3,
// from the inversion identity with log(-y) = log y + i pi.
double re_dilog_inv(double y, const EvalConfig& cfg = {});

// Re H_x(r) for r in [0, log coth(x/2)]: the four-term dilogarithm
// combination whose r-derivative is log((coth x + cosh r)/(coth x - cosh r)).
double h_x(double x, double r, const EvalConfig& cfg = {});

// Gauss hypergeometric 2F1(a, b; c; z) by its power series, |z| < 1.
double hyp2f1(double a, double b, double c, double z, const EvalConfig& cfg = {});

// Incomplete beta function B(x, a, b) = integral_0^x s^{a-1} (1-s)^{b-1} ds.
// For x <= 1/2 evaluated as (x^a/a) 2F1(a, 1-b, a+1, x); for x > 1/2 via the
// reflection B(x,a,b) = B(1,a,b) - B(1-x,b,a), which needs b > 0.
double inc_beta(double x, double a, double b, const EvalConfig& cfg = {});

// n-th harmonic number, H_0 = 0.
double harmonic(int n);

}  // namespace ortho
