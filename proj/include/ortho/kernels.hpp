#pragma once

#include "ortho/quadrature.hpp"
#include "ortho/specfun.hpp"

namespace ortho {

// The hitting-length kernel comes in two normalizations that differ by a
// factor 2: Geometric is the half-log form (the flow's true hitting length,
// from the Lambert-quadrilateral relation coth L = sech(r) coth(ell));
// FullLog is the full-log form used by the printed closed forms.
// Moments scale as F_half-log = 2^{-k} F_full-log for order k.
enum class LengthConvention { Geometric, FullLog };

struct KernelParams {
  int n = 2;                 // manifold dimension, >= 2
  int k = 0;                 // moment order, >= 0
  LengthConvention convention = LengthConvention::FullLog;

  void validate() const {
    if (n < 2) throw DomainError("KernelParams: n must be >= 2");
    if (k < 0) throw DomainError("KernelParams: k must be >= 0");
  }
};

// Spot radius around the foot of an orthogeodesic of length ell; satisfies
// sinh(spot_radius) * sinh(ell) = 1.
inline double spot_radius(double ell) {
  return std::log1p(2.0 / std::expm1(ell));  // log coth(ell/2), stable for large ell
}

// coth(x) - 1 without cancellation.
inline double coth_minus_one(double x) { return 2.0 / std::expm1(2.0 * x); }

// Hitting length at distance r from the core of the chimney over an
// orthogeodesic of length ell.  Diverges to +infinity at r = spot_radius(ell).
double length_kernel(double r, double ell, LengthConvention convention);

// F_{n,k}(x) = Omega_{n-2} * integral_0^{log coth(x/2)} kernel^k sinh^{n-2}(r) dr
// by singularity-aware quadrature (u = cosh r, with the endpoint log^k blow-up
// flattened by u = coth x - e^{-s}).
double fnk_quadrature(const KernelParams& params, double x,
                      const QuadratureConfig& qc = {});

// Closed form for F_{2,1} (FullLog):
//   2 [ Li2(-tanh^2(x/2)) - Li2(tanh^2(x/2)) + pi^2/4 ].
double f21_closed(double x);

// f_m(x) for even m: the antiderivative combination
//   (2 coth^{m+1} x / (m+1)) [ log(2 cosh x) - x tanh^{m+1} x
//                              + sum_{k=1}^{m/2} (1 - tanh^{2k} x)/(2k) ].
double fm_closed(int m, double x);

// Closed form for F_{n,1} in odd dimension n >= 3 (FullLog):
//   Omega_{n-2} sum_j (-1)^{(n-3)/2-j} C((n-3)/2, j) f_{2j}(x).
double fn1_odd_closed(int n, double x);

// Large-x decay law  F_{n,k}(x) ~ C_{n,k} x^k e^{-(n-1)x}  with
// C_{n,k} = 2^{n+k-1} Omega_{n-2} / (n-1).  FullLog normalization.
double fnk_asymptotic(const KernelParams& params, double x);

// Empirical small-x limit of x^{n-2} F_{n,1}(x) for odd n, by Richardson
// extrapolation over x in {1e-2, 1e-3, 1e-4}, reported next to the claimed
// constant (2/(n-2)) [log 2 + H_{(n-1)/2}/2]; the two are not forced to agree.
struct SmallXConstant {
  double empirical;
  double claimed;
  double spread;  // |difference of successive Richardson estimates|
};
SmallXConstant small_x_constant(int n, const QuadratureConfig& qc = {});

// Per-length contribution to the dimension-3 moment generating function
// (FullLog; before division by V(S)):
//   4 pi coth(ell) B((1 - tanh ell)/2, 1-t, 1+t),  t < 1.
double mgf_term(double ell, double t, const EvalConfig& cfg = {});

// Antiderivative of ((a+u)/(a-u))^t in u:
//   g(u,a,t) = (1+t)^{-1} (a+u)^{t+1} (2a)^{-t} 2F1(1+t, t, 2+t, (a+u)/(2a)).
double g_antiderivative(double u, double a, double t, const EvalConfig& cfg = {});

}  // namespace ortho
