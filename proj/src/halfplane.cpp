#include "ortho/halfplane.hpp"

namespace ortho {

Geodesic Geodesic::axis_of(const Isometry& g) {
  if (!g.is_hyperbolic()) throw DomainError("axis_of: isometry is not hyperbolic");
  // Normalize the sign so the trace is positive; fixed points solve
  // c x^2 + (d - a) x - b = 0.
  Mat2 m = g.m.trace() < 0.0 ? g.m.scaled(-1.0) : g.m;
  double rep, att;
  if (std::fabs(m.c) < 1e-300) {
    // One fixed point at infinity; the finite one is b/(d-a).
    const double finite = m.b / (m.d - m.a);
    if (m.a > m.d) {  // z -> (a/d) z + ..., |a/d| > 1: infinity attracts
      rep = finite;
      att = kIdealInfinity;
    } else {
      rep = kIdealInfinity;
      att = finite;
    }
  } else {
    const double disc = (m.a - m.d) * (m.a - m.d) + 4.0 * m.b * m.c;
    const double s = std::sqrt(disc);
    const double x1 = (m.a - m.d + s) / (2.0 * m.c);
    const double x2 = (m.a - m.d - s) / (2.0 * m.c);
    // attracting where |derivative| = 1/(c x + d)^2 < 1
    if (std::fabs(m.c * x1 + m.d) > 1.0) {
      att = x1;
      rep = x2;
    } else {
      att = x2;
      rep = x1;
    }
  }
  return Geodesic::from_endpoints(rep, att);
}

double axis_distance(const Geodesic& g1, const Geodesic& g2) {
  const double ip = std::fabs(axis_inner(g1, g2));
  if (ip <= 1.0 + 1e-13)
    throw DomainError("axis_distance: geodesics cross or are asymptotic");
  return std::acosh(ip);
}

}  // namespace ortho
