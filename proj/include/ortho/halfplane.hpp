#pragma once

#include <cmath>
#include <limits>

#include "ortho/errors.hpp"

namespace ortho {

inline constexpr double kIdealInfinity = std::numeric_limits<double>::infinity();

// Real 2x2 matrix; isometries carry unit determinant up to sign.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  // Compensated a*d - b*c (Kahan); plain evaluation loses everything once the
  // entries reach e^{length/2} scales.
  double det() const {
    const double w = b * c;
    return std::fma(a, d, -w) + std::fma(-b, c, w);
  }
  double trace() const { return a + d; }
  Mat2 inverse() const { return {d, -b, -c, a}; }  // valid for det = 1
  Mat2 scaled(double s) const { return {a * s, b * s, c * s, d * s}; }
};

// Orientation-preserving isometry of the upper half-plane, as an SL(2,R)
// matrix identified up to global sign.
struct Isometry {
  Mat2 m;

  static Isometry identity() { return {}; }

  // Renormalize the determinant to 1 (drift accumulates over long words).
  Isometry normalized() const {
    const double dt = m.det();
    if (!(dt > 0.0)) throw DomainError("Isometry: determinant must be positive");
    return {m.scaled(1.0 / std::sqrt(dt))};
  }

  bool is_hyperbolic() const { return std::fabs(m.trace()) > 2.0; }

  // Translation length along the axis (hyperbolic elements).
  double translation_length() const {
    const double t = 0.5 * std::fabs(m.trace());
    if (!(t > 1.0)) throw DomainError("Isometry: not hyperbolic");
    return 2.0 * std::acosh(t);
  }

  // Moebius action on the extended real line.
  double apply(double x) const {
    if (std::isinf(x)) return m.c == 0.0 ? kIdealInfinity : m.a / m.c;
    const double den = m.c * x + m.d;
    if (den == 0.0) return kIdealInfinity;
    return (m.a * x + m.b) / den;
  }

  friend Isometry operator*(const Isometry& x, const Isometry& y) { return {x.m * y.m}; }
  Isometry inverse() const { return {m.inverse()}; }
};

// Oriented geodesic of the upper half-plane.  Stored both as its ordered
// ideal endpoints and as a unit spacelike vector of the Minkowski model
// (a traceless matrix X with <X,X> = tr(X^2)/2 = 1); the latter makes
// distances and group translates numerically stable.
struct Geodesic {
  double p = 0.0;                // first endpoint (may be +-infinity)
  double q = kIdealInfinity;     // second endpoint
  Mat2 x;                        // unit spacelike axis vector

  // The axis vector is oriented so that the flow e^{tau X} translates from p
  // toward q.
  static Geodesic from_endpoints(double p, double q) {
    if (p == q) throw DomainError("Geodesic: endpoints must be distinct");
    Geodesic g;
    g.p = p;
    g.q = q;
    if (std::isinf(q)) {
      g.x = {1.0, -2.0 * p, 0.0, -1.0};
    } else if (std::isinf(p)) {
      g.x = {-1.0, 2.0 * q, 0.0, 1.0};
    } else {
      const double s = 1.0 / (q - p);
      g.x = {(p + q) * s, -2.0 * p * q * s, 2.0 * s, -(p + q) * s};
    }
    return g;
  }

  // Axis of a hyperbolic isometry, oriented from the repelling to the
  // attracting fixed point.
  static Geodesic axis_of(const Isometry& g);

  // Image under an isometry; endpoints by Moebius action, the axis vector by
  // conjugation (exact in exact arithmetic, so no renormalization).
  Geodesic transported(const Isometry& t) const {
    Geodesic g;
    g.p = t.apply(p);
    g.q = t.apply(q);
    g.x = t.m * x * t.m.inverse();
    return g;
  }

  Geodesic reversed() const {
    Geodesic g;
    g.p = q;
    g.q = p;
    g.x = x.scaled(-1.0);
    return g;
  }

  // Canonical form for equality testing: smaller endpoint first when both
  // finite; an infinite endpoint goes last.
  Geodesic canonical() const {
    if (std::isinf(p)) return reversed();
    if (!std::isinf(q) && q < p) return reversed();
    return *this;
  }
};

// Minkowski inner product of two axis vectors, <X,Y> = tr(XY)/2.
inline double axis_inner(const Geodesic& g1, const Geodesic& g2) {
  const Mat2 &x = g1.x, &y = g2.x;
  return 0.5 * (x.a * y.a + x.b * y.c + x.c * y.b + x.d * y.d);
}

// Distance along the common perpendicular of two disjoint geodesics.
// |<X,Y>| < 1 means they cross, = 1 asymptotic; both are rejected.
double axis_distance(const Geodesic& g1, const Geodesic& g2);

// Hyperbolic distance between interior points (x1, y1), (x2, y2), y > 0.
inline double point_distance(double x1, double y1, double x2, double y2) {
  const double dx = x1 - x2, dy = y1 - y2;
  return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * y1 * y2));
}

}  // namespace ortho
