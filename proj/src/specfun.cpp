#include "ortho/specfun.hpp"

#include <cmath>
#include <string>

namespace ortho {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kPiSq6 = kPi * kPi / 6.0;

// Li2 power series, valid for |x| <= 1/2 (geometric tail).
double dilog_series(double x, const EvalConfig& cfg) {
  double sum = 0.0;
  double p = x;
  for (int n = 1; n <= cfg.max_terms; ++n) {
    double term = p / (double(n) * n);
    sum += term;
    if (std::fabs(term) <= cfg.rel_tol * (std::fabs(sum) + 1e-300)) return sum;
    p *= x;
  }
  throw ConvergenceError("dilog: series did not converge within max_terms");
}

}  // namespace

double sphere_volume(int n) {
  if (n < 0) throw DomainError("sphere_volume: n must be >= 0");
  // Omega_n = 2 pi^{(n+1)/2} / Gamma((n+1)/2); lgamma keeps large n exact enough.
  const double half = 0.5 * (n + 1);
  return 2.0 * std::exp(half * std::log(kPi) - std::lgamma(half));
}

double ball_volume(int n, double r, const EvalConfig& cfg) {
  cfg.validate();
  if (n < 1) throw DomainError("ball_volume: n must be >= 1");
  if (r < 0.0) throw DomainError("ball_volume: r must be >= 0");
  if (r == 0.0) return 0.0;
  const double shh = std::sinh(0.5 * r);
  switch (n) {
    case 1: return 2.0 * r;
    case 2: return 4.0 * kPi * shh * shh;  // 2 pi (cosh r - 1), no cancellation
    case 3: return kPi * (std::sinh(2.0 * r) - 2.0 * r);
    default: break;
  }
  const int m = n - 1;
  double val;
  if (r < 0.5) {
    // The upward recurrence cancels like eps/r^2 per level; sum the power
    // series of sinh^m instead.  Ratio r^2 < 1/4 converges in ~30 terms.
    constexpr int kOrder = 34;
    double sinh_pow[kOrder] = {1.0};  // coefficients of sinh^m(t) / t^m in t^2
    {
      double base[kOrder];  // sinh(t)/t = sum t^{2i} / (2i+1)!
      double fact = 1.0;
      for (int i = 0; i < kOrder; ++i) {
        if (i > 0) fact *= (2.0 * i) * (2.0 * i + 1.0);
        base[i] = 1.0 / fact;
      }
      double acc[kOrder] = {1.0};
      for (int rep = 0; rep < m; ++rep) {
        double next[kOrder] = {0.0};
        for (int i = 0; i < kOrder; ++i)
          for (int j = 0; i + j < kOrder; ++j) next[i + j] += acc[i] * base[j];
        for (int i = 0; i < kOrder; ++i) acc[i] = next[i];
      }
      for (int i = 0; i < kOrder; ++i) sinh_pow[i] = acc[i];
    }
    const double r2 = r * r;
    double pw = std::pow(r, m + 1);
    val = 0.0;
    for (int i = 0; i < kOrder; ++i) {
      val += sinh_pow[i] * pw / (m + 2 * i + 1);
      pw *= r2;
    }
  } else {
    // I_k = (sinh^{k-1} r cosh r - (k-1) I_{k-2}) / k
    const double sh = std::sinh(r), ch = std::cosh(r);
    double even = r;               // I_0
    double odd = 2.0 * shh * shh;  // I_1 = cosh r - 1
    val = odd;
    for (int k = 2; k <= m; ++k) {
      double& lower = (k % 2 == 0) ? even : odd;
      lower = (std::pow(sh, k - 1) * ch - (k - 1) * lower) / k;
      val = lower;
    }
  }
  return sphere_volume(n - 1) * val;
}

double dilog(double x, const EvalConfig& cfg) {
  cfg.validate();
  if (x > 1.0) throw DomainError("dilog: real branch requires x <= 1");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return kPiSq6;
  if (std::fabs(x) <= 0.5) return dilog_series(x, cfg);
  if (x > 0.5) {
    // reflection: Li2(x) = pi^2/6 - log(x) log(1-x) - Li2(1-x)
    return kPiSq6 - std::log(x) * std::log1p(-x) - dilog(1.0 - x, cfg);
  }
  if (x >= -1.0) {
    // Landen: Li2(x) = -Li2(x/(x-1)) - (1/2) log^2(1-x), argument in (1/3, 1/2]
    const double l = std::log1p(-x);
    return -dilog(x / (x - 1.0), cfg) - 0.5 * l * l;
  }
  // inversion: Li2(x) = -Li2(1/x) - pi^2/6 - (1/2) log^2(-x), x < -1
  const double l = std::log(-x);
  return -dilog(1.0 / x, cfg) - kPiSq6 - 0.5 * l * l;
}

double re_dilog_inv(double y, const EvalConfig& cfg) {
  cfg.validate();
  if (!(y > 1.0)) throw DomainError("re_dilog_inv: requires y > 1");
  const double l = std::log(y);
  return -dilog(1.0 / y, cfg) - 0.5 * l * l + 2.0 * kPiSq6;
}

namespace {

// Re D(z) for the arguments h_x produces (all z <= coth(x/2)).
double re_dilog_any(double z, const EvalConfig& cfg) {
  return z <= 1.0 ? dilog(z, cfg) : re_dilog_inv(z, cfg);
}

}  // namespace

double h_x(double x, double r, const EvalConfig& cfg) {
  cfg.validate();
  if (!(x > 0.0)) throw DomainError("h_x: requires x > 0");
  const double c = 1.0 / std::tanh(0.5 * x);  // coth(x/2) > 1
  const double t = std::tanh(0.5 * x);
  const double rmax = std::log(c);
  if (!(r >= -1e-12 && r <= rmax * (1.0 + 1e-12) + 1e-12))
    throw DomainError("h_x: r outside [0, log coth(x/2)]");
  const double e = std::exp(-r);
  // e*c crosses 1 inside the domain; dispatch on the branch there.
  return dilog(-e * c, cfg) - re_dilog_any(e * c, cfg) + dilog(-e * t, cfg) -
         dilog(e * t, cfg);
}

double hyp2f1(double a, double b, double c, double z, const EvalConfig& cfg) {
  cfg.validate();
  if (c <= 0.0 && c == std::floor(c))
    throw DomainError("hyp2f1: c must not be a nonpositive integer");
  if (!(std::fabs(z) < 1.0)) throw DomainError("hyp2f1: requires |z| < 1");
  if (z == 0.0) return 1.0;
  double sum = 1.0;
  double term = 1.0;
  for (int n = 0; n < cfg.max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;  // a or b hit a nonpositive integer: polynomial case
    if (std::fabs(term) <= cfg.rel_tol * std::fabs(sum) && n >= 2) return sum;
  }
  throw ConvergenceError("hyp2f1: series did not converge within max_terms (a=" +
                         std::to_string(a) + ", z=" + std::to_string(z) + ")");
}

double inc_beta(double x, double a, double b, const EvalConfig& cfg) {
  cfg.validate();
  if (!(a > 0.0)) throw DomainError("inc_beta: requires a > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("inc_beta: requires x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) {
    if (!(b > 0.0)) throw DomainError("inc_beta: x = 1 requires b > 0");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  }
  if (x <= 0.5) return std::pow(x, a) / a * hyp2f1(a, 1.0 - b, a + 1.0, x, cfg);
  if (!(b > 0.0))
    throw DomainError("inc_beta: x > 1/2 uses the reflection, which requires b > 0");
  // B(x,a,b) = B(1,a,b) - B(1-x,b,a); the reflected argument lands in (0, 1/2)
  return inc_beta(1.0, a, b, cfg) - inc_beta(1.0 - x, b, a, cfg);
}

double harmonic(int n) {
  if (n < 0) throw DomainError("harmonic: n must be >= 0");
  double s = 0.0;
  for (int k = 1; k <= n; ++k) s += 1.0 / k;
  return s;
}

}  // namespace ortho
