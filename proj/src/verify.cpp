#include "ortho/verify.hpp"

#include <cmath>

#include "ortho/kernels.hpp"
#include "ortho/moments.hpp"
#include "ortho/montecarlo.hpp"
#include "ortho/quadrature.hpp"
#include "ortho/specfun.hpp"
#include "ortho/spectrum.hpp"

namespace ortho {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

struct Harness {
  std::vector<CheckResult> results;
  double scale;

  void record(const std::string& name, double tol, double achieved,
              const std::string& note = "") {
    results.push_back({name, tol * scale, achieved, achieved <= tol * scale, note});
  }
  void record_flag(const std::string& name, bool ok, const std::string& note = "") {
    // boolean checks: "achieved" is 0/1 against tolerance 1/2
    results.push_back({name, 0.5 * scale, ok ? 0.0 : 1.0, ok && scale > 0.0, note});
  }
};

double rnd(uint64_t& st, double lo, double hi) { return lo + (hi - lo) * uniform01(st); }

void check_hx_slope(Harness& h, uint64_t seed) {
  uint64_t st = seed;
  double worst = 0.0;
  const double fd = 1e-5;
  for (int i = 0; i < 20; ++i) {
    const double x = rnd(st, 0.2, 2.5);
    const double rmax = spot_radius(x);
    const double r = rnd(st, 0.05 * rmax, 0.95 * rmax);
    const double hi = h_x(x, std::min(r + fd, rmax));
    const double lo = h_x(x, r - fd);
    const double slope = (hi - lo) / (std::min(r + fd, rmax) - (r - fd));
    const double target =
        std::log((1.0 / std::tanh(x) + std::cosh(r)) / (1.0 / std::tanh(x) - std::cosh(r)));
    worst = std::max(worst, std::fabs(slope - target));
  }
  h.record("H_x slope: finite differences vs the log-ratio derivative (20 pts)", 1e-6,
           worst);
}

void check_2f1_slope(Harness& h, uint64_t seed) {
  uint64_t st = seed + 1;
  double worst = 0.0;
  const double fd = 1e-5;
  for (int i = 0; i < 20; ++i) {
    const double t = rnd(st, -0.8, 0.8);
    const double x = rnd(st, 0.05, 0.6);
    const double up = hyp2f1(1 + t, t, 2 + t, x + fd);
    const double dn = hyp2f1(1 + t, t, 2 + t, x - fd);
    const double slope = (up - dn) / (2 * fd);
    const double target =
        (1 + t) / x * (std::pow(1 - x, -t) - hyp2f1(1 + t, t, 2 + t, x));
    worst = std::max(worst, std::fabs(slope - target));
  }
  h.record("2F1(1+t,t,2+t,x): d/dx by differences vs closed recurrence (20 pts)", 1e-6,
           worst);
}

void check_inc_beta_grid(Harness& h) {
  const double xs[3] = {0.125, 0.25, 0.5};
  const double as[3] = {0.6, 1.0, 1.4};
  const double bs[3] = {0.6, 1.0, 1.4};
  double worst = 0.0;
  for (double x : xs)
    for (double a : as)
      for (double b : bs) {
        const double series = inc_beta(x, a, b);
        // s = x t^{1/a} absorbs the s^{a-1} endpoint power exactly:
        // B(x,a,b) = (x^a/a) int_0^1 (1 - x t^{1/a})^{b-1} dt
        auto flat = [&](double t) {
          return std::pow(1.0 - x * std::pow(t, 1.0 / a), b - 1.0);
        };
        const double direct = std::pow(x, a) / a * integrate(flat, 0.0, 1.0);
        worst = std::max(worst, std::fabs(series - direct));
      }
  h.record("incomplete beta: 2F1 series route vs direct quadrature (27-point grid)",
           1e-9, worst);
}

void check_surface_closed_form(Harness& h) {
  double worst = 0.0;
  for (double x : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double closed = f21_closed(x);
    const double quad = fnk_quadrature({2, 1, LengthConvention::FullLog}, x);
    worst = std::max(worst, std::fabs(closed - quad) / closed);
  }
  h.record("F_{2,1}: dilogarithm closed form vs quadrature (rel)", 1e-8, worst);
}

void check_odd_closed_form(Harness& h) {
  double worst = 0.0;
  for (int n : {3, 5, 7})
    for (double x : {0.5, 1.0, 2.0}) {
      const double closed = fn1_odd_closed(n, x);
      const double quad = fnk_quadrature({n, 1, LengthConvention::FullLog}, x);
      worst = std::max(worst, std::fabs(closed - quad) / closed);
    }
  h.record("odd-dimension F_{n,1}: closed form vs quadrature (rel)", 1e-7, worst);
}

void check_asymptotics(Harness& h) {
  double worst_dev = 0.0;
  bool improves = true;
  for (auto [n, k] : {std::pair{2, 1}, {3, 1}, {3, 2}, {5, 1}}) {
    const KernelParams kp{n, k, LengthConvention::FullLog};
    const double r6 = fnk_quadrature(kp, 6.0) / fnk_asymptotic(kp, 6.0);
    const double r12 = fnk_quadrature(kp, 12.0) / fnk_asymptotic(kp, 12.0);
    worst_dev = std::max(worst_dev, std::fabs(r12 - 1.0));
    if (std::fabs(r12 - 1.0) >= std::fabs(r6 - 1.0)) improves = false;
  }
  h.record("decay law: |F / (C x^k e^{-(n-1)x}) - 1| at x = 12", 0.2, worst_dev,
           "a growing-exponent form of this limit is sometimes quoted; it "
           "contradicts F -> 0 and F_{2,1} ~ 8x e^{-x}, so the toolkit "
           "implements the decaying form");
  h.record_flag("decay law: ratio closer to 1 at x = 12 than at x = 6", improves);
}

OrthoSpectrum synthetic_dim3() {
  OrthoSpectrum s;
  s.dimension = 3;
  s.synthetic = true;
  s.lengths = {1.0, 1.5, 2.0};
  double v = 0.0;
  for (double l : s.lengths) v += 2.0 * kPi * (1.0 / std::tanh(l) - 1.0);
  s.boundary_volume = v;
  return s;
}

void check_mgf_internals(Harness& h) {
  double worst = 0.0;
  for (double l : {0.5, 1.0, 2.0}) {
    const double closed = 2.0 * kPi * (1.0 / std::tanh(l) - 1.0);
    worst = std::max(worst, std::fabs(mgf_term(l, 0.0) - closed));
  }
  h.record("mgf term at t = 0 equals the spot area 2 pi (coth l - 1)", 1e-12, worst);

  const OrthoSpectrum s = synthetic_dim3();
  h.record("mgf at 0 is 1 on a normalized synthetic spectrum", 1e-10,
           std::fabs(mgf(s, 0.0) - 1.0));

  // d/dt M at 0 against the quadrature moment, same spectrum
  const double hstep = 1e-4;
  const double deriv = (mgf(s, hstep) - mgf(s, -hstep)) / (2.0 * hstep);
  const double direct =
      moment(s, 1, LengthConvention::FullLog, MomentMethod::Quadrature).value;
  h.record("mgf slope at 0 vs the quadrature moment A_1", 1e-5,
           std::fabs(deriv - direct));
}

void check_basmajian_convergence(Harness& h) {
  const PantsParams p{2.0, 2.0, 2.0};
  const PantsGroup g = pants_group(p);
  const auto entries = enumerate_orthogeodesics(g, 12.0, 12);
  auto partial = [&](double cutoff) {
    double s = 0.0;
    for (const auto& e : entries)
      if (e.length <= cutoff) s += 2.0 * spot_radius(e.length);
    return s;
  };
  const double s6 = partial(6.0), s8 = partial(8.0), s10 = partial(10.0),
               s12 = partial(12.0);
  const bool increasing = s6 < s8 && s8 < s10 && s10 < s12;
  const bool bounded = s12 < 6.0;
  const bool gaps_shrink = (6.0 - s8) < (6.0 - s6) && (6.0 - s10) < (6.0 - s8) &&
                           (6.0 - s12) < (6.0 - s10);
  h.record_flag("basmajian partial sums increasing and below the perimeter",
                increasing && bounded);
  h.record("basmajian gap at cutoff 12 (fraction of perimeter)", 0.05,
           (6.0 - s12) / 6.0);
  h.record_flag("basmajian gap shrinks from cutoff c to c+2", gaps_shrink);
}

void check_mc_arbitration(Harness& h) {
  const PantsParams p{2.0, 2.0, 2.0};
  const OrthoSpectrum s = enumerate_stable(p, 12.0);
  // Spot-censored sampling keeps exactly the spots of the cutoff-12 spectrum,
  // so the sample mean estimates the truncation-normalized moment.
  const double a1_geo =
      moment(s, 1, LengthConvention::Geometric, MomentMethod::Quadrature, {}, true).value;
  RayTraceConfig cfg;
  cfg.max_length = 40.0;
  cfg.spot_cutoff = 12.0;
  cfg.unfold_depth = 10;
  cfg.seed = 77;
  const auto reports = empirical_moments(p, 1, 1000000, cfg);
  const auto& r = reports[1];
  h.record("monte carlo censored fraction", 0.01, r.censored_fraction);
  h.record("monte carlo mean vs Geometric A_1 (stderr units)", 4.0,
           std::fabs(r.mean - a1_geo) / r.stderr_mean,
           "flow realizes the Geometric (half-log) convention of the length kernel");
  const double sep = std::fabs(r.mean - 2.0 * a1_geo) / r.stderr_mean;
  h.record_flag("monte carlo mean >10 stderr away from FullLog A_1", sep > 10.0,
                "FullLog = 2x Geometric is rejected by " +
                    std::to_string(sep) + " stderr");
}

}  // namespace

std::vector<CheckResult> verify_checks(bool full, double tol_scale, uint64_t seed) {
  Harness h;
  h.scale = tol_scale;
  check_hx_slope(h, seed);
  check_2f1_slope(h, seed);
  check_inc_beta_grid(h);
  check_surface_closed_form(h);
  check_odd_closed_form(h);
  check_asymptotics(h);
  check_mgf_internals(h);
  if (full) {
    check_basmajian_convergence(h);
    check_mc_arbitration(h);
  }
  return h.results;
}

}  // namespace ortho
