#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ortho/kernels.hpp"
#include "ortho/moments.hpp"
#include "ortho/montecarlo.hpp"

using namespace ortho;

namespace {

RayTraceConfig quick_cfg(uint64_t seed = 11) {
  RayTraceConfig cfg;
  cfg.max_length = 10.0;
  cfg.unfold_depth = 8;
  cfg.seed = seed;
  return cfg;
}

double hexagon_seam(double li, double lj, double lk) {
  return std::acosh((std::cosh(lk / 2) + std::cosh(li / 2) * std::cosh(lj / 2)) /
                    (std::sinh(li / 2) * std::sinh(lj / 2)));
}

}  // namespace

TEST_CASE("boundary sampler statistics") {
  const PantsParams p{1.5, 2.0, 2.5};
  SUBCASE("component frequencies within 4 binomial stderr") {
    uint64_t st = 123;
    const int n = 100000;
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) ++counts[sample_boundary_point(p, st).component];
    const double total = p.perimeter();
    const double probs[3] = {p.l1 / total, p.l2 / total, p.l3 / total};
    for (int c = 0; c < 3; ++c) {
      const double se = std::sqrt(probs[c] * (1 - probs[c]) * n);
      CHECK(std::fabs(counts[c] - probs[c] * n) < 4.0 * se);
    }
  }
  SUBCASE("positions pass a KS uniformity check at the 1e-3 level") {
    uint64_t st = 321;
    std::vector<double> u;
    while (u.size() < 20000) {
      const BoundarySample s = sample_boundary_point(p, st);
      if (s.component == 1) u.push_back(s.position / p.l2);
    }
    const double d = oracle::ks_statistic(u);
    CHECK(d < 1.949 / std::sqrt(double(u.size())));  // K-S critical value at alpha = 1e-3
  }
  SUBCASE("identical seed gives an identical stream") {
    uint64_t s1 = 999, s2 = 999;
    for (int i = 0; i < 100; ++i) {
      const auto a = sample_boundary_point(p, s1);
      const auto b = sample_boundary_point(p, s2);
      CHECK(a.component == b.component);
      CHECK(a.position == b.position);
    }
  }
}

TEST_CASE("normal rays from seam feet reproduce the orthogeodesics") {
  const PantsParams p{2.0, 2.0, 2.0};
  const PantsGroup g = pants_group(p);
  const RayTracer tracer(g, quick_cfg());
  const double seam = hexagon_seam(2, 2, 2);

  SUBCASE("ray from the foot of the seam has the seam length") {
    for (int from = 0; from < 3; ++from)
      for (int to = 0; to < 3; ++to) {
        if (from == to) continue;
        const double foot = tracer.foot_of_seam(from, to);
        const auto r = tracer.trace({from, foot});
        REQUIRE(!r.censored);
        CHECK(std::fabs(r.length - seam) < 1e-8);
      }
  }
  SUBCASE("offset within the spot follows the length kernel (geometric)") {
    const double foot = tracer.foot_of_seam(0, 1);
    const double rmax = spot_radius(seam);
    for (double frac : {0.1, 0.4, 0.7, 0.95}) {
      const double off = frac * rmax;
      const auto r = tracer.trace({0, foot + off});
      REQUIRE(!r.censored);
      CHECK(std::fabs(r.length - length_kernel(off, seam, LengthConvention::Geometric)) <
            1e-6);
      // FullLog would be twice as long; the flow realizes the half-log form
      CHECK(std::fabs(r.length - length_kernel(off, seam, LengthConvention::FullLog)) >
            0.1);
    }
  }
  SUBCASE("trace is invariant under conjugating the whole configuration") {
    // Anchor positions geometrically: offset from the (0,1)-seam foot in the
    // direction of the nearest (0,2)-seam foot.  The frame normalization of a
    // conjugated group may place the arclength origin elsewhere or reverse
    // the axis direction; the anchored position is the same surface point.
    auto anchored = [](const RayTracer& tr, double off) {
      const double f1 = tr.foot_of_seam(0, 1);
      const double f2 = tr.foot_of_seam(0, 2);
      const double len = tr.boundary_length(0);
      double d = f2 - f1;
      d -= len * std::round(d / len);
      double s = f1 + (d >= 0 ? off : -off);
      s -= len * std::floor(s / len);
      return tr.trace({0, s});
    };
    uint64_t st = 17;
    for (int trial = 0; trial < 3; ++trial) {
      const double a = std::exp(uniform01(st) - 0.5);
      const double b = uniform01(st) - 0.5;
      const double c = uniform01(st) - 0.5;
      const Isometry t = Isometry{Mat2{a, b, 0.0, 1.0 / a} * Mat2{1.0, 0.0, c, 1.0}}.normalized();
      PantsGroup conj = g;
      for (int i = 0; i < 3; ++i) {
        conj.gen[i] = t * g.gen[i] * t.inverse();
        conj.axis[i] = Geodesic::axis_of(conj.gen[i]);
      }
      const RayTracer tracer2(conj, quick_cfg());
      for (double off : {0.0, 0.2, 0.35, 0.8}) {
        const auto r1 = anchored(tracer, off);
        const auto r2 = anchored(tracer2, off);
        REQUIRE(!r1.censored);
        REQUIRE(!r2.censored);
        CHECK(std::fabs(r1.length - r2.length) < 1e-9);
      }
    }
  }
  SUBCASE("one-shot trace_normal_ray matches the tracer") {
    const double foot = tracer.foot_of_seam(0, 2);
    const auto a = tracer.trace({0, foot + 0.3});
    const auto b = trace_normal_ray(g, {0, foot + 0.3}, quick_cfg());
    CHECK(a.length == b.length);
  }
}

TEST_CASE("empirical moments") {
  const PantsParams p{2.0, 2.0, 2.0};
  RayTraceConfig cfg = quick_cfg(7);

  SUBCASE("k = 0 is exactly 1 and reports carry the censored fraction") {
    const auto reports = empirical_moments(p, 2, 20000, cfg);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].mean == 1.0);
    CHECK(reports[0].stderr_mean == 0.0);
    CHECK(reports[0].censored_fraction == reports[2].censored_fraction);
    CHECK(reports[1].mean > 1.7);   // at least the shortest orthogeodesic
    CHECK(reports[1].censored_fraction < 0.10);
  }
  SUBCASE("no uncensored length below the shortest orthogeodesic") {
    const auto lens = raw_lengths(p, 20000, cfg);
    const double seam = hexagon_seam(2, 2, 2);
    for (double l : lens) CHECK(l >= seam - 1e-8);
  }
  SUBCASE("deterministic given the seed; serial equals OpenMP bitwise") {
    const auto a = empirical_moments(p, 1, 20000, cfg);
    const auto b = empirical_moments(p, 1, 20000, cfg);
    const auto c = empirical_moments_serial(p, 1, 20000, cfg);
    CHECK(a[1].mean == b[1].mean);
    CHECK(a[1].mean == c[1].mean);
    CHECK(a[1].second_moment == c[1].second_moment);
  }
  SUBCASE("censoring shrinks as coverage grows") {
    RayTraceConfig tight = cfg;
    tight.max_length = 6.0;
    RayTraceConfig wide = cfg;
    wide.max_length = 10.0;
    const double f_tight = empirical_moments(p, 0, 20000, tight)[0].censored_fraction;
    const double f_wide = empirical_moments(p, 0, 20000, wide)[0].censored_fraction;
    CHECK(f_wide < f_tight);

    RayTraceConfig shallow = cfg;
    shallow.max_length = 11.0;
    shallow.unfold_depth = 5;
    RayTraceConfig deep = shallow;
    deep.unfold_depth = 9;
    const double f_shallow = empirical_moments(p, 0, 20000, shallow)[0].censored_fraction;
    const double f_deep = empirical_moments(p, 0, 20000, deep)[0].censored_fraction;
    CHECK(f_deep <= f_shallow);
  }
  SUBCASE("stderr shrinks like 1/sqrt(2) when doubling the sample count") {
    const auto small = empirical_moments(p, 1, 40000, cfg);
    const auto large = empirical_moments(p, 1, 80000, cfg);
    const double ratio = large[1].stderr_mean / small[1].stderr_mean;
    CHECK(ratio > (1.0 / std::sqrt(2.0)) * 0.8);
    CHECK(ratio < (1.0 / std::sqrt(2.0)) * 1.2);
  }
  SUBCASE("sample count floor is enforced") {
    CHECK_THROWS_AS(empirical_moments(p, 1, 5000, cfg), DomainError);
  }
  SUBCASE("censored fraction above 10% invalidates the report") {
    RayTraceConfig starved = cfg;
    starved.max_length = 2.0;  // below most hitting lengths
    CHECK_THROWS_AS(empirical_moments(p, 1, 20000, starved), ConvergenceError);
  }
  SUBCASE("asymmetric pants: first two moments match the analytic values") {
    const PantsParams q{1.5, 2.0, 2.7};
    const OrthoSpectrum s = enumerate_orthospectrum(q, 9.0, 9);
    const double a1 =
        moment(s, 1, LengthConvention::Geometric, MomentMethod::Quadrature, {}, true).value;
    const double a2 =
        moment(s, 2, LengthConvention::Geometric, MomentMethod::Quadrature, {}, true).value;
    RayTraceConfig sc;
    sc.max_length = 40.0;
    sc.spot_cutoff = 9.0;
    sc.unfold_depth = 9;
    sc.seed = 1234;
    const auto rep = empirical_moments(q, 2, 150000, sc);
    CHECK(std::fabs(rep[1].mean - a1) < 4.0 * rep[1].stderr_mean);
    CHECK(std::fabs(rep[2].mean - a2) < 4.0 * rep[2].stderr_mean);
    double covered = 0.0;
    for (double l : s.lengths) covered += 2.0 * spot_radius(l);
    const double expect = (q.perimeter() - covered) / q.perimeter();
    CHECK(std::fabs(rep[1].censored_fraction - expect) <
          4.0 * std::sqrt(expect / 150000.0));
  }
  SUBCASE("spot censoring tracks the Basmajian gap of the truncated spectrum") {
    RayTraceConfig sc = cfg;
    sc.max_length = 30.0;
    sc.spot_cutoff = 8.0;
    const auto rep = empirical_moments(p, 1, 50000, sc)[1];
    const OrthoSpectrum s = enumerate_orthospectrum(p, 8.0, 8);
    double covered = 0.0;
    for (double l : s.lengths) covered += 2.0 * spot_radius(l);
    const double expect = (6.0 - covered) / 6.0;
    CHECK(std::fabs(rep.censored_fraction - expect) <
          4.0 * std::sqrt(expect / 50000.0) + 1e-4);
  }
}
