#include "ortho/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "ortho/kernels.hpp"
#include "ortho/parallel.hpp"

namespace ortho {

namespace {

// Frame isometry sending (rep, att) to (0, infinity) with det 1.
Isometry frame_map(const Geodesic& axis) {
  const double rep = axis.p, att = axis.q;
  Mat2 t;
  if (std::isinf(att)) {
    t = {1.0, -rep, 0.0, 1.0};
  } else if (std::isinf(rep)) {
    t = {0.0, -1.0, 1.0, -att};
  } else {
    t = {1.0, -rep, 1.0, -att};
    if (t.det() < 0.0) t = {1.0, -rep, -1.0, att};
  }
  return Isometry{t}.normalized();
}

}  // namespace

BoundarySample sample_boundary_point(const PantsParams& p, uint64_t& rng_state) {
  p.validate();
  const double total = p.perimeter();
  const double pick = uniform01(rng_state) * total;
  const double u = uniform01(rng_state);
  if (pick < p.l1) return {0, u * p.l1};
  if (pick < p.l1 + p.l2) return {1, u * p.l2};
  return {2, u * p.l3};
}

RayTracer::RayTracer(const PantsGroup& group, const RayTraceConfig& cfg) : cfg_(cfg) {
  cfg.validate();
  // With a spot cutoff, axes beyond it never decide a kept sample, so the
  // unfolding only needs the spots of the truncated spectrum.
  const double list_cutoff = cfg.spot_cutoff.value_or(cfg.max_length);
  const auto entries = enumerate_orthogeodesics(group, list_cutoff, cfg.unfold_depth);
  const double lens[3] = {group.params.l1, group.params.l2, group.params.l3};

  for (int i = 0; i < 3; ++i) {
    Isometry t = frame_map(group.axis[i]);
    // Surface side must be Re z > 0; flip with z -> -1/z if the witness (an
    // ideal endpoint of another boundary axis) lands on the left.
    const double witness = t.apply(group.axis[(i + 1) % 3].p);
    if (witness < 0.0) t = Isometry{Mat2{0.0, -1.0, 1.0, 0.0}} * t;
    to_vertical_[i] = t;

    Frame& fr = frames_[i];
    fr.length = lens[i];
    for (const auto& e : entries) {
      if (e.from != i) continue;
      const Isometry v = t * group.word_matrix(e.coset);
      const Geodesic a = group.axis[e.to].transported(v);
      // center and radius from the axis vector [[al, be], [ga, -al]]:
      // endpoints (al +- 1)/ga.
      const double al = a.x.a, ga = a.x.c;
      if (std::fabs(ga) < 1e-300) continue;  // would share the endpoint at infinity
      const double center = al / ga;
      const double radius = 1.0 / std::fabs(ga);
      if (!(center > 0.0) || !(center * center > radius * radius)) continue;
      const double foot0 = 0.5 * std::log((al * al - 1.0) / (ga * ga));
      const double rs = spot_radius(e.length) + 0.1;
      // Deck translates z -> e^{m L_i} z place copies of the spot along the
      // axis; keep those whose spot can reach the sampled window [0, L_i).
      const int mlo = int(std::ceil((-rs - foot0) / fr.length));
      const int mhi = int(std::floor((fr.length + rs - foot0) / fr.length));
      for (int m = mlo; m <= mhi; ++m) {
        const double sc = std::exp(m * fr.length);
        fr.axes.push_back(
            {center * sc, radius * sc, e.length, foot0 + m * fr.length, int(e.to)});
      }
    }
    std::sort(fr.axes.begin(), fr.axes.end(), [](const LiftedAxis& x, const LiftedAxis& y) {
      if (x.dist != y.dist) return x.dist < y.dist;
      return x.foot < y.foot;
    });
  }
}

double RayTracer::foot_of_seam(int from, int to) const {
  const auto& ax = frames_[from].axes;
  double best = 0.0, bestd = 1e300;
  for (const auto& a : ax) {
    if (a.to == to && a.dist < bestd) {
      best = a.foot;
      bestd = a.dist;
    }
  }
  if (bestd == 1e300) throw DomainError("foot_of_seam: no lift of that component");
  const double len = frames_[from].length;
  best -= len * std::floor(best / len);
  return best;
}

TraceOutcome RayTracer::trace_classified(const BoundarySample& point) const {
  const Frame& fr = frames_[point.component];
  const double r = std::exp(point.position);  // ray is the half-circle |z| = r
  TraceOutcome out;
  double best = std::numeric_limits<double>::infinity();
  bool ambiguous = false;

  for (const auto& a : fr.axes) {
    if (a.dist >= best) break;  // sorted: nothing closer can follow
    // Radical-line abscissa of the two circles |z| = r, |z - c| = rho.
    const double x = (r * r + a.center * a.center - a.radius * a.radius) / (2.0 * a.center);
    const double y2 = (r - x) * (r + x);
    if (std::fabs(y2) < 1e-20 * r * r) {
      // tangential within the 1e-10 classification tolerance
      ambiguous = true;
      break;
    }
    if (y2 < 0.0 || x <= 0.0) continue;  // disjoint, or behind the start point
    const double len = std::log((r + x) / std::sqrt(y2));
    if (len > 0.0 && len < best) {
      best = len;
      out.owner_dist = a.dist;
      out.in_spot = std::fabs(point.position - a.foot) < spot_radius(a.dist);
    }
  }
  if (ambiguous || !(best <= cfg_.max_length)) return {};
  out.length = best;
  out.hit = true;
  return out;
}

TraceResult RayTracer::trace(const BoundarySample& point) const {
  const TraceOutcome o = trace_classified(point);
  if (!o.hit) return {0.0, true};
  return {o.length, false};
}

TraceResult trace_normal_ray(const PantsGroup& group, const BoundarySample& point,
                             const RayTraceConfig& cfg) {
  return RayTracer(group, cfg).trace(point);
}

namespace {

// gamma-skip so each sample owns draws {2i, 2i+1} of the seed's stream.
uint64_t sample_state(uint64_t seed, long long i) {
  return seed + 2ull * uint64_t(i) * 0x9E3779B97F4A7C15ull;
}

template <bool Parallel>
std::vector<EmpiricalReport> empirical_moments_impl(const PantsParams& p, int k_max,
                                                    long long n_samples,
                                                    const RayTraceConfig& cfg) {
  p.validate();
  cfg.validate();
  if (k_max < 0) throw DomainError("empirical_moments: k_max must be >= 0");
  if (n_samples < 10000) throw DomainError("empirical_moments: need n_samples >= 10^4");

  const PantsGroup group = pants_group(p);
  const RayTracer tracer(group, cfg);

  const std::size_t count = static_cast<std::size_t>(n_samples);
  std::vector<double> lengths(count);
  std::vector<uint8_t> censored(count);
#pragma omp parallel for schedule(static) if (Parallel)
  for (long long i = 0; i < n_samples; ++i) {
    uint64_t st = sample_state(cfg.seed, i);
    const BoundarySample pt = sample_boundary_point(p, st);
    const TraceOutcome tr = tracer.trace_classified(pt);
    bool keep = tr.hit;
    if (keep && cfg.spot_cutoff)
      keep = tr.in_spot && tr.owner_dist <= *cfg.spot_cutoff * (1.0 + 1e-12);
    lengths[std::size_t(i)] = keep ? tr.length : 0.0;
    censored[std::size_t(i)] = keep ? 0 : 1;
  }

  // Compact uncensored lengths in sample order (deterministic).
  std::vector<double> kept;
  kept.reserve(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i)
    if (!censored[i]) kept.push_back(lengths[i]);
  const double frac = 1.0 - double(kept.size()) / double(n_samples);
  if (frac > 0.10)
    throw ConvergenceError("empirical_moments: censored fraction exceeds 10%");
  if (kept.empty()) throw ConvergenceError("empirical_moments: no uncensored samples");

  std::vector<EmpiricalReport> out;
  const double n = double(kept.size());
  for (int k = 0; k <= k_max; ++k) {
    auto powk = [&](std::size_t i) { return std::pow(kept[i], k); };
    auto pow2k = [&](std::size_t i) { return std::pow(kept[i], 2 * k); };
    EmpiricalReport r;
    r.k = k;
    r.samples = n_samples;
    r.mean = (Parallel ? par::map_sum(kept.size(), powk) : par::map_sum_serial(kept.size(), powk)) / n;
    r.second_moment =
        (Parallel ? par::map_sum(kept.size(), pow2k) : par::map_sum_serial(kept.size(), pow2k)) / n;
    const double var = std::max(0.0, r.second_moment - r.mean * r.mean);
    r.stderr_mean = std::sqrt(var / n);
    r.censored_fraction = frac;
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<EmpiricalReport> empirical_moments(const PantsParams& p, int k_max,
                                               long long n_samples,
                                               const RayTraceConfig& cfg) {
  return empirical_moments_impl<true>(p, k_max, n_samples, cfg);
}

std::vector<EmpiricalReport> empirical_moments_serial(const PantsParams& p, int k_max,
                                                      long long n_samples,
                                                      const RayTraceConfig& cfg) {
  return empirical_moments_impl<false>(p, k_max, n_samples, cfg);
}

std::vector<double> raw_lengths(const PantsParams& p, long long n_samples,
                                const RayTraceConfig& cfg) {
  p.validate();
  cfg.validate();
  const PantsGroup group = pants_group(p);
  const RayTracer tracer(group, cfg);
  std::vector<double> out;
  out.reserve(std::size_t(n_samples));
  for (long long i = 0; i < n_samples; ++i) {
    uint64_t st = sample_state(cfg.seed, i);
    const BoundarySample pt = sample_boundary_point(p, st);
    const TraceOutcome tr = tracer.trace_classified(pt);
    bool keep = tr.hit;
    if (keep && cfg.spot_cutoff)
      keep = tr.in_spot && tr.owner_dist <= *cfg.spot_cutoff * (1.0 + 1e-12);
    if (keep) out.push_back(tr.length);
  }
  return out;
}

}  // namespace ortho
