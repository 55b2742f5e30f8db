#pragma once

#include <cstdint>
#include <vector>

#include "ortho/spectrum.hpp"

namespace ortho {

struct RayTraceConfig {
  double max_length = 12.0;  // censoring horizon
  int unfold_depth = 9;      // word length for lifted boundary axes
  uint64_t seed = 1;
  // When set, a sample is censored unless its start point lies in the spot of
  // an orthogeodesic of length <= spot_cutoff.  Spot-edge rays then keep their
  // full (possibly > spot_cutoff) hitting length, which makes the sample mean
  // an unbiased estimator of the cutoff-truncated normalized moment; plain
  // length censoring clips those rays and biases the mean low.
  std::optional<double> spot_cutoff;

  void validate() const {
    if (!(max_length > 0.0)) throw DomainError("RayTraceConfig: max_length must be > 0");
    if (unfold_depth < 4) throw DomainError("RayTraceConfig: unfold_depth must be >= 4");
    if (spot_cutoff && !(*spot_cutoff > 0.0))
      throw DomainError("RayTraceConfig: spot_cutoff must be > 0");
  }
};

// Sample moments of the hitting length.  For moment order k, `mean` is the
// average of L^k over uncensored samples and `second_moment` the average of
// L^{2k} (it feeds the standard error).  `samples` counts the full run.
struct EmpiricalReport {
  int k = 1;
  long long samples = 0;
  double mean = 0.0;
  double second_moment = 0.0;
  double stderr_mean = 0.0;
  double censored_fraction = 0.0;
};

// splitmix64 stream; one fixed increment per draw, so per-sample states
// seeded at (seed + 2i * gamma) consume disjoint slices of a single stream.
inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
inline double uniform01(uint64_t& state) {
  return double(splitmix64(state) >> 11) * 0x1.0p-53;
}

struct BoundarySample {
  int component = 0;    // 0-based boundary index
  double position = 0;  // arclength along the boundary, in [0, L_i)
};

// Component i with probability L_i / (L1+L2+L3), position uniform.
BoundarySample sample_boundary_point(const PantsParams& p, uint64_t& rng_state);

struct TraceResult {
  double length = 0.0;
  bool censored = false;
};

// Trace with the first-hit axis classified against the spot decomposition.
struct TraceOutcome {
  double length = 0.0;
  bool hit = false;         // some lifted axis was struck within max_length
  double owner_dist = 0.0;  // orthogeodesic length of the first-hit axis
  bool in_spot = false;     // start point lies inside that axis' spot
};

// Precomputed unfolding of the boundary axes around each boundary component,
// in a frame where that component's axis is the vertical geodesic and the
// surface side is Re z > 0.  Rays normal to the axis are the half-circles
// |z| = e^position; the hit against a lifted axis is closed-form.
class RayTracer {
public:
  RayTracer(const PantsGroup& group, const RayTraceConfig& cfg);

  TraceResult trace(const BoundarySample& point) const;
  TraceOutcome trace_classified(const BoundarySample& point) const;

  struct LiftedAxis {
    double center;  // Euclidean center on the real line (> 0)
    double radius;  // Euclidean radius
    double dist;    // orthogeodesic distance from the base axis
    double foot;    // arclength position of the common perpendicular's foot
    int to;         // boundary component this lift covers
  };
  const std::vector<LiftedAxis>& axes(int component) const { return frames_[component].axes; }
  double boundary_length(int component) const { return frames_[component].length; }
  double foot_of_seam(int from, int to) const;  // foot of the (from,to) seam

private:
  struct Frame {
    double length;                 // boundary length L_i
    std::vector<LiftedAxis> axes;  // sorted by dist ascending
  };
  RayTraceConfig cfg_;
  std::array<Frame, 3> frames_;
  std::array<Isometry, 3> to_vertical_;
};

// One-shot variant; builds the unfolding each call.
TraceResult trace_normal_ray(const PantsGroup& group, const BoundarySample& point,
                             const RayTraceConfig& cfg);

// Monte Carlo moments for k = 0..k_max.  Embarrassingly parallel over
// samples; per-sample generator slices make the result independent of the
// thread count.  Throws if the censored fraction exceeds 10%.
std::vector<EmpiricalReport> empirical_moments(const PantsParams& p, int k_max,
                                               long long n_samples,
                                               const RayTraceConfig& cfg);

// Serial reference (identical output).
std::vector<EmpiricalReport> empirical_moments_serial(const PantsParams& p, int k_max,
                                                      long long n_samples,
                                                      const RayTraceConfig& cfg);

// Raw uncensored lengths (for CSV dumps), in sample order.
std::vector<double> raw_lengths(const PantsParams& p, long long n_samples,
                                const RayTraceConfig& cfg);

}  // namespace ortho
