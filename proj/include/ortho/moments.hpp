#pragma once

#include <optional>

#include "ortho/kernels.hpp"
#include "ortho/spectrum.hpp"

namespace ortho {

enum class MomentMethod { Quadrature, ClosedSurface, ClosedOdd, MgfDerivative };

struct MomentReport {
  int k = 0;
  double value = 0.0;
  LengthConvention convention = LengthConvention::FullLog;
  MomentMethod method = MomentMethod::Quadrature;
  std::size_t terms_used = 0;
  std::optional<double> tail_estimate;
};

// Orbit-counting data for truncation-tail bounds: the limit set dimension
// delta (0 < delta < n-1) and the counting prefactor.
struct TailParams {
  double delta;
  double prefactor = 1.0;
};

// k-th moment A_k = (1/V) sum_l F_{n,k}(l) over the truncated spectrum.
// V is the spectrum's boundary_volume, or the partial Basmajian sum when
// `normalize` is set (useful for synthetic fixtures and truncation-consistent
// comparisons).  Summation is OpenMP-parallel with a deterministic
// pairwise-tree reduction.
MomentReport moment(const OrthoSpectrum& s, int k, LengthConvention convention,
                    MomentMethod method, const QuadratureConfig& qc = {},
                    bool normalize = false,
                    const std::optional<TailParams>& tp = std::nullopt);

// Serial reference path (identical result bit for bit).
MomentReport moment_serial(const OrthoSpectrum& s, int k, LengthConvention convention,
                           MomentMethod method, const QuadratureConfig& qc = {},
                           bool normalize = false,
                           const std::optional<TailParams>& tp = std::nullopt);

// sum_l V_{n-1}(log coth(l/2)); bounded by the boundary volume for genuine
// spectra (Basmajian's identity).
double basmajian_sum(const OrthoSpectrum& s);

// Dimension-3 moment generating function at t < 1 (FullLog kernel is
// inherent to the closed form; the Geometric-convention MGF is M(t/2)):
//   M(t) = (1/V) sum_l 4 pi coth(l) B((1 - tanh l)/2, 1-t, 1+t).
double mgf(const OrthoSpectrum& s, double t, const EvalConfig& cfg = {},
           bool normalize = false);

// A_k by central finite differences of the MGF at 0 (k = 1 or 2).
MomentReport mgf_derivative_moment(const OrthoSpectrum& s, int k, double step,
                                   const EvalConfig& cfg = {}, bool normalize = false);

// Closed-form upper bound on the discarded tail of (1/V) sum F_{n,k} past the
// truncation cutoff: prefactor * C_{n,k} * int_{cutoff}^inf x^k e^{-(n-1-delta)x} dx.
double tail_estimate(const OrthoSpectrum& s, int k, const TailParams& tp);

}  // namespace ortho
