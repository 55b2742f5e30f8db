#include "ortho/moments.hpp"

#include <cmath>
#include <string>

#include "ortho/parallel.hpp"

namespace ortho {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void check_method(const OrthoSpectrum& s, int k, MomentMethod method) {
  const int n = s.dimension;
  switch (method) {
    case MomentMethod::Quadrature:
      return;
    case MomentMethod::ClosedSurface:
      if (n != 2 || k != 1)
        throw IncompatibleMethod("moment: ClosedSurface requires (n, k) = (2, 1), got n=" +
                                 std::to_string(n) + " k=" + std::to_string(k));
      return;
    case MomentMethod::ClosedOdd:
      if (n % 2 == 0 || n < 3 || k != 1)
        throw IncompatibleMethod("moment: ClosedOdd requires odd n >= 3 and k = 1, got n=" +
                                 std::to_string(n) + " k=" + std::to_string(k));
      return;
    case MomentMethod::MgfDerivative:
      throw IncompatibleMethod("moment: use mgf_derivative_moment for MgfDerivative");
  }
}

double term_value(const OrthoSpectrum& s, int k, MomentMethod method,
                  const QuadratureConfig& qc, double ell) {
  switch (method) {
    case MomentMethod::ClosedSurface:
      return f21_closed(ell);
    case MomentMethod::ClosedOdd:
      return fn1_odd_closed(s.dimension, ell);
    default:
      return fnk_quadrature({s.dimension, k, LengthConvention::FullLog}, ell, qc);
  }
}

template <bool Parallel>
MomentReport moment_impl(const OrthoSpectrum& s, int k, LengthConvention convention,
                         MomentMethod method, const QuadratureConfig& qc, bool normalize,
                         const std::optional<TailParams>& tp) {
  s.validate();
  if (k < 0) throw DomainError("moment: k must be >= 0");
  check_method(s, k, method);
  auto term = [&](std::size_t i) { return term_value(s, k, method, qc, s.lengths[i]); };
  const double sum = Parallel ? par::map_sum(s.lengths.size(), term)
                              : par::map_sum_serial(s.lengths.size(), term);
  const double vol = normalize ? basmajian_sum(s) : s.boundary_volume;
  MomentReport r;
  r.k = k;
  r.convention = convention;
  r.method = method;
  r.terms_used = s.lengths.size();
  r.value = sum / vol;
  if (convention == LengthConvention::Geometric) r.value = std::ldexp(r.value, -k);
  if (tp) r.tail_estimate = tail_estimate(s, k, *tp);
  return r;
}

}  // namespace

MomentReport moment(const OrthoSpectrum& s, int k, LengthConvention convention,
                    MomentMethod method, const QuadratureConfig& qc, bool normalize,
                    const std::optional<TailParams>& tp) {
  return moment_impl<true>(s, k, convention, method, qc, normalize, tp);
}

MomentReport moment_serial(const OrthoSpectrum& s, int k, LengthConvention convention,
                           MomentMethod method, const QuadratureConfig& qc, bool normalize,
                           const std::optional<TailParams>& tp) {
  return moment_impl<false>(s, k, convention, method, qc, normalize, tp);
}

double basmajian_sum(const OrthoSpectrum& s) {
  s.validate();
  const int n = s.dimension;
  return par::map_sum(s.lengths.size(), [&](std::size_t i) {
    return ball_volume(n - 1, spot_radius(s.lengths[i]));
  });
}

double mgf(const OrthoSpectrum& s, double t, const EvalConfig& cfg, bool normalize) {
  s.validate();
  if (s.dimension != 3) throw IncompatibleMethod("mgf: requires a dimension-3 spectrum");
  if (!(t < 1.0)) throw DomainError("mgf: requires t < 1");
  const double sum =
      par::map_sum(s.lengths.size(), [&](std::size_t i) { return mgf_term(s.lengths[i], t, cfg); });
  const double vol = normalize ? basmajian_sum(s) : s.boundary_volume;
  return sum / vol;
}

MomentReport mgf_derivative_moment(const OrthoSpectrum& s, int k, double step,
                                   const EvalConfig& cfg, bool normalize) {
  if (k != 1 && k != 2) throw DomainError("mgf_derivative_moment: k must be 1 or 2");
  if (!(step > 0.0 && step < 0.5)) throw DomainError("mgf_derivative_moment: bad step");
  const double up = mgf(s, step, cfg, normalize);
  const double dn = mgf(s, -step, cfg, normalize);
  MomentReport r;
  r.k = k;
  r.convention = LengthConvention::FullLog;
  r.method = MomentMethod::MgfDerivative;
  r.terms_used = s.lengths.size();
  if (k == 1) {
    r.value = (up - dn) / (2.0 * step);
  } else {
    const double mid = mgf(s, 0.0, cfg, normalize);
    r.value = (up - 2.0 * mid + dn) / (step * step);
  }
  return r;
}

double tail_estimate(const OrthoSpectrum& s, int k, const TailParams& tp) {
  s.validate();
  if (k < 0) throw DomainError("tail_estimate: k must be >= 0");
  const int n = s.dimension;
  if (!(tp.delta >= 0.0 && tp.delta < n - 1))
    throw DomainError("tail_estimate: delta must lie in [0, n-1)");
  if (!(tp.prefactor > 0.0)) throw DomainError("tail_estimate: prefactor must be > 0");
  const double cutoff = s.truncation_cutoff.value_or(s.lengths.back());
  const double beta = (n - 1) - tp.delta;
  const double cnk = std::ldexp(sphere_volume(n - 2), n + k - 1) / (n - 1);
  // int_c^inf x^k e^{-beta x} dx = (k!/beta^{k+1}) e^{-beta c} sum_{j<=k} (beta c)^j / j!
  double poly = 0.0, fact = 1.0, pw = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) {
      fact *= j;
      pw *= beta * cutoff;
    }
    poly += pw / fact;
  }
  double kfact = 1.0;
  for (int j = 2; j <= k; ++j) kfact *= j;
  const double integral = kfact / std::pow(beta, k + 1) * std::exp(-beta * cutoff) * poly;
  return tp.prefactor * cnk * integral;
}

}  // namespace ortho
