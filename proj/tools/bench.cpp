// Timing comparison of the OpenMP kernels against their serial reference
// implementations.  The two paths share the deterministic pairwise-tree
// reduction, so outputs must agree bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "ortho/moments.hpp"
#include "ortho/montecarlo.hpp"
#include "ortho/parallel.hpp"
#include "ortho/spectrum.hpp"

using clk = std::chrono::steady_clock;

namespace {

double seconds_since(clk::time_point t0) {
  return std::chrono::duration<double>(clk::now() - t0).count();
}

void row(const char* name, double serial_s, double parallel_s, bool equal) {
  std::printf("%-34s serial %8.3fs   openmp %8.3fs   speedup %5.2fx   %s\n", name,
              serial_s, parallel_s, serial_s / parallel_s,
              equal ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", ortho::par::max_threads());
  const ortho::PantsParams pants{2.0, 2.0, 2.0};

  {
    const auto g = ortho::pants_group(pants);
    auto t0 = clk::now();
    const auto serial = ortho::enumerate_orthogeodesics_serial(g, 12.0, 10);
    const double ts = seconds_since(t0);
    t0 = clk::now();
    const auto parallel = ortho::enumerate_orthogeodesics(g, 12.0, 10);
    const double tp = seconds_since(t0);
    bool equal = serial.size() == parallel.size();
    for (std::size_t i = 0; equal && i < serial.size(); ++i)
      equal = serial[i].length == parallel[i].length && serial[i].coset == parallel[i].coset;
    row("orthospectrum enumeration d=10", ts, tp, equal);
  }

  {
    // Dense synthetic spectrum: one quadrature kernel evaluation per term.
    ortho::OrthoSpectrum s;
    s.dimension = 3;
    s.synthetic = true;
    for (int i = 0; i < 20000; ++i) s.lengths.push_back(0.5 + 1e-4 * i);
    s.boundary_volume = 1.0;
    auto t0 = clk::now();
    const auto serial = ortho::moment_serial(s, 1, ortho::LengthConvention::FullLog,
                                             ortho::MomentMethod::Quadrature);
    const double ts = seconds_since(t0);
    t0 = clk::now();
    const auto parallel = ortho::moment(s, 1, ortho::LengthConvention::FullLog,
                                        ortho::MomentMethod::Quadrature);
    const double tp = seconds_since(t0);
    row("moment sum, 20k quadrature terms", ts, tp, serial.value == parallel.value);
  }

  {
    ortho::RayTraceConfig cfg;
    cfg.max_length = 12.0;
    cfg.unfold_depth = 9;
    cfg.seed = 7;
    auto t0 = clk::now();
    const auto serial = ortho::empirical_moments_serial(pants, 2, 400000, cfg);
    const double ts = seconds_since(t0);
    t0 = clk::now();
    const auto parallel = ortho::empirical_moments(pants, 2, 400000, cfg);
    const double tp = seconds_since(t0);
    row("monte carlo, 4e5 samples", ts, tp,
        serial[1].mean == parallel[1].mean && serial[2].mean == parallel[2].mean);
  }
  return 0;
}
