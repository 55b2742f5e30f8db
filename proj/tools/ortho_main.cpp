// Command-line surface: spectrum generation, moment / MGF evaluation,
// Monte Carlo runs, identity verification, asymptotics reports.
//
// Exit codes: 0 ok, 1 verification/numeric failure, 2 bad flags,
// 3 unstable enumeration, 4 incompatible method.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ortho/kernels.hpp"
#include "ortho/moments.hpp"
#include "ortho/montecarlo.hpp"
#include "ortho/parallel.hpp"
#include "ortho/spectrum.hpp"
#include "ortho/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

// Report numbers carry 15 significant digits; reruns are byte-identical.
json num15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return json::parse(buf);
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ortho::DomainError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string convention_name(ortho::LengthConvention c) {
  return c == ortho::LengthConvention::Geometric ? "geometric" : "full-log";
}

std::string method_name(ortho::MomentMethod m) {
  switch (m) {
    case ortho::MomentMethod::Quadrature: return "quadrature";
    case ortho::MomentMethod::ClosedSurface: return "closed-surface";
    case ortho::MomentMethod::ClosedOdd: return "closed-odd";
    case ortho::MomentMethod::MgfDerivative: return "mgf-derivative";
  }
  return "?";
}

json config_echo(const json& flags) {
  json j;
  j["version"] = kVersion;
  j["config"] = flags;
  return j;
}

// ---------------------------------------------------------------- gen-pants

int cmd_gen_pants(const std::vector<double>& lengths, double cutoff, int depth,
                  const std::string& out, const std::string& csv) {
  const ortho::PantsParams p{lengths[0], lengths[1], lengths[2]};
  ortho::OrthoSpectrum s =
      depth > 0 ? ortho::enumerate_orthospectrum(p, cutoff, depth)
                : ortho::enumerate_stable(p, cutoff);
  const double partial = ortho::basmajian_sum(s);
  const double perim = p.perimeter();
  std::printf("orthogeodesics <= %.9g: %zu\n", cutoff, s.lengths.size());
  std::printf("partial basmajian sum: %.9g of perimeter %.9g (gap %.9g)\n", partial,
              perim, perim - partial);

  json j;
  j["dimension"] = s.dimension;
  j["boundary_volume"] = s.boundary_volume;
  j["synthetic"] = s.synthetic;
  j["truncation_cutoff"] = *s.truncation_cutoff;
  j["lengths"] = s.lengths;
  j["generator"] = config_echo({{"subcommand", "gen-pants"},
                                {"lengths", lengths},
                                {"cutoff", cutoff},
                                {"depth", depth}});
  j["generator"]["partial_basmajian_sum"] = num15(partial);
  write_json(j, out);
  if (!csv.empty()) ortho::save_spectrum_csv(s, csv);
  return 0;
}

// ------------------------------------------------------------------ moments

int cmd_moments(const std::string& spectrum_path, std::vector<int> ks,
                ortho::LengthConvention conv, const std::string& method_flag,
                bool normalize, std::optional<double> delta, double prefactor,
                const std::string& out, const std::string& csv_path) {
  const ortho::OrthoSpectrum s = ortho::load_spectrum(spectrum_path);
  std::optional<ortho::TailParams> tp;
  if (delta) tp = ortho::TailParams{*delta, prefactor};

  std::vector<ortho::MomentReport> rows;
  for (int k : ks) {
    ortho::MomentReport r;
    if (method_flag == "mgf-derivative") {
      r = ortho::mgf_derivative_moment(s, k, 1e-4, {}, normalize);
      if (conv == ortho::LengthConvention::Geometric) {
        r.convention = conv;
        r.value = std::ldexp(r.value, -k);
      }
      if (tp) r.tail_estimate = ortho::tail_estimate(s, k, *tp);
    } else {
      ortho::MomentMethod m = ortho::MomentMethod::Quadrature;
      if (method_flag == "closed-surface") m = ortho::MomentMethod::ClosedSurface;
      if (method_flag == "closed-odd") m = ortho::MomentMethod::ClosedOdd;
      r = ortho::moment(s, k, conv, m, {}, normalize, tp);
    }
    rows.push_back(r);
    std::printf("k=%d  %-13s %-14s A_k = %.9g", r.k, convention_name(r.convention).c_str(),
                method_name(r.method).c_str(), r.value);
    if (r.tail_estimate) std::printf("  tail <= %.9g", *r.tail_estimate);
    std::printf("  (terms: %zu)\n", r.terms_used);
  }

  json j = config_echo({{"subcommand", "moments"},
                        {"spectrum", spectrum_path},
                        {"k", ks},
                        {"convention", convention_name(conv)},
                        {"method", method_flag},
                        {"normalize", normalize}});
  json arr = json::array();
  for (const auto& r : rows) {
    json e;
    e["k"] = r.k;
    e["convention"] = convention_name(r.convention);
    e["method"] = method_name(r.method);
    e["value"] = num15(r.value);
    e["terms_used"] = r.terms_used;
    if (r.tail_estimate) e["tail_estimate"] = num15(*r.tail_estimate);
    arr.push_back(e);
  }
  j["moments"] = arr;
  if (!out.empty()) write_json(j, out);
  if (!csv_path.empty()) {
    std::ofstream c(csv_path);
    if (!c) throw ortho::DomainError("cannot write " + csv_path);
    c << "k,convention,method,value,tail_estimate,terms_used\n";
    char buf[64];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%.15g", r.value);
      c << r.k << ',' << convention_name(r.convention) << ',' << method_name(r.method)
        << ',' << buf << ',';
      if (r.tail_estimate) {
        std::snprintf(buf, sizeof buf, "%.15g", *r.tail_estimate);
        c << buf;
      }
      c << ',' << r.terms_used << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------- mgf

int cmd_mgf(const std::string& spectrum_path, const std::vector<double>& ts,
            bool normalize, std::optional<double> delta, const std::string& out) {
  const ortho::OrthoSpectrum s = ortho::load_spectrum(spectrum_path);
  json arr = json::array();
  for (double t : ts) {
    const double v = ortho::mgf(s, t, {}, normalize);
    std::printf("M(%.9g) = %.9g\n", t, v);
    arr.push_back({{"t", num15(t)}, {"value", num15(v)}});
  }
  // Each term converges for t < 1; summing over the full (untruncated)
  // spectrum is expected to converge for t < 1 - delta/2, with delta the
  // limit-set dimension.  Reported, not enforced.
  if (delta) {
    std::printf("per-term domain t < 1; spectrum-level convergence heuristic "
                "t < 1 - delta/2 = %.9g\n",
                1.0 - 0.5 * *delta);
  }
  if (!out.empty()) {
    json flags = {{"subcommand", "mgf"},
                  {"spectrum", spectrum_path},
                  {"t", ts},
                  {"normalize", normalize}};
    if (delta) flags["delta"] = *delta;
    json j = config_echo(flags);
    j["mgf"] = arr;
    j["per_term_domain"] = "t < 1";
    if (delta) j["convergence_heuristic_t_max"] = num15(1.0 - 0.5 * *delta);
    write_json(j, out);
  }
  return 0;
}

// ----------------------------------------------------------------------- mc

int cmd_mc(const std::vector<double>& lengths, long long samples, int kmax,
           const ortho::RayTraceConfig& cfg, const std::string& out,
           const std::string& raw_csv) {
  const ortho::PantsParams p{lengths[0], lengths[1], lengths[2]};
  const auto reports = ortho::empirical_moments(p, kmax, samples, cfg);
  json arr = json::array();
  for (const auto& r : reports) {
    std::printf("k=%d  mean(L^k) = %.9g  stderr %.9g  censored %.4f%%\n", r.k, r.mean,
                r.stderr_mean, 100.0 * r.censored_fraction);
    arr.push_back({{"k", r.k},
                   {"samples", r.samples},
                   {"mean", num15(r.mean)},
                   {"second_moment", num15(r.second_moment)},
                   {"stderr_mean", num15(r.stderr_mean)},
                   {"censored_fraction", num15(r.censored_fraction)}});
  }
  if (!out.empty()) {
    json flags = {{"subcommand", "mc"},
                  {"lengths", lengths},
                  {"samples", samples},
                  {"kmax", kmax},
                  {"max_length", cfg.max_length},
                  {"unfold_depth", cfg.unfold_depth},
                  {"seed", cfg.seed}};
    if (cfg.spot_cutoff) flags["spot_cutoff"] = *cfg.spot_cutoff;
    json j = config_echo(flags);
    j["reports"] = arr;
    write_json(j, out);
  }
  if (!raw_csv.empty()) {
    const auto lens = ortho::raw_lengths(p, samples, cfg);
    std::ofstream c(raw_csv);
    if (!c) throw ortho::DomainError("cannot write " + raw_csv);
    c << "length\n";
    char buf[40];
    for (double l : lens) {
      std::snprintf(buf, sizeof buf, "%.15g\n", l);
      c << buf;
    }
  }
  return 0;
}

// ------------------------------------------------------------------- verify

int cmd_verify(const std::string& level, double tol_scale, const std::string& out) {
  const bool full = level == "full";
  const auto checks = ortho::verify_checks(full, tol_scale);
  bool all_pass = true;
  json arr = json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    std::printf("[%s] %-68s tol %.3g  achieved %.3g\n", c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.tolerance, c.achieved);
    if (!c.note.empty()) std::printf("       note: %s\n", c.note.c_str());
    json e;
    e["name"] = c.name;
    e["tolerance"] = num15(c.tolerance);
    e["achieved"] = num15(c.achieved);
    e["pass"] = c.pass;
    if (!c.note.empty()) e["note"] = c.note;
    arr.push_back(e);
  }
  std::printf("%s (%zu checks)\n", all_pass ? "ALL CHECKS PASSED" : "FAILURES PRESENT",
              checks.size());
  if (!out.empty()) {
    json j = config_echo(
        {{"subcommand", "verify"}, {"level", level}, {"tolerance_scale", tol_scale}});
    j["checks"] = arr;
    j["pass"] = all_pass;
    write_json(j, out);
  }
  return all_pass ? 0 : 1;
}

// -------------------------------------------------------------- asymptotics

int cmd_asymptotics(const std::string& out) {
  json pairs = json::array();
  std::printf("%-8s %-10s %-14s %-14s %s\n", "(n,k)", "x", "F (quadrature)",
              "C x^k e^{-(n-1)x}", "ratio");
  for (auto [n, k] : {std::pair{2, 1}, {3, 1}, {3, 2}, {5, 1}}) {
    for (double x : {6.0, 12.0}) {
      const ortho::KernelParams kp{n, k, ortho::LengthConvention::FullLog};
      const double q = ortho::fnk_quadrature(kp, x);
      const double a = ortho::fnk_asymptotic(kp, x);
      std::printf("(%d,%d)    %-10.4g %-14.9g %-14.9g %.9g\n", n, k, x, q, a, q / a);
      pairs.push_back({{"n", n},
                       {"k", k},
                       {"x", num15(x)},
                       {"quadrature", num15(q)},
                       {"asymptotic", num15(a)},
                       {"ratio", num15(q / a)}});
    }
  }
  json small = json::array();
  for (int n : {3, 5, 7}) {
    const auto r = ortho::small_x_constant(n);
    std::printf("small-x, n=%d: empirical lim x^{n-2}F_{n,1} = %.9g   claimed %.9g\n", n,
                r.empirical, r.claimed);
    small.push_back({{"n", n},
                     {"empirical", num15(r.empirical)},
                     {"claimed", num15(r.claimed)},
                     {"spread", num15(r.spread)}});
  }
  if (!out.empty()) {
    json j = config_echo({{"subcommand", "asymptotics"}});
    j["large_x_ratios"] = pairs;
    j["small_x_constants"] = small;
    write_json(j, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthospectrum moment toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "cap OpenMP worker count");

  // gen-pants
  auto* gp = app.add_subcommand("gen-pants", "enumerate a pants orthospectrum");
  std::vector<double> gp_lengths;
  double gp_cutoff = 10.0;
  int gp_depth = 0;
  std::string gp_out = "spectrum.json", gp_csv;
  gp->add_option("--lengths", gp_lengths, "three boundary lengths")
      ->delimiter(',')
      ->expected(3)
      ->required();
  gp->add_option("--cutoff", gp_cutoff, "length cutoff");
  gp->add_option("--depth", gp_depth, "word depth (0 = auto-stable)");
  gp->add_option("-o,--out", gp_out, "output spectrum JSON");
  gp->add_option("--csv", gp_csv, "also export lengths as CSV");

  // moments
  auto* mo = app.add_subcommand("moments", "moments A_k of a spectrum");
  std::string mo_spectrum, mo_method = "quadrature", mo_conv = "geometric";
  std::vector<int> mo_k{0, 1};
  bool mo_normalize = false;
  double mo_prefactor = 1.0;
  std::optional<double> mo_delta;
  std::string mo_out, mo_csv;
  mo->add_option("--spectrum", mo_spectrum, "spectrum JSON path")->required();
  mo->add_option("--k", mo_k, "moment orders")->delimiter(',');
  mo->add_option("--convention", mo_conv, "geometric | full-log")
      ->check(CLI::IsMember({"geometric", "full-log"}));
  mo->add_option("--method", mo_method, "quadrature | closed-surface | closed-odd | mgf-derivative")
      ->check(CLI::IsMember({"quadrature", "closed-surface", "closed-odd", "mgf-derivative"}));
  mo->add_flag("--normalize", mo_normalize,
               "divide by the partial Basmajian sum instead of the boundary volume");
  mo->add_option("--delta", mo_delta, "limit-set dimension for the tail bound");
  mo->add_option("--prefactor", mo_prefactor, "orbit-counting prefactor for the tail bound");
  mo->add_option("-o,--out", mo_out, "output JSON report");
  mo->add_option("--csv", mo_csv, "output CSV report");

  // mgf
  auto* mg = app.add_subcommand("mgf", "moment generating function (dimension 3)");
  std::string mg_spectrum, mg_out;
  std::vector<double> mg_t{0.0};
  bool mg_normalize = false;
  std::optional<double> mg_delta;
  mg->add_option("--spectrum", mg_spectrum, "spectrum JSON path")->required();
  mg->add_option("--t", mg_t, "evaluation points, each < 1")->delimiter(',');
  mg->add_flag("--normalize", mg_normalize, "normalize by the partial Basmajian sum");
  mg->add_option("--delta", mg_delta,
                 "limit-set dimension; reports the t-domain heuristic 1 - delta/2");
  mg->add_option("-o,--out", mg_out, "output JSON report");

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo normal-flow moments");
  std::vector<double> mc_lengths;
  long long mc_samples = 100000;
  int mc_kmax = 2;
  ortho::RayTraceConfig mc_cfg;
  std::string mc_out, mc_raw;
  mc->add_option("--lengths", mc_lengths, "three boundary lengths")
      ->delimiter(',')
      ->expected(3)
      ->required();
  mc->add_option("--samples", mc_samples, "sample count (>= 1e4)");
  mc->add_option("--kmax", mc_kmax, "highest moment order");
  mc->add_option("--max-length", mc_cfg.max_length, "censoring horizon");
  mc->add_option("--unfold-depth", mc_cfg.unfold_depth, "word depth for lifted axes");
  mc->add_option("--seed", mc_cfg.seed, "RNG seed");
  mc->add_option("--spot-cutoff", mc_cfg.spot_cutoff,
                 "censor samples outside the spots of orthogeodesics up to this length");
  mc->add_option("-o,--out", mc_out, "output JSON report");
  mc->add_option("--raw-csv", mc_raw, "dump raw uncensored lengths");

  // verify
  auto* ve = app.add_subcommand("verify", "cross-identity verification suite");
  std::string ve_level = "quick", ve_out;
  double ve_scale = 1.0;
  ve->add_option("--level", ve_level, "quick | full")
      ->check(CLI::IsMember({"quick", "full"}));
  ve->add_option("--tolerance-scale", ve_scale, "multiply all tolerances (harness test)");
  ve->add_option("-o,--out", ve_out, "output JSON report");

  // asymptotics
  auto* as = app.add_subcommand("asymptotics", "decay-law ratios and small-x constants");
  std::string as_out;
  as->add_option("-o,--out", as_out, "output JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ortho::par::set_threads(threads);

  try {
    if (gp->parsed()) {
      for (double l : gp_lengths)
        if (!(l > 0.0)) throw ortho::DomainError("gen-pants: lengths must be positive");
      if (!(gp_cutoff > 0.0)) throw ortho::DomainError("gen-pants: cutoff must be positive");
      return cmd_gen_pants(gp_lengths, gp_cutoff, gp_depth, gp_out, gp_csv);
    }
    if (mo->parsed()) {
      const auto conv = mo_conv == "geometric" ? ortho::LengthConvention::Geometric
                                               : ortho::LengthConvention::FullLog;
      return cmd_moments(mo_spectrum, mo_k, conv, mo_method, mo_normalize, mo_delta,
                         mo_prefactor, mo_out, mo_csv);
    }
    if (mg->parsed()) return cmd_mgf(mg_spectrum, mg_t, mg_normalize, mg_delta, mg_out);
    if (mc->parsed()) {
      for (double l : mc_lengths)
        if (!(l > 0.0)) throw ortho::DomainError("mc: lengths must be positive");
      return cmd_mc(mc_lengths, mc_samples, mc_kmax, mc_cfg, mc_out, mc_raw);
    }
    if (ve->parsed()) return cmd_verify(ve_level, ve_scale, ve_out);
    if (as->parsed()) return cmd_asymptotics(as_out);
  } catch (const ortho::UnstableEnumeration& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ortho::IncompatibleMethod& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ortho::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
