#include "ortho/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "ortho/specfun.hpp"

namespace ortho {

namespace {

// Generator words of the boundary subgroups <g1> = <a>, <g2> = <b>,
// <g3> = <(g1 g2)^-1> = <BA>.
const std::array<Word, 3>& boundary_words() {
  static const std::array<Word, 3> h = [] {
    std::array<Word, 3> w;
    w[0] = Word::letter(0);
    w[1] = Word::letter(2);
    w[2] = Word::letter(3);
    w[2].push_back(1);
    return w;
  }();
  return h;
}

Word mul_left(const Word& h, const Word& w) {
  Word r = w;
  for (int i = h.len - 1; i >= 0; --i) r.push_front(h.l[i]);
  return r;
}
Word mul_right(const Word& w, const Word& h) {
  Word r = w;
  for (int i = 0; i < h.len; ++i) r.push_back(h.l[i]);
  return r;
}

struct CosetMoves {
  Word hi, hi_inv, hj, hj_inv;

  CosetMoves(int i, int j)
      : hi(boundary_words()[i]),
        hi_inv(boundary_words()[i].inverse()),
        hj(boundary_words()[j]),
        hj_inv(boundary_words()[j].inverse()) {}

  void neighbors(const Word& x, std::array<Word, 4>& out) const {
    out[0] = mul_left(hi, x);
    out[1] = mul_left(hi_inv, x);
    out[2] = mul_right(x, hj);
    out[3] = mul_right(x, hj_inv);
  }
};

// Bounded walk over the equal-length part of the <h_i> w <h_j> orbit.
// Returns the shortlex minimum of the component, or a strictly shorter word
// if one is reachable (signalled through `shorter`).
Word orbit_min(const CosetMoves& mv, const Word& w, bool& shorter) {
  std::array<Word, 64> seen;
  std::size_t count = 0;
  seen[count++] = w;
  Word best = w;
  shorter = false;
  for (std::size_t head = 0; head < count; ++head) {
    std::array<Word, 4> nb;
    mv.neighbors(seen[head], nb);
    for (const Word& x : nb) {
      if (x.len < w.len) {
        shorter = true;
        return x;
      }
      if (x.len > w.len) continue;
      bool known = false;
      for (std::size_t s = 0; s < count; ++s)
        if (seen[s] == x) {
          known = true;
          break;
        }
      if (!known) {
        if (count >= seen.size())
          throw std::runtime_error("orbit_min: unexpected orbit growth");
        seen[count++] = x;
        if (x < best) best = x;
      }
    }
  }
  return best;
}

// Canonical representative of the double coset <h_i> w <h_j>: the
// shortlex-least word reachable by left multiplication by h_i^{+-1} and right
// multiplication by h_j^{+-1}.  Greedy shortening first; ties (possible only
// through the length-2 generator of <g3>) are resolved by the orbit walk.
Word canonical_coset(int i, Word w, int j) {
  const CosetMoves mv(i, j);
  for (;;) {
    for (bool improved = true; improved;) {
      improved = false;
      std::array<Word, 4> nb;
      mv.neighbors(w, nb);
      for (const Word& x : nb)
        if (x.len < w.len) {
          w = x;
          improved = true;
          break;
        }
    }
    bool shorter = false;
    Word best = orbit_min(mv, w, shorter);
    if (!shorter) return best;
    w = best;
  }
}

// Fast test used in the enumeration inner loop: is w itself the canonical
// representative of <h_i> w <h_j>?
bool is_canonical_coset(int i, const Word& w, int j) {
  const CosetMoves mv(i, j);
  std::array<Word, 4> nb;
  mv.neighbors(w, nb);
  bool tie = false;
  for (const Word& x : nb) {
    if (x.len < w.len) return false;
    if (x.len == w.len) tie = true;
  }
  if (!tie) return true;
  bool shorter = false;
  const Word best = orbit_min(mv, w, shorter);
  return !shorter && best == w;
}

}  // namespace

PantsGroup pants_group(const PantsParams& p) {
  p.validate();
  PantsGroup g;
  g.params = p;
  const double mu = std::exp(0.5 * p.l1);
  g.gen[0] = {Mat2{mu, 0.0, 0.0, 1.0 / mu}};

  // g2 = M diag(e^{L2/2}, e^{-L2/2}) M^{-1} with axis endpoints (u, 1/u);
  // u solves tr(g1 g2) = -2 cosh(L3/2).
  const double c3 = std::cosh(0.5 * p.l3);
  const double cA = std::cosh(0.5 * (p.l1 + p.l2));
  const double cB = std::cosh(0.5 * (p.l1 - p.l2));
  const double w2 = (cB + c3) / (cA + c3);
  if (!(w2 > 0.0) || !std::isfinite(w2))
    throw DomainError("pants_group: conjugation parameter is not a positive real");
  const double u = std::sqrt(w2), v = 1.0 / u;
  const double lam = std::exp(0.5 * p.l2);
  const Mat2 conj{u, v, 1.0, 1.0};
  const Mat2 diag{lam, 0.0, 0.0, 1.0 / lam};
  const double s = 1.0 / (u - v);
  const Mat2 conj_inv{s, -v * s, -s, u * s};
  g.gen[1] = Isometry{conj * diag * conj_inv}.normalized();
  g.gen[2] = (g.gen[0] * g.gen[1]).inverse().normalized();

  for (int i = 0; i < 3; ++i) {
    const double want = 2.0 * std::cosh(0.5 * (i == 0 ? p.l1 : i == 1 ? p.l2 : p.l3));
    if (std::fabs(std::fabs(g.gen[i].m.trace()) - want) > 1e-9 * want)
      throw DomainError("pants_group: trace condition failed");
    g.axis[i] = Geodesic::axis_of(g.gen[i]);
  }
  // Boundary axes must be pairwise disjoint; axis_distance throws otherwise.
  axis_distance(g.axis[0], g.axis[1]);
  axis_distance(g.axis[0], g.axis[2]);
  axis_distance(g.axis[1], g.axis[2]);
  return g;
}

std::array<uint64_t, 3> OrthoGeodesic::unoriented_key() const {
  const Word rev = canonical_coset(to, coset.inverse(), from);
  std::array<uint64_t, 3> fwd{uint64_t(from), uint64_t(to), coset.key()};
  std::array<uint64_t, 3> bwd{uint64_t(to), uint64_t(from), rev.key()};
  return std::min(fwd, bwd);
}

namespace {

struct EnumContext {
  const PantsGroup* group;
  double cutoff;
  int max_len;  // maximum representative length to record
  std::array<Mat2, 3> axis;  // axis vectors
  double min_cosh;           // disjointness guard
};

// tr(X_i W X_j W^-1)/2 without forming the conjugated axis.
double coset_cosh(const EnumContext& cx, int i, const Mat2& w, const Mat2& winv, int j) {
  const Mat2 pi = cx.axis[i] * w;
  const Mat2 qj = cx.axis[j] * winv;
  return 0.5 * (pi.a * qj.a + pi.b * qj.c + pi.c * qj.b + pi.d * qj.d);
}

// Visit one reduced word: record every (i, j) for which it is the canonical
// double-coset representative and the orthogeodesic is within the cutoff.
void visit_word(const EnumContext& cx, const Word& w, const Mat2& mat,
                std::vector<OrthoGeodesic>& out) {
  const Mat2 inv = mat.inverse();
  for (int i = 0; i < 3; ++i) {
    // A canonical representative cannot start with a letter of <g_i>.
    if (i < 2 && w.len > 0 && (w.l[0] >> 1) == i) continue;
    for (int j = 0; j < 3; ++j) {
      if (j < 2 && w.len > 0 && (w.l[w.len - 1] >> 1) == j) continue;
      if (i == j && w.is_empty()) continue;
      if (!is_canonical_coset(i, w, j)) continue;
      const double ch = std::fabs(coset_cosh(cx, i, mat, inv, j));
      if (ch < cx.min_cosh)
        throw std::runtime_error(
            "enumerate_orthogeodesics: crossing translate (group not discrete?)");
      if (ch > std::cosh(cx.cutoff)) continue;
      OrthoGeodesic og;
      og.length = std::acosh(ch);
      og.from = uint8_t(i);
      og.to = uint8_t(j);
      og.coset = w;
      og.rep_len = w.len;
      out.push_back(og);
    }
  }
}

// Renormalize on a schedule tied to the word length alone, so the serial and
// fan-out parallel traversals produce bitwise identical matrices.
Mat2 step_matrix(const EnumContext& cx, const Mat2& mat, uint8_t letter, int new_len) {
  Mat2 nm = mat * cx.group->letter_matrix(letter).m;
  if (new_len % 8 == 0) nm = nm.scaled(1.0 / std::sqrt(nm.det()));
  return nm;
}

void dfs(const EnumContext& cx, const Word& w, const Mat2& mat,
         std::vector<OrthoGeodesic>& out) {
  visit_word(cx, w, mat, out);
  if (w.len >= cx.max_len) return;
  for (uint8_t x = 0; x < 4; ++x) {
    if (w.len > 0 && w.l[w.len - 1] == (x ^ 1)) continue;  // stay reduced
    Word next = w;
    next.l[next.len++] = x;
    dfs(cx, next, step_matrix(cx, mat, x, next.len), out);
  }
}

void sort_entries(std::vector<OrthoGeodesic>& v) {
  std::sort(v.begin(), v.end(), [](const OrthoGeodesic& x, const OrthoGeodesic& y) {
    if (x.length != y.length) return x.length < y.length;
    if (x.from != y.from) return x.from < y.from;
    if (x.to != y.to) return x.to < y.to;
    return x.coset < y.coset;
  });
}

EnumContext make_context(const PantsGroup& g, double cutoff, int depth) {
  if (!(cutoff > 0.0)) throw DomainError("enumerate: cutoff must be > 0");
  if (depth < 1) throw DomainError("enumerate: depth must be >= 1");
  if (depth > 15)
    throw DomainError("enumerate: depth beyond 15 is numerically and "
                      "computationally out of range");
  EnumContext cx;
  cx.group = &g;
  cx.cutoff = cutoff;
  cx.max_len = depth;
  for (int i = 0; i < 3; ++i) cx.axis[i] = g.axis[i].x;
  cx.min_cosh = 1.0 + 1e-9;
  return cx;
}

}  // namespace

std::vector<OrthoGeodesic> enumerate_orthogeodesics_serial(const PantsGroup& g,
                                                           double cutoff, int depth) {
  EnumContext cx = make_context(g, cutoff, depth);
  std::vector<OrthoGeodesic> out;
  dfs(cx, Word::empty(), Mat2{}, out);
  sort_entries(out);
  return out;
}

std::vector<OrthoGeodesic> enumerate_orthogeodesics(const PantsGroup& g, double cutoff,
                                                    int depth) {
  EnumContext cx = make_context(g, cutoff, depth);

  // Words shorter than the fan-out level, then one parallel task per subtree
  // root.  Results are merged and sorted, so the outcome is independent of
  // the thread count.
  const int fan = std::min(4, depth);
  std::vector<std::pair<Word, Mat2>> roots;
  {
    std::vector<std::pair<Word, Mat2>> frontier{{Word::empty(), Mat2{}}};
    for (int level = 0; level < fan; ++level) {
      std::vector<std::pair<Word, Mat2>> next;
      for (const auto& [w, m] : frontier) {
        for (uint8_t x = 0; x < 4; ++x) {
          if (w.len > 0 && w.l[w.len - 1] == (x ^ 1)) continue;
          Word nw = w;
          nw.l[nw.len++] = x;
          next.emplace_back(nw, step_matrix(cx, m, x, nw.len));
        }
      }
      frontier = std::move(next);
    }
    roots = std::move(frontier);
  }

  std::vector<OrthoGeodesic> out;
  {
    EnumContext shallow = cx;
    shallow.max_len = fan - 1;
    dfs(shallow, Word::empty(), Mat2{}, out);
  }

  std::vector<std::vector<OrthoGeodesic>> buckets(roots.size());
#pragma omp parallel for schedule(dynamic)
  for (long r = 0; r < long(roots.size()); ++r) {
    dfs(cx, roots[r].first, roots[r].second, buckets[r]);
  }
  for (auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
  sort_entries(out);
  return out;
}

void OrthoSpectrum::validate() const {
  if (dimension < 2) throw DomainError("OrthoSpectrum: dimension must be >= 2");
  if (!(boundary_volume > 0.0))
    throw DomainError("OrthoSpectrum: boundary_volume must be > 0");
  if (lengths.empty()) throw DomainError("OrthoSpectrum: lengths must be nonempty");
  for (double l : lengths)
    if (!(l > 0.0) || !std::isfinite(l))
      throw DomainError("OrthoSpectrum: lengths must be positive and finite");
  if (!std::is_sorted(lengths.begin(), lengths.end()))
    throw DomainError("OrthoSpectrum: lengths must be sorted ascending");
}

OrthoSpectrum enumerate_orthospectrum(const PantsParams& p, double cutoff, int depth) {
  const PantsGroup g = pants_group(p);
  // One pass at depth+1 suffices for the stability check: the cosets found at
  // word depth d are exactly those whose canonical representative has length
  // <= d, so any entry with rep_len == depth+1 below the cutoff is new.
  const auto entries = enumerate_orthogeodesics(g, cutoff, depth + 1);
  std::size_t fresh = 0;
  for (const auto& e : entries)
    if (e.rep_len > depth) ++fresh;
  if (fresh > 0)
    throw UnstableEnumeration("enumerate_orthospectrum: " + std::to_string(fresh) +
                              " orthogeodesics below cutoff appear only at depth " +
                              std::to_string(depth + 1));
  OrthoSpectrum s;
  s.dimension = 2;
  s.boundary_volume = p.perimeter();
  s.synthetic = false;
  s.truncation_cutoff = cutoff;
  s.lengths.reserve(entries.size());
  for (const auto& e : entries) s.lengths.push_back(e.length);
  std::sort(s.lengths.begin(), s.lengths.end());
  s.validate();
  return s;
}

OrthoSpectrum enumerate_stable(const PantsParams& p, double cutoff, int start_depth,
                               int hard_cap) {
  int depth = start_depth;
  for (;;) {
    try {
      return enumerate_orthospectrum(p, cutoff, depth);
    } catch (const UnstableEnumeration&) {
      if (depth >= hard_cap) throw;
      depth = std::min(2 * depth, hard_cap);
    }
  }
}

OrthoSpectrum load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("load_spectrum: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("load_spectrum: malformed JSON: " + std::string(e.what()));
  }
  OrthoSpectrum s;
  try {
    s.dimension = j.at("dimension").get<int>();
    s.boundary_volume = j.at("boundary_volume").get<double>();
    s.synthetic = j.value("synthetic", false);
    if (j.contains("truncation_cutoff") && !j["truncation_cutoff"].is_null())
      s.truncation_cutoff = j["truncation_cutoff"].get<double>();
    s.lengths = j.at("lengths").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("load_spectrum: schema violation: " + std::string(e.what()));
  }
  std::sort(s.lengths.begin(), s.lengths.end());
  s.validate();
  if (!s.synthetic) {
    // Genuine spectra must respect Basmajian's identity as a partial-sum bound.
    double sum = 0.0;
    for (double l : s.lengths)
      sum += ball_volume(s.dimension - 1, std::log(1.0 / std::tanh(0.5 * l)));
    if (sum > s.boundary_volume * (1.0 + 1e-9))
      throw DomainError("load_spectrum: partial Basmajian sum exceeds boundary volume");
  }
  return s;
}

void save_spectrum(const OrthoSpectrum& s, const std::string& path) {
  s.validate();
  nlohmann::json j;
  j["dimension"] = s.dimension;
  j["boundary_volume"] = s.boundary_volume;
  j["synthetic"] = s.synthetic;
  if (s.truncation_cutoff) j["truncation_cutoff"] = *s.truncation_cutoff;
  j["lengths"] = s.lengths;
  std::ofstream out(path);
  if (!out) throw DomainError("save_spectrum: cannot write " + path);
  out << j.dump(2) << "\n";
}

void save_spectrum_csv(const OrthoSpectrum& s, const std::string& path) {
  s.validate();
  std::ofstream out(path);
  if (!out) throw DomainError("save_spectrum_csv: cannot write " + path);
  out << "length\n";
  char buf[40];
  for (double l : s.lengths) {
    std::snprintf(buf, sizeof buf, "%.17g\n", l);
    out << buf;
  }
}

}  // namespace ortho
