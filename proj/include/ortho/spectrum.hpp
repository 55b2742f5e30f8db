#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ortho/halfplane.hpp"

namespace ortho {

// Reduced word in the free group on g1, g2.  Letters: 0 = g1, 1 = g1^-1,
// 2 = g2, 3 = g2^-1; the inverse letter is letter ^ 1.
struct Word {
  static constexpr int kMaxLen = 40;
  int len = 0;
  std::array<uint8_t, kMaxLen> l{};

  static Word empty() { return {}; }
  static Word letter(uint8_t x) {
    Word w;
    w.l[w.len++] = x;
    return w;
  }

  bool is_empty() const { return len == 0; }

  // Append/prepend with free reduction.
  void push_back(uint8_t x) {
    if (len > 0 && l[len - 1] == (x ^ 1)) {
      --len;
      return;
    }
    if (len >= kMaxLen) throw DomainError("Word: length cap exceeded");
    l[len++] = x;
  }
  void push_front(uint8_t x) {
    if (len > 0 && l[0] == (x ^ 1)) {
      for (int i = 1; i < len; ++i) l[i - 1] = l[i];
      --len;
      return;
    }
    if (len >= kMaxLen) throw DomainError("Word: length cap exceeded");
    for (int i = len; i > 0; --i) l[i] = l[i - 1];
    l[0] = x;
    ++len;
  }

  Word inverse() const {
    Word w;
    w.len = len;
    for (int i = 0; i < len; ++i) w.l[i] = l[len - 1 - i] ^ 1;
    return w;
  }

  // Packed key (2 bits per letter); fits kMaxLen <= 28 words plus length.
  uint64_t key() const {
    uint64_t k = uint64_t(len);
    for (int i = 0; i < len; ++i) k = (k << 2) | l[i];
    return k;
  }

  // Shortlex order.
  friend bool operator<(const Word& x, const Word& y) {
    if (x.len != y.len) return x.len < y.len;
    for (int i = 0; i < x.len; ++i)
      if (x.l[i] != y.l[i]) return x.l[i] < y.l[i];
    return false;
  }
  friend bool operator==(const Word& x, const Word& y) {
    if (x.len != y.len) return false;
    for (int i = 0; i < x.len; ++i)
      if (x.l[i] != y.l[i]) return false;
    return true;
  }

  std::string str() const {
    static constexpr char kNames[4] = {'a', 'A', 'b', 'B'};
    std::string s;
    for (int i = 0; i < len; ++i) s += kNames[l[i]];
    return s;
  }
};

// Boundary geodesic lengths of a hyperbolic pair of pants.
struct PantsParams {
  double l1 = 2.0, l2 = 2.0, l3 = 2.0;

  void validate() const {
    if (!(l1 > 0.0 && l2 > 0.0 && l3 > 0.0))
      throw DomainError("PantsParams: lengths must be positive");
  }
  double perimeter() const { return l1 + l2 + l3; }
};

// Fuchsian pants group: hyperbolic g1, g2 with g3 = (g1 g2)^-1 and
// |tr g_i| = 2 cosh(L_i/2); the b_i are the (pairwise disjoint) axes.
struct PantsGroup {
  PantsParams params;
  std::array<Isometry, 3> gen;    // g1, g2, g3
  std::array<Geodesic, 3> axis;   // b1, b2, b3

  Isometry letter_matrix(uint8_t letter) const {
    return (letter & 1) ? gen[letter >> 1].inverse() : gen[letter >> 1];
  }
  // Letter-by-letter product, renormalized to unit determinant while that is
  // numerically meaningful.  Once entries reach ~1/sqrt(eps) the evaluated
  // determinant carries an eps*|M|^2 floor and rescaling would inject noise,
  // so it is skipped there.
  Isometry word_matrix(const Word& w) const {
    Isometry m = Isometry::identity();
    for (int i = 0; i < w.len; ++i) {
      m = m * letter_matrix(w.l[i]);
      if (i % 6 == 5) {
        const double d = m.m.det();
        if (d > 0.25 && d < 4.0) m = m.normalized();
      }
    }
    const double d = m.m.det();
    return (d > 0.25 && d < 4.0) ? m.normalized() : m;
  }
};

PantsGroup pants_group(const PantsParams& p);

// One oriented orthogeodesic record: the double coset <g_from> word <g_to>
// in canonical (shortlex-minimal) form, its length, and the word length of
// the canonical representative (the depth at which enumeration discovers it).
struct OrthoGeodesic {
  double length;
  uint8_t from, to;  // boundary indices, 0-based
  Word coset;
  int rep_len;

  // Key identifying the underlying unoriented arc: the reverse orientation is
  // the coset <g_to> word^-1 <g_from>.  Purely combinatorial.
  std::array<uint64_t, 3> unoriented_key() const;
};

// All oriented orthogeodesics of length <= cutoff with canonical coset
// representatives of word length <= depth.  Each unoriented arc appears once
// per endpoint (so twice unless degenerate), matching the per-foot spot
// decomposition of the boundary.  Deterministic: sorted by (length, from,
// to, word), independent of thread count.
std::vector<OrthoGeodesic> enumerate_orthogeodesics(const PantsGroup& g, double cutoff,
                                                    int depth);
// Serial reference for the OpenMP path above.
std::vector<OrthoGeodesic> enumerate_orthogeodesics_serial(const PantsGroup& g,
                                                           double cutoff, int depth);

// Truncated orthospectrum with manifold metadata.
struct OrthoSpectrum {
  int dimension = 2;
  double boundary_volume = 0.0;
  bool synthetic = false;
  std::optional<double> truncation_cutoff;
  std::vector<double> lengths;  // ascending

  void validate() const;
};

// Enumerate the pants orthospectrum up to the length cutoff using coset
// representatives of word length <= depth.  Throws UnstableEnumeration if the
// spectrum below the cutoff still changes between depth and depth + 1.
OrthoSpectrum enumerate_orthospectrum(const PantsParams& p, double cutoff, int depth);

// Depth heuristic: start at start_depth, double until stable, hard cap.
OrthoSpectrum enumerate_stable(const PantsParams& p, double cutoff, int start_depth = 6,
                               int hard_cap = 12);

OrthoSpectrum load_spectrum(const std::string& path);
void save_spectrum(const OrthoSpectrum& s, const std::string& path);
void save_spectrum_csv(const OrthoSpectrum& s, const std::string& path);

}  // namespace ortho
