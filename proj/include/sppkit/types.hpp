#pragma once

#include <compare>
#include <complex>
#include <map>
#include <optional>

namespace sppkit {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Laguerre-Gaussian mode label: radial index p >= 0, azimuthal (orbital) index l.
struct ModeIndex {
  int p = 0;
  int l = 0;

  friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

/// Truncation of the infinite (p, l) sums. k_max is the harmonic cutoff used
/// when a decomposition is produced through the operator expansion.
struct TruncationPolicy {
  int p_max = 40;
  int l_max = 40;
  double series_tol = 1e-12;
  int k_max = 40;

  bool contains(ModeIndex idx) const {
    return idx.p >= 0 && idx.p <= p_max && idx.l >= -l_max && idx.l <= l_max;
  }
};

/// Square window p <= p_max, |l| <= l_max used when two decompositions are aligned.
struct IndexWindow {
  int p_max = 10;
  int l_max = 10;

  bool contains(ModeIndex idx) const {
    return idx.p >= 0 && idx.p <= p_max && idx.l >= -l_max && idx.l <= l_max;
  }
};

/// Sparse LG spectrum at the waist for a fixed basis waist w0.
/// Entries that are exactly zero are not stored.
struct SpectralDecomposition {
  std::map<ModeIndex, Complex> entries;
  double w0 = 1.0;
  double q = 0.0;
  TruncationPolicy truncation;
  double captured_power = 0.0;

  Complex operator[](ModeIndex idx) const {
    auto it = entries.find(idx);
    return it == entries.end() ? Complex{} : it->second;
  }

  double power() const {
    double s = 0.0;
    for (const auto& [idx, c] : entries) s += std::norm(c);
    return s;
  }

  double lost_power() const { return 1.0 - captured_power; }

  /// Stores c at idx, or erases idx when c is exactly zero.
  void set(ModeIndex idx, Complex c) {
    if (c == Complex{}) {
      entries.erase(idx);
    } else {
      entries[idx] = c;
    }
  }

  void refresh_power() { captured_power = power(); }
};

SpectralDecomposition operator+(const SpectralDecomposition& a, const SpectralDecomposition& b);
SpectralDecomposition operator*(Complex s, const SpectralDecomposition& a);

}  // namespace sppkit
