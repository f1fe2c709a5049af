#pragma once

#include <compare>
#include <map>
#include <stdexcept>

#include "sppkit/types.hpp"

/// Two-mode Fock-space engine in the circular basis |n+, n->.
///
/// Angular momentum is L = n+ - n-. The phase harmonic e^{ik phi} raises L by k.
/// Occupations map to LG labels by p = min(n+, n-), l = n+ - n-, with
/// C_pl = (-1)^p a_{n+ n-}.
namespace sppkit::quantum {

struct CircularOccupation {
  int n_plus = 0;
  int n_minus = 0;

  int total() const { return n_plus + n_minus; }
  int angular_momentum() const { return n_plus - n_minus; }
  friend auto operator<=>(const CircularOccupation&, const CircularOccupation&) = default;
};

/// Sparse two-mode state. Zero amplitudes are not stored.
struct TwoModeState {
  std::map<CircularOccupation, Complex> amplitudes;
  /// Power removed by truncating operations since construction.
  double lost_power = 0.0;
  /// Ladder terms skipped because their target occupation was not integral.
  long dropped_non_integral = 0;

  static TwoModeState vacuum();

  Complex operator[](CircularOccupation occ) const {
    auto it = amplitudes.find(occ);
    return it == amplitudes.end() ? Complex{} : it->second;
  }
  void add(CircularOccupation occ, Complex a);
  /// sum |a|^2
  double norm() const;
};

/// Cutoffs for the infinite sums of the operator expansion.
/// k_max bounds the harmonic index. m_max caps the growing occupation of each
/// harmonic: output n+ for k >= 0, output n- for k < 0. tail_tol bounds the
/// power an operation may lose relative to its input before it throws.
struct OperatorTruncation {
  int k_max = 40;
  int m_max = 60;
  double tail_tol = 0.1;
};

/// Occupation cutoff for coherent states.
struct CoherentCutoff {
  int max_occupation = 40;
  double amplitude_floor = 1e-16;
};

class TruncationOverflow : public std::runtime_error {
 public:
  TruncationOverflow(const std::string& what, double lost) : std::runtime_error(what), lost_(lost) {}
  double lost() const { return lost_; }

 private:
  double lost_;
};

class NonIntegralTarget : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Single-mode result a|n> -> factor |target>. factor is 0 when target < 0.
struct LadderResult {
  int target = 0;
  double factor = 0.0;
};

/// a^alpha (a^dagger)^beta |n> = Gamma(1+n+beta) / sqrt(n! Gamma(1+n+beta-alpha)) |n+beta-alpha>.
/// Throws NonIntegralTarget if n+beta-alpha is further than 1e-9 from an integer,
/// and specfun::GammaPole if 1+n+beta is a pole.
LadderResult rational_ladder_na(int n, double alpha, double beta);

/// (a^dagger)^beta a^alpha |n> = sqrt(n! Gamma(1+n+beta-alpha)) / Gamma(1+n-alpha) |n+beta-alpha>.
LadderResult rational_ladder_an(int n, double alpha, double beta);

/// a+^{dagger i} a-^{alpha} a+^{h} a-^{dagger beta}: integer powers on mode (+),
/// rational powers on mode (-) in annihilation-left order.
struct LadderMonomial {
  int plus_create = 0;
  double minus_annihilate = 0.0;
  int plus_annihilate = 0;
  double minus_create = 0.0;
};

/// weight * monomial applied to state. Terms with a non-integral target are
/// dropped and counted in dropped_non_integral.
TwoModeState apply_monomial(const TwoModeState& state, const LadderMonomial& mono, Complex weight);

/// <n_out|<m_out| e^{ik phi} |m_in>|n_in>, n on mode (-), m on mode (+).
/// Nonzero only when n_out - m_out = n_in - m_in - k.
double phase_op_matrix_element(int k, int n_out, int m_out, int m_in, int n_in);

/// Which binomial factor ordering is applied to the vacuum first.
enum class VacuumGrouping {
  CreationFirst,      // (a- + a+^dagger)^{k/2} (a-^dagger + a+)^{-k/2}: labels |m, m-k>
  AnnihilationFirst,  // the reversed product: labels |h+k, h>
};

/// Amplitude of |out> in e^{ik phi}|0,0>. Zero outside the L = k sector.
double vacuum_harmonic_coefficient(int k, CircularOccupation out, VacuumGrouping grouping);

/// e^{ik phi} applied termwise. Throws TruncationOverflow when the lost power
/// exceeds tail_tol times the input norm.
TwoModeState apply_phase_harmonic(const TwoModeState& state, int k, const OperatorTruncation& trunc);

/// The same harmonic as the literal double binomial series of ladder monomials,
/// summed with apply_monomial. Defined for odd k only (even k has 0 * pole terms);
/// throws std::domain_error otherwise.
TwoModeState apply_phase_harmonic_series(const TwoModeState& state, int k,
                                         const OperatorTruncation& trunc);

/// sum_{|k| <= k_max} sinc_phase(q, k) e^{ik phi} applied to state. Harmonics
/// are evaluated concurrently and merged in k order.
TwoModeState apply_spp_operator(const TwoModeState& state, double q, const OperatorTruncation& trunc);

/// D(alpha+) D(alpha-)|0,0> with alpha+ = |alpha| e^{-i phi0}, alpha- = conj(alpha+).
TwoModeState displace_vacuum(double alpha_mag, double phi0, const CoherentCutoff& cutoff = {});

/// LG spectrum of a state: C_pl = (-1)^p a_{n+ n-}.
SpectralDecomposition state_to_lg_coeffs(const TwoModeState& state, double w0);

/// Displaced vacuum through the plate via apply_spp_operator.
TwoModeState displaced_spp_quantum(double q, double alpha_mag, double phi0,
                                   const OperatorTruncation& trunc, const CoherentCutoff& cutoff = {});

/// The same state through the reindexed closed form: every (input, output)
/// pair weighted by Gamma((|l|+|k|)/2 + 1) times a finite sum of half-integer binomials.
/// Uses the same output window as the operational path.
TwoModeState displaced_spp_quantum_closed_form(double q, double alpha_mag, double phi0,
                                               const OperatorTruncation& trunc,
                                               const CoherentCutoff& cutoff = {});

/// <z, zbar | n+, n-> for z = z_re + i z_im.
Complex position_amplitude(CircularOccupation occ, double z_re, double z_im);

namespace detail {
/// Matrix element from the literal Gamma-function form, odd k (either sign) or k = 0.
double phase_op_matrix_element_literal(int k, int n_out, int m_out, int m_in, int n_in);
}  // namespace detail

}  // namespace sppkit::quantum
