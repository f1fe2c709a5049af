#include "sppkit/quantum.hpp"

#include <cmath>
#include <vector>

#include "sppkit/parallel.hpp"
#include "sppkit/specfun.hpp"

namespace sppkit::quantum {

using specfun::log_factorial;

TwoModeState TwoModeState::vacuum() {
  TwoModeState s;
  s.amplitudes[{0, 0}] = 1.0;
  return s;
}

void TwoModeState::add(CircularOccupation occ, Complex a) {
  if (a == Complex{}) return;
  auto [it, inserted] = amplitudes.try_emplace(occ, a);
  if (!inserted) {
    it->second += a;
    if (it->second == Complex{}) amplitudes.erase(it);
  }
}

double TwoModeState::norm() const {
  double s = 0.0;
  for (const auto& [occ, a] : amplitudes) s += std::norm(a);
  return s;
}

namespace {

int checked_target(double n_real) {
  const double rounded = std::round(n_real);
  if (std::abs(n_real - rounded) > 1e-9) {
    throw NonIntegralTarget("ladder target occupation " + std::to_string(n_real) + " is not an integer");
  }
  return static_cast<int>(rounded);
}

bool is_odd(int k) { return k % 2 != 0; }

// r (r-1) ... (r-n+1) / sqrt(n!), as a running product so that neither
// factor overflows on its own.
double falling_over_sqrt_factorial(double r, int n) {
  double prod = 1.0;
  for (int j = 0; j < n; ++j) prod *= (r - j) / std::sqrt(j + 1.0);
  return prod;
}

// <npo, nmo| e^{ik phi} |npi, nmi> for k >= 0, with the pole pairs
// Gamma(1+nmi-k/2-h) / Gamma(1+k/2-i) folded into one falling product.
double element_nonneg(int k, int npo, int nmo, int npi, int nmi) {
  const int d = npo - npi;
  if (npo < 0 || nmo < 0 || npi < 0 || nmi < 0 || nmo != nmi + d - k) return 0.0;
  const double kappa = 0.5 * k;
  const double gamma_kappa = specfun::gamma(1.0 + kappa);
  double total = 0.0;
  for (int h = std::max(0, -d); h <= npi; ++h) {
    const int i = h + d;
    const double binom_h = specfun::gen_binomial(-kappa, h);
    if (binom_h == 0.0) break;  // (-k/2)_h vanishes for every larger h as well
    const double tail = falling_over_sqrt_factorial(nmi - kappa - h, nmo);
    if (tail == 0.0) continue;
    const double log_ratio = 0.5 * (log_factorial(npi) + log_factorial(npo)) -
                             log_factorial(npi - h) - log_factorial(i) - 0.5 * log_factorial(nmi);
    total += gamma_kappa * binom_h * tail * std::exp(log_ratio);
  }
  return total;
}

// Number of (+) quanta after a+^{dagger i} a+^h, and the factor it picks up.
double plus_mode_factor(int m, int create, int annihilate, int& target) {
  if (annihilate > m) {
    target = -1;
    return 0.0;
  }
  target = m - annihilate + create;
  return std::exp(0.5 * (log_factorial(m) + log_factorial(target)) - log_factorial(m - annihilate));
}

TwoModeState apply_harmonic_unchecked(const TwoModeState& state, int k, int m_max) {
  TwoModeState out;
  out.dropped_non_integral = state.dropped_non_integral;
  for (const auto& [occ, a] : state.amplitudes) {
    const int np = occ.n_plus;
    const int nm = occ.n_minus;
    if (k >= 0) {
      for (int npo = std::max(0, np - nm + k); npo <= m_max; ++npo) {
        const int nmo = nm + npo - np - k;
        const double e = element_nonneg(k, npo, nmo, np, nm);
        if (e != 0.0) out.add({npo, nmo}, a * e);
      }
    } else {
      const int kk = -k;
      for (int nmo = std::max(0, nm - np + kk); nmo <= m_max; ++nmo) {
        const int npo = np + nmo - nm - kk;
        // Negative harmonics are the transpose of the positive ones (real elements).
        const double e = element_nonneg(kk, np, nm, npo, nmo);
        if (e != 0.0) out.add({npo, nmo}, a * e);
      }
    }
  }
  out.lost_power = state.lost_power + (state.norm() - out.norm());
  return out;
}

void require_within_tail(double lost, double input_norm, double tail_tol, const char* what) {
  if (lost > tail_tol * input_norm) {
    throw TruncationOverflow(std::string(what) + ": truncation lost power " + std::to_string(lost) +
                                 " exceeds tail_tol",
                             lost);
  }
}

}  // namespace

LadderResult rational_ladder_na(int n, double alpha, double beta) {
  if (n < 0) throw std::invalid_argument("rational_ladder_na: negative occupation");
  LadderResult r;
  r.target = checked_target(n + beta - alpha);
  if (r.target < 0) return r;
  r.factor = specfun::gamma(1.0 + n + beta) /
             std::exp(0.5 * (log_factorial(n) + log_factorial(r.target)));
  return r;
}

LadderResult rational_ladder_an(int n, double alpha, double beta) {
  if (n < 0) throw std::invalid_argument("rational_ladder_an: negative occupation");
  LadderResult r;
  r.target = checked_target(n + beta - alpha);
  if (r.target < 0) return r;
  r.factor = std::exp(0.5 * (log_factorial(n) + log_factorial(r.target))) *
             specfun::reciprocal_gamma(1.0 + n - alpha);
  return r;
}

TwoModeState apply_monomial(const TwoModeState& state, const LadderMonomial& mono, Complex weight) {
  TwoModeState out;
  out.dropped_non_integral = state.dropped_non_integral;
  out.lost_power = state.lost_power;
  for (const auto& [occ, a] : state.amplitudes) {
    int np_out = 0;
    const double plus = plus_mode_factor(occ.n_plus, mono.plus_create, mono.plus_annihilate, np_out);
    if (plus == 0.0) continue;
    LadderResult minus;
    try {
      minus = rational_ladder_na(occ.n_minus, mono.minus_annihilate, mono.minus_create);
    } catch (const NonIntegralTarget&) {
      ++out.dropped_non_integral;
      continue;
    }
    if (minus.factor == 0.0) continue;
    out.add({np_out, minus.target}, weight * a * plus * minus.factor);
  }
  return out;
}

double phase_op_matrix_element(int k, int n_out, int m_out, int m_in, int n_in) {
  if (k >= 0) return element_nonneg(k, m_out, n_out, m_in, n_in);
  return element_nonneg(-k, m_in, n_in, m_out, n_out);
}

namespace detail {

double phase_op_matrix_element_literal(int k, int n_out, int m_out, int m_in, int n_in) {
  if (k != 0 && !is_odd(k)) throw std::domain_error("literal matrix element needs odd k");
  if (n_out < 0 || m_out < 0 || m_in < 0 || n_in < 0) return 0.0;
  const double kappa = 0.5 * k;
  double total = 0.0;
  for (int h = 0; h <= m_in; ++h) {
    const int i = m_out - m_in + h;
    if (i < 0 || n_out != n_in + i - h - k) continue;
    total += specfun::gen_binomial(kappa, i) * specfun::gen_binomial(-kappa, h) *
             std::sqrt(specfun::factorial(m_in) * specfun::factorial(m_out)) /
             specfun::factorial(m_in - h) * specfun::gamma(1.0 + n_in - kappa - h) /
             std::sqrt(specfun::factorial(n_in) * specfun::factorial(n_out));
  }
  return total;
}

}  // namespace detail

double vacuum_harmonic_coefficient(int k, CircularOccupation out, VacuumGrouping grouping) {
  if (out.n_plus < 0 || out.n_minus < 0 || out.angular_momentum() != k) return 0.0;
  const double kappa = 0.5 * k;
  const double norm = std::exp(-0.5 * (log_factorial(out.n_plus) + log_factorial(out.n_minus)));
  if (is_odd(k)) {
    // Gamma(1+k/2) Gamma(1-k/2) / Gamma(...): no poles at half-integer k/2.
    const double pair = specfun::gamma(1.0 + kappa) * specfun::gamma(1.0 - kappa);
    const double tail = grouping == VacuumGrouping::CreationFirst
                            ? specfun::reciprocal_gamma(1.0 + kappa - out.n_plus)
                            : specfun::reciprocal_gamma(1.0 - kappa - out.n_minus);
    return pair * tail * norm;
  }
  // Even k: pair the finite Gamma with the pole-cancelling ratio as a falling product.
  const int steps = grouping == VacuumGrouping::CreationFirst
                        ? (k >= 0 ? out.n_plus - k : out.n_plus)
                        : (k >= 0 ? out.n_minus : out.n_minus + k);
  if (k >= 0) return specfun::gamma(1.0 + kappa) * specfun::pochhammer_falling(-kappa, steps) * norm;
  return specfun::gamma(1.0 - kappa) * specfun::pochhammer_falling(kappa, steps) * norm;
}

TwoModeState apply_phase_harmonic(const TwoModeState& state, int k, const OperatorTruncation& trunc) {
  TwoModeState out = apply_harmonic_unchecked(state, k, trunc.m_max);
  require_within_tail(out.lost_power - state.lost_power, state.norm(), trunc.tail_tol,
                      "apply_phase_harmonic");
  return out;
}

TwoModeState apply_phase_harmonic_series(const TwoModeState& state, int k,
                                         const OperatorTruncation& trunc) {
  if (k != 0 && !is_odd(k)) throw std::domain_error("binomial series form needs odd k");
  const double kappa = 0.5 * k;
  TwoModeState out;
  out.dropped_non_integral = state.dropped_non_integral;
  for (const auto& [occ, a] : state.amplitudes) {
    TwoModeState single;
    single.amplitudes[occ] = a;
    for (int h = 0; h <= occ.n_plus; ++h) {
      const double bh = specfun::gen_binomial(-kappa, h);
      if (bh == 0.0) break;
      // Output n+ = n+ - h + i for k >= 0, output n- = n- + i - h - k for k < 0.
      const int i_max = k >= 0 ? trunc.m_max - occ.n_plus + h : trunc.m_max - occ.n_minus + h + k;
      for (int i = 0; i <= i_max; ++i) {
        const double bi = specfun::gen_binomial(kappa, i);
        if (bi == 0.0) continue;
        const LadderMonomial mono{i, kappa - i, h, -kappa - h};
        const TwoModeState term = apply_monomial(single, mono, bi * bh);
        out.dropped_non_integral += term.dropped_non_integral - single.dropped_non_integral;
        for (const auto& [o, c] : term.amplitudes) out.add(o, c);
      }
    }
  }
  out.lost_power = state.lost_power + (state.norm() - out.norm());
  return out;
}

TwoModeState apply_spp_operator(const TwoModeState& state, double q, const OperatorTruncation& trunc) {
  if (trunc.k_max < 0 || trunc.m_max < 0) throw std::invalid_argument("negative operator truncation");
  std::vector<int> ks;
  std::vector<Complex> weights;
  for (int k = -trunc.k_max; k <= trunc.k_max; ++k) {
    const Complex w = specfun::sinc_phase(q, k);
    if (w == Complex{}) continue;
    ks.push_back(k);
    weights.push_back(w);
  }
  std::vector<TwoModeState> parts(ks.size());
  parallel_for(ks.size(), [&](std::size_t j) { parts[j] = apply_harmonic_unchecked(state, ks[j], trunc.m_max); });

  TwoModeState out;
  out.dropped_non_integral = state.dropped_non_integral;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (const auto& [occ, a] : parts[j].amplitudes) out.add(occ, weights[j] * a);
  }
  const double lost = state.norm() - out.norm();
  out.lost_power = state.lost_power + lost;
  require_within_tail(lost, state.norm(), trunc.tail_tol, "apply_spp_operator");
  return out;
}

TwoModeState displace_vacuum(double alpha_mag, double phi0, const CoherentCutoff& cutoff) {
  if (!(alpha_mag >= 0.0)) throw std::invalid_argument("displace_vacuum: negative amplitude");
  if (alpha_mag == 0.0) return TwoModeState::vacuum();
  TwoModeState s;
  const double log_alpha = std::log(alpha_mag);
  const double a2 = alpha_mag * alpha_mag;
  for (int np = 0; np <= cutoff.max_occupation; ++np) {
    for (int nm = 0; nm <= cutoff.max_occupation; ++nm) {
      const double mag = std::exp(-a2 + (np + nm) * log_alpha -
                                  0.5 * (log_factorial(np) + log_factorial(nm)));
      if (mag < cutoff.amplitude_floor) continue;
      s.add({np, nm}, std::polar(mag, -(np - nm) * phi0));
    }
  }
  s.lost_power = std::max(0.0, 1.0 - s.norm());
  return s;
}

SpectralDecomposition state_to_lg_coeffs(const TwoModeState& state, double w0) {
  SpectralDecomposition d;
  d.w0 = w0;
  d.truncation.p_max = 0;
  d.truncation.l_max = 0;
  for (const auto& [occ, a] : state.amplitudes) {
    const int p = std::min(occ.n_plus, occ.n_minus);
    const int l = occ.angular_momentum();
    d.set({p, l}, (p % 2 == 0) ? a : -a);
    d.truncation.p_max = std::max(d.truncation.p_max, p);
    d.truncation.l_max = std::max(d.truncation.l_max, std::abs(l));
  }
  d.refresh_power();
  return d;
}

TwoModeState displaced_spp_quantum(double q, double alpha_mag, double phi0,
                                   const OperatorTruncation& trunc, const CoherentCutoff& cutoff) {
  return apply_spp_operator(displace_vacuum(alpha_mag, phi0, cutoff), q, trunc);
}

TwoModeState displaced_spp_quantum_closed_form(double q, double alpha_mag, double phi0,
                                               const OperatorTruncation& trunc,
                                               const CoherentCutoff& cutoff) {
  const TwoModeState input = displace_vacuum(alpha_mag, phi0, cutoff);
  TwoModeState out;
  for (int dk = -trunc.k_max; dk <= trunc.k_max; ++dk) {
    const Complex w = specfun::sinc_phase(q, dk);
    if (w == Complex{}) continue;
    for (const auto& [occ, a] : input.amplitudes) {
      const int p = std::min(occ.n_plus, occ.n_minus);
      const int l = occ.angular_momentum();
      const int k = l + dk;
      const int ak = std::abs(k);
      for (int h = 0;; ++h) {
        const CircularOccupation target = k >= 0 ? CircularOccupation{h + k, h} : CircularOccupation{h, h + ak};
        const int grown = dk >= 0 ? target.n_plus : target.n_minus;
        if (grown > trunc.m_max) break;
        // Connection coefficient between LG radial families; the (-1)^(p+h)
        // of the kernel cancels against the occupation-to-LG signs.
        const double sign = ((p + h) % 2 == 0) ? 1.0 : -1.0;
        const double norm = std::exp(0.5 * (log_factorial(p) + log_factorial(h) -
                                            log_factorial(p + std::abs(l)) - log_factorial(h + ak)));
        const double e = sign * norm * specfun::coupling_kernel(p, h, l, k);
        if (e != 0.0) out.add(target, w * a * e);
      }
    }
  }
  const double lost = input.norm() - out.norm();
  out.lost_power = input.lost_power + lost;
  require_within_tail(lost, input.norm(), trunc.tail_tol, "displaced_spp_quantum_closed_form");
  return out;
}

Complex position_amplitude(CircularOccupation occ, double z_re, double z_im) {
  const int lo = std::min(occ.n_plus, occ.n_minus);
  const int hi = std::max(occ.n_plus, occ.n_minus);
  const int dl = hi - lo;
  const Complex z(z_re, z_im);
  const Complex w = occ.n_plus >= occ.n_minus ? z : std::conj(z);
  const double zz = std::norm(z);
  const double sign = (lo % 2 == 0) ? 1.0 : -1.0;
  const double scale = std::exp(0.5 * (log_factorial(lo) - log_factorial(hi)) - 0.5 * zz) / std::sqrt(kPi);
  Complex wpow{1.0, 0.0};
  for (int j = 0; j < dl; ++j) wpow *= w;
  return sign * scale * wpow * specfun::laguerre(lo, dl, zz);
}

}  // namespace sppkit::quantum
