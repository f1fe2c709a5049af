#include "sppkit/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <set>
#include <vector>

#include "sppkit/specfun.hpp"

namespace sppkit::oracle {

namespace {

// L_n^alpha(x) and L_{n-1}^alpha(x), both divided by e^{log_scale}.
struct ScaledLaguerre {
  double ln;
  double ln_minus_1;
  double log_scale;
};

ScaledLaguerre laguerre_pair(int n, double alpha, double x) {
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  double log_scale = 0.0;
  if (n == 0) return {1.0, 0.0, 0.0};
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e200) {
      prev *= 1e-200;
      cur *= 1e-200;
      log_scale += 200.0 * std::log(10.0);
    }
  }
  return {cur, prev, log_scale};
}

}  // namespace

GaussRule gauss_laguerre(int n, double alpha) {
  if (n < 1 || !(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre: need n >= 1, alpha > -1");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + alpha + 1.0;
  for (int i = 1; i < n; ++i) sub(i - 1) = std::sqrt(i * (i + alpha));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  GaussRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights.resize(n);
  const double log_head = specfun::log_abs_gamma(n + alpha + 1.0) - specfun::log_factorial(n);
  for (int j = 0; j < n; ++j) {
    double x = rule.nodes(j);
    double log_deriv = 0.0;
    for (int iter = 0; iter < 4; ++iter) {
      const ScaledLaguerre l = laguerre_pair(n, alpha, x);
      const double deriv = (n * l.ln - (n + alpha) * l.ln_minus_1) / x;
      log_deriv = std::log(std::abs(deriv)) + l.log_scale;
      const double step = l.ln / deriv;
      x -= step;
      if (std::abs(step) <= 1e-16 * x) break;
    }
    const ScaledLaguerre l = laguerre_pair(n, alpha, x);
    log_deriv = std::log(std::abs((n * l.ln - (n + alpha) * l.ln_minus_1) / x)) + l.log_scale;
    rule.nodes(j) = x;
    rule.weights(j) = std::exp(log_head - std::log(x) - 2.0 * log_deriv);
  }
  return rule;
}

OverlapProjector::OverlapProjector(AzimuthalField field, double w0, QuadratureSpec spec)
    : field_(std::move(field)), w0_(w0), spec_(spec) {
  if (!(w0 > 0.0)) throw std::invalid_argument("OverlapProjector: waist must be positive");
  if (spec.radial_nodes < 1 || spec.azimuthal_nodes < 4 || spec.azimuthal_nodes % 2 != 0) {
    throw std::invalid_argument("OverlapProjector: need >= 1 radial and an even number >= 4 of azimuthal nodes");
  }
}

const OverlapProjector::Harmonics& OverlapProjector::harmonics(int twice_alpha, int n_radial,
                                                               int n_phi) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto key = std::make_tuple(twice_alpha, n_radial, n_phi);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  Harmonics h;
  h.rule = gauss_laguerre(n_radial, 0.5 * twice_alpha);
  h.values = Eigen::MatrixXcd::Zero(n_radial, n_phi);
  std::vector<Complex> twiddle(n_phi);
  for (int t = 0; t < n_phi; ++t) twiddle[t] = std::polar(1.0, -2.0 * kPi * t / n_phi);
  std::vector<Complex> samples(n_phi);
  for (int j = 0; j < n_radial; ++j) {
    const double r = w0_ * std::sqrt(0.5 * h.rule.nodes(j));
    for (int t = 0; t < n_phi; ++t) samples[t] = field_.smooth(r, 2.0 * kPi * t / n_phi);
    for (int col = 0; col < n_phi; ++col) {
      const int m = col - n_phi / 2;
      const int step = ((m % n_phi) + n_phi) % n_phi;
      Complex acc{};
      for (int t = 0; t < n_phi; ++t) acc += samples[t] * twiddle[(static_cast<long>(step) * t) % n_phi];
      h.values(j, col) = acc / static_cast<double>(n_phi);
    }
  }
  return cache_.emplace(key, std::move(h)).first->second;
}

Complex OverlapProjector::evaluate(ModeIndex idx, int n_radial, int n_phi) const {
  const int a = std::abs(idx.l);
  // r dr = (w0^2 / 4) dx; u_pl radial prefactor sqrt(2/pi)/w0 sqrt(p!/(p+a)!).
  const double prefactor = 0.25 * w0_ * std::sqrt(2.0 / kPi) *
                           std::exp(0.5 * (specfun::log_factorial(idx.p) - specfun::log_factorial(idx.p + a)));
  Complex total{};
  for (int parity = 0; parity <= 1; ++parity) {
    // Weight x^{(a+parity)/2} e^{-x} absorbs the half-integer powers of harmonics
    // of this parity, leaving a smooth remainder.
    const Harmonics& h = harmonics(a + parity, n_radial, n_phi);
    std::vector<double> g(n_radial);
    for (int j = 0; j < n_radial; ++j) {
      const double x = h.rule.nodes(j);
      g[j] = h.rule.weights(j) * std::exp(0.5 * x) * std::pow(x, -0.5 * parity) *
             specfun::laguerre(idx.p, a, x);
    }
    for (int col = 0; col < n_phi; ++col) {
      const int m = col - n_phi / 2;
      if (std::abs(m) % 2 != parity) continue;
      const Complex azimuthal = 2.0 * kPi * specfun::sinc_phase(field_.phase_charge, idx.l - m);
      if (azimuthal == Complex{}) continue;
      Complex radial{};
      for (int j = 0; j < n_radial; ++j) radial += g[j] * h.values(j, col);
      total += azimuthal * radial;
    }
  }
  return prefactor * total;
}

OverlapResult OverlapProjector::coefficient(ModeIndex idx) const {
  const Complex coarse = evaluate(idx, spec_.radial_nodes, spec_.azimuthal_nodes);
  const Complex fine = evaluate(idx, 2 * spec_.radial_nodes, 2 * spec_.azimuthal_nodes);
  return {fine, std::abs(fine - coarse)};
}

SpectralDecomposition OverlapProjector::project(const IndexWindow& window) const {
  if (!spec_.adequate_for(window.l_max, field_.phase_charge)) {
    throw std::invalid_argument("OverlapProjector: too few azimuthal nodes for the window");
  }
  SpectralDecomposition d;
  d.w0 = w0_;
  d.q = field_.phase_charge;
  d.truncation.p_max = window.p_max;
  d.truncation.l_max = window.l_max;
  for (int l = -window.l_max; l <= window.l_max; ++l) {
    for (int p = 0; p <= window.p_max; ++p) {
      const OverlapResult r = coefficient({p, l});
      if (r.error_estimate > spec_.target_tol) {
        throw NotConverged("overlap (" + std::to_string(p) + ", " + std::to_string(l) + ") not converged",
                           r.error_estimate);
      }
      d.set({p, l}, r.value);
    }
  }
  d.refresh_power();
  return d;
}

Complex overlap_coefficient(const AzimuthalField& field, ModeIndex idx, double w0,
                            const QuadratureSpec& spec) {
  const OverlapProjector projector(field, w0, spec);
  const OverlapResult r = projector.coefficient(idx);
  if (r.error_estimate > spec.target_tol) throw NotConverged("overlap not converged", r.error_estimate);
  return r.value;
}

double kernel_quadrature(int p, int h, int l, int k, const QuadratureSpec& spec) {
  if (p < 0 || h < 0) throw std::invalid_argument("kernel_quadrature: negative radial index");
  const int al = std::abs(l);
  const int ak = std::abs(k);
  const double alpha = 0.5 * (al + ak);
  auto integrate = [&](int n) {
    const GaussRule rule = gauss_laguerre(n, alpha);
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = rule.nodes(j);
      s += rule.weights(j) * specfun::laguerre(p, al, x) * specfun::laguerre(h, ak, x);
    }
    return s;
  };
  const int n = std::max(spec.radial_nodes, (p + h) / 2 + 2);
  const double coarse = integrate(n);
  const double fine = integrate(2 * n);
  const double estimate = std::abs(fine - coarse) / std::max(1.0, std::abs(fine));
  if (estimate > spec.target_tol) throw NotConverged("kernel quadrature not converged", estimate);
  return fine;
}

EquivalenceReport compare_decompositions(const SpectralDecomposition& a, const SpectralDecomposition& b,
                                         const std::optional<IndexWindow>& window) {
  std::set<ModeIndex> keys;
  for (const auto& [idx, c] : a.entries) keys.insert(idx);
  for (const auto& [idx, c] : b.entries) keys.insert(idx);
  EquivalenceReport report;
  double pa = 0.0;
  double pb = 0.0;
  for (const ModeIndex& idx : keys) {
    if (window && !window->contains(idx)) continue;
    const Complex ca = a[idx];
    const Complex cb = b[idx];
    const double diff = std::abs(ca - cb);
    if (report.n_compared == 0 || diff > report.max_abs_diff) {
      report.max_abs_diff = diff;
      report.worst_index = idx;
    }
    pa += std::norm(ca);
    pb += std::norm(cb);
    ++report.n_compared;
  }
  report.power_diff = pa - pb;
  return report;
}

EquivalenceReport equivalence_report(const SpectralDecomposition& classical,
                                     const quantum::TwoModeState& state, double w0,
                                     const std::optional<IndexWindow>& window) {
  if (std::abs(classical.w0 - w0) > 1e-12 * std::max(std::abs(w0), std::abs(classical.w0))) {
    throw std::invalid_argument("equivalence_report: basis waists differ");
  }
  return compare_decompositions(classical, quantum::state_to_lg_coeffs(state, w0), window);
}

}  // namespace sppkit::oracle
