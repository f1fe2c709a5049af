#include "sppkit/classical.hpp"

#include <cmath>
#include <stdexcept>

#include "sppkit/parallel.hpp"
#include "sppkit/specfun.hpp"

namespace sppkit {

SpectralDecomposition operator+(const SpectralDecomposition& a, const SpectralDecomposition& b) {
  SpectralDecomposition out = a;
  for (const auto& [idx, c] : b.entries) out.set(idx, out[idx] + c);
  out.refresh_power();
  return out;
}

SpectralDecomposition operator*(Complex s, const SpectralDecomposition& a) {
  SpectralDecomposition out = a;
  out.entries.clear();
  for (const auto& [idx, c] : a.entries) out.set(idx, s * c);
  out.refresh_power();
  return out;
}

}  // namespace sppkit

namespace sppkit::classical {

namespace {

void require_geometry(double r0, double w0) {
  if (!(w0 > 0.0)) throw std::invalid_argument("waist must be positive");
  if (!(r0 >= 0.0)) throw std::invalid_argument("displacement must be non-negative");
}

SpectralDecomposition empty_like(double q, double w0, const TruncationPolicy& trunc) {
  SpectralDecomposition d;
  d.w0 = w0;
  d.q = q;
  d.truncation = trunc;
  return d;
}

// (|l|/2) Gamma(|l|/2 + p) / sqrt(p! (p+|l|)!), l != 0.
double onaxis_radial(int p, int a) {
  const double log_mag = specfun::log_abs_gamma(0.5 * a + p) -
                         0.5 * (specfun::log_factorial(p) + specfun::log_factorial(p + a));
  return 0.5 * a * std::exp(log_mag);
}

// sqrt(p! h! / ((p+|l|)! (h+|k|)!))
double kernel_norm(int p, int h, int l, int k) {
  return std::exp(0.5 * (specfun::log_factorial(p) + specfun::log_factorial(h) -
                         specfun::log_factorial(p + std::abs(l)) -
                         specfun::log_factorial(h + std::abs(k))));
}

}  // namespace

SpectralDecomposition gaussian_spp_coeffs(double q, const TruncationPolicy& trunc, double w0,
                                          double dislocation_angle) {
  require_geometry(0.0, w0);
  SpectralDecomposition d = empty_like(q, w0, trunc);
  for (int l = -trunc.l_max; l <= trunc.l_max; ++l) {
    const Complex azimuthal = specfun::sinc_phase(q, l) * std::polar(1.0, -l * dislocation_angle);
    if (azimuthal == Complex{}) continue;
    if (l == 0) {
      d.set({0, 0}, azimuthal);
      continue;
    }
    for (int p = 0; p <= trunc.p_max; ++p) d.set({p, l}, azimuthal * onaxis_radial(p, std::abs(l)));
  }
  d.refresh_power();
  return d;
}

SpectralDecomposition displaced_gaussian_coeffs(double r0, double phi0, double w0,
                                                const TruncationPolicy& trunc) {
  require_geometry(r0, w0);
  SpectralDecomposition d = empty_like(0.0, w0, trunc);
  if (r0 == 0.0) {
    d.set({0, 0}, 1.0);
    d.refresh_power();
    return d;
  }
  const double alpha2 = r0 * r0 / (2.0 * w0 * w0);
  const double log_alpha = 0.5 * std::log(alpha2);
  for (int l = -trunc.l_max; l <= trunc.l_max; ++l) {
    const int a = std::abs(l);
    for (int p = 0; p <= trunc.p_max; ++p) {
      const double log_mag = -alpha2 + (2.0 * p + a) * log_alpha -
                             0.5 * (specfun::log_factorial(p) + specfun::log_factorial(p + a));
      const double sign = (p % 2 == 0) ? 1.0 : -1.0;
      d.set({p, l}, sign * std::exp(log_mag) * std::polar(1.0, -l * phi0));
    }
  }
  d.refresh_power();
  return d;
}

std::vector<Complex> bessel_azimuthal_spectrum(double r, double r0, double phi0, double w0,
                                               int l_max) {
  require_geometry(r0, w0);
  if (r < 0.0 || l_max < 0) throw std::invalid_argument("bessel_azimuthal_spectrum: bad arguments");
  const double w2 = w0 * w0;
  const double envelope = std::sqrt(2.0 / (kPi * w2)) * std::exp(-(r * r + r0 * r0) / w2);
  const double arg = 2.0 * r * r0 / w2;
  std::vector<Complex> out(2 * l_max + 1);
  for (int l = -l_max; l <= l_max; ++l) {
    out[l + l_max] = envelope * specfun::bessel_i(l, arg) * std::polar(1.0, -l * phi0);
  }
  return out;
}

Complex spp_coupling_coeff(double q, ModeIndex from, ModeIndex to) {
  const Complex azimuthal = specfun::sinc_phase(q, to.l - from.l);
  if (azimuthal == Complex{}) return {};
  return azimuthal * kernel_norm(from.p, to.p, from.l, to.l) *
         specfun::coupling_kernel(from.p, to.p, from.l, to.l);
}

SpectralDecomposition displaced_spp_coeffs(double q, double r0, double phi0, double w0,
                                           const TruncationPolicy& trunc) {
  const SpectralDecomposition input = displaced_gaussian_coeffs(r0, phi0, w0, trunc);
  std::vector<std::pair<ModeIndex, Complex>> sources;
  for (const auto& [idx, c] : input.entries) {
    if (std::abs(c) >= trunc.series_tol) sources.emplace_back(idx, c);
  }

  std::vector<ModeIndex> targets;
  for (int k = -trunc.l_max; k <= trunc.l_max; ++k) {
    for (int h = 0; h <= trunc.p_max; ++h) targets.push_back({h, k});
  }
  std::vector<Complex> values(targets.size());
  parallel_for(targets.size(), [&](std::size_t t) {
    Complex acc{};
    for (const auto& [from, c] : sources) acc += c * spp_coupling_coeff(q, from, targets[t]);
    values[t] = acc;
  });

  SpectralDecomposition d = empty_like(q, w0, trunc);
  for (std::size_t t = 0; t < targets.size(); ++t) d.set(targets[t], values[t]);
  d.refresh_power();
  return d;
}

}  // namespace sppkit::classical
