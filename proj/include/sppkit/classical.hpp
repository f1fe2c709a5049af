#pragma once

#include <vector>

#include "sppkit/types.hpp"

/// Closed-form LG spectra at the waist: on-axis Gaussian through a spiral
/// phase plate, displaced Gaussian, and the displaced Gaussian through a plate.
/// Every returned decomposition has captured_power = sum |C|^2 over its entries.
namespace sppkit::classical {

/// On-axis unit Gaussian through a charge-q plate whose edge dislocation lies
/// at azimuth dislocation_angle. Entries on trunc's (p, l) window.
SpectralDecomposition gaussian_spp_coeffs(double q, const TruncationPolicy& trunc,
                                          double w0 = 1.0, double dislocation_angle = 0.0);

/// Gaussian of waist w0 centred at (r0, phi0), expanded in LG modes of the same waist.
SpectralDecomposition displaced_gaussian_coeffs(double r0, double phi0, double w0,
                                                const TruncationPolicy& trunc);

/// Azimuthal harmonics h_l(r) of the displaced Gaussian, l = -l_max..l_max,
/// stored at index l + l_max; sum_l h_l e^{il phi} is the field at (r, phi).
std::vector<Complex> bessel_azimuthal_spectrum(double r, double r0, double phi0, double w0,
                                               int l_max);

/// Amplitude that a charge-q plate transfers from LG mode `from` to mode `to`.
Complex spp_coupling_coeff(double q, ModeIndex from, ModeIndex to);

/// Displaced Gaussian through a charge-q plate. Input modes with
/// |c_pl| < trunc.series_tol are skipped.
SpectralDecomposition displaced_spp_coeffs(double q, double r0, double phi0, double w0,
                                           const TruncationPolicy& trunc);

}  // namespace sppkit::classical
