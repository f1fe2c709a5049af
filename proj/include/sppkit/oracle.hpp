#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

#include <Eigen/Core>

#include "sppkit/quantum.hpp"
#include "sppkit/types.hpp"

/// Brute-force quadrature of LG overlap integrals, independent of every
/// closed form in the library, plus classical-quantum comparison reports.
namespace sppkit::oracle {

/// Node counts for the radial Gauss-Laguerre rule (in x = 2 r^2 / w0^2) and the
/// uniform azimuthal rule. Every result is recomputed with both counts doubled;
/// the difference is the error estimate and must stay below target_tol.
struct QuadratureSpec {
  int radial_nodes = 48;
  int azimuthal_nodes = 128;
  double target_tol = 1e-10;

  /// Trapezoid rule resolves the harmonics up to the truncation band.
  bool adequate_for(int l_max, double q) const {
    return azimuthal_nodes >= 4 * (l_max + static_cast<int>(std::ceil(std::abs(q))) + 2);
  }
};

class NotConverged : public std::runtime_error {
 public:
  NotConverged(const std::string& what, double estimate) : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

/// Nodes and weights of the n-point rule for int_0^inf x^alpha e^{-x} f(x) dx.
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Golub-Welsch on the Laguerre Jacobi matrix, nodes polished by Newton steps,
/// weights from Gamma(n+alpha+1) / (n! x [L_n^alpha'(x)]^2).
GaussRule gauss_laguerre(int n, double alpha);

/// smooth(r, phi) * e^{i q phi}, phi in [0, 2 pi). smooth must be continuous
/// and 2 pi periodic; the phase jump of a fractional charge at phi = 0 is
/// integrated analytically per azimuthal harmonic.
struct AzimuthalField {
  std::function<Complex(double r, double phi)> smooth;
  double phase_charge = 0.0;
};

struct OverlapResult {
  Complex value;
  double error_estimate = 0.0;
};

/// Projects one field onto many LG modes, caching the azimuthal harmonics of
/// the field on each radial rule.
class OverlapProjector {
 public:
  OverlapProjector(AzimuthalField field, double w0, QuadratureSpec spec = {});

  /// <u_pl, field> at the finer resolution, with the doubling error estimate.
  OverlapResult coefficient(ModeIndex idx) const;

  /// All coefficients in the window. Throws NotConverged on the first
  /// coefficient whose estimate exceeds target_tol.
  SpectralDecomposition project(const IndexWindow& window) const;

 private:
  struct Harmonics {
    GaussRule rule;
    Eigen::MatrixXcd values;  // (node, m + n_phi/2)
  };
  const Harmonics& harmonics(int twice_alpha, int n_radial, int n_phi) const;
  Complex evaluate(ModeIndex idx, int n_radial, int n_phi) const;

  AzimuthalField field_;
  double w0_;
  QuadratureSpec spec_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<int, int, int>, Harmonics> cache_;
};

/// <u_pl, field>. Throws NotConverged when doubling moves the value by more than target_tol.
Complex overlap_coefficient(const AzimuthalField& field, ModeIndex idx, double w0,
                            const QuadratureSpec& spec = {});

/// int_0^inf e^{-x} x^{(|l|+|k|)/2} L_p^{|l|}(x) L_h^{|k|}(x) dx by generalized
/// Gauss-Laguerre. Throws NotConverged when doubling changes the value by more
/// than target_tol relative to max(1, |value|).
double kernel_quadrature(int p, int h, int l, int k, const QuadratureSpec& spec = {});

struct EquivalenceReport {
  double max_abs_diff = 0.0;
  /// sum |C_classical|^2 - sum |C_quantum|^2 over the compared indices.
  double power_diff = 0.0;
  ModeIndex worst_index;
  int n_compared = 0;
};

/// Converts the state to LG coefficients and compares entrywise over the union
/// of both index sets, restricted to window when given. Missing entries count as 0.
/// Throws std::invalid_argument when the basis waists differ.
EquivalenceReport equivalence_report(const SpectralDecomposition& classical,
                                     const quantum::TwoModeState& state, double w0,
                                     const std::optional<IndexWindow>& window = std::nullopt);

/// The same comparison between two decompositions.
EquivalenceReport compare_decompositions(const SpectralDecomposition& a, const SpectralDecomposition& b,
                                         const std::optional<IndexWindow>& window = std::nullopt);

}  // namespace sppkit::oracle
