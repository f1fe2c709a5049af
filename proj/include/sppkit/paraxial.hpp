#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "sppkit/types.hpp"

namespace sppkit::paraxial {

/// Gaussian beam geometry: waist radius and wavelength, plus the derived
/// Rayleigh range, spot size w(z), wavefront curvature 1/R(z) and Gouy phase.
class BeamGeometry {
 public:
  BeamGeometry(double w0, double wavelength);

  double w0() const { return w0_; }
  double wavelength() const { return wavelength_; }
  double wavenumber() const { return 2.0 * kPi / wavelength_; }
  double rayleigh_range() const { return kPi * w0_ * w0_ / wavelength_; }

  double waist(double z) const;
  /// 1/R(z); zero at the waist.
  double inverse_radius(double z) const;
  double gouy(double z) const;

 private:
  double w0_;
  double wavelength_;
};

/// Plate charge and the azimuth of its edge dislocation.
struct SppSpec {
  double q = 0.0;
  double dislocation_angle = 0.0;
};

/// Charge imprinted by a plate of step height h_s and index n in a medium n0.
double spp_charge(double step_height, double n, double n0, double wavelength);

/// Normalized LG mode u_pl(r, phi, z).
Complex lg_mode(ModeIndex idx, double r, double phi, double z, const BeamGeometry& beam);

struct GridSpec {
  int nx = 512;
  int ny = 512;
  double half_extent = 0.0;
};

/// Complex samples on the square [-E, E]^2. samples(row, col) sits at
/// (x(col), y(row)); both axes include the end points.
struct FieldGrid {
  int nx = 0;
  int ny = 0;
  double half_extent = 0.0;
  double z = 0.0;
  Eigen::MatrixXcd samples;

  double dx() const { return 2.0 * half_extent / (nx - 1); }
  double dy() const { return 2.0 * half_extent / (ny - 1); }
  double x(int col) const { return -half_extent + col * dx(); }
  double y(int row) const { return -half_extent + row * dy(); }
  double max_abs() const { return samples.size() == 0 ? 0.0 : samples.cwiseAbs().maxCoeff(); }
  /// Riemann sum of |V|^2 dx dy.
  double power() const { return samples.cwiseAbs2().sum() * dx() * dy(); }
};

/// Reusable evaluator of V(x, y, z) = sum_pl C_pl u_pl at a fixed z.
/// Coefficients are grouped by |l| so that a point costs one Laguerre
/// recurrence per |l| present.
class FieldEvaluator {
 public:
  FieldEvaluator(const SpectralDecomposition& decomp, double z, const BeamGeometry& beam);
  Complex operator()(double x, double y) const;

 private:
  struct Group {
    std::vector<Complex> plus;
    std::vector<Complex> minus;
  };
  double w_;
  double k_;
  double inv_r_;
  std::map<int, Group> groups_;
};

/// V(x, y, z) = sum_pl C_pl u_pl at a single point.
Complex sample_field(const SpectralDecomposition& decomp, double x, double y, double z,
                     const BeamGeometry& beam);

FieldGrid synthesize(const SpectralDecomposition& decomp, const GridSpec& grid, double z,
                     const BeamGeometry& beam);

class DegenerateLoop : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Winding number (1/2pi) of the phase along a circle of radius loop_radius,
/// by nearest-branch accumulation of bilinearly interpolated samples.
/// Throws DegenerateLoop when |V| on the loop drops below 1e-9 max|V|.
double topological_charge(const FieldGrid& grid, double loop_radius, double center_x = 0.0,
                          double center_y = 0.0);

/// Winding number of every grid plaquette, (ny-1) x (nx-1).
Eigen::MatrixXi residue_charges(const FieldGrid& grid);

}  // namespace sppkit::paraxial
