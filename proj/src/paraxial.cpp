#include "sppkit/paraxial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "sppkit/parallel.hpp"
#include "sppkit/specfun.hpp"

namespace sppkit::paraxial {

BeamGeometry::BeamGeometry(double w0, double wavelength) : w0_(w0), wavelength_(wavelength) {
  if (!(w0 > 0.0) || !(wavelength > 0.0)) {
    throw std::invalid_argument("BeamGeometry: waist and wavelength must be positive");
  }
}

double BeamGeometry::waist(double z) const {
  const double t = z / rayleigh_range();
  return w0_ * std::sqrt(1.0 + t * t);
}

double BeamGeometry::inverse_radius(double z) const {
  const double zr = rayleigh_range();
  return z / (z * z + zr * zr);
}

double BeamGeometry::gouy(double z) const { return std::atan(z / rayleigh_range()); }

double spp_charge(double step_height, double n, double n0, double wavelength) {
  if (!(wavelength > 0.0)) throw std::invalid_argument("spp_charge: wavelength must be positive");
  return step_height * (n - n0) / wavelength;
}

namespace {

// Pieces shared by every mode at a given z.
struct PlaneFactors {
  double w;
  double k;
  double inv_r;
  double gouy;
  double z;
};

PlaneFactors plane_factors(double z, const BeamGeometry& beam) {
  return {beam.waist(z), beam.wavenumber(), beam.inverse_radius(z), beam.gouy(z), z};
}

// sqrt(p! / (p+a)!)
double radial_norm(int p, int a) {
  return std::exp(0.5 * (specfun::log_factorial(p) - specfun::log_factorial(p + a)));
}

Complex mode_phase(int p, int a, const PlaneFactors& f) {
  return std::polar(1.0, f.k * f.z - (2.0 * p + a) * f.gouy);
}

// Per-point envelope sqrt(2/pi)/w exp(-X/2) exp(i k r^2 / 2R).
Complex envelope(double r2, const PlaneFactors& f) {
  const double big_x = 2.0 * r2 / (f.w * f.w);
  return std::sqrt(2.0 / kPi) / f.w * std::exp(-0.5 * big_x) *
         std::polar(1.0, 0.5 * f.k * r2 * f.inv_r);
}

}  // namespace

FieldEvaluator::FieldEvaluator(const SpectralDecomposition& decomp, double z,
                               const BeamGeometry& beam) {
  const PlaneFactors f = plane_factors(z, beam);
  w_ = f.w;
  k_ = f.k;
  inv_r_ = f.inv_r;
  for (const auto& [idx, c] : decomp.entries) {
    const int a = std::abs(idx.l);
    auto& g = groups_[a];
    // l = 0 lives in plus.
    auto& vec = idx.l >= 0 ? g.plus : g.minus;
    if (static_cast<int>(vec.size()) <= idx.p) vec.resize(idx.p + 1, Complex{});
    vec[idx.p] += c * radial_norm(idx.p, a) * mode_phase(idx.p, a, f);
  }
}

Complex FieldEvaluator::operator()(double x, double y) const {
  const double r2 = x * x + y * y;
  const double big_x = 2.0 * r2 / (w_ * w_);
  // X^{|l|/2} e^{i|l|phi} = zc^{|l|}, which stays regular on the axis.
  const Complex zc = std::sqrt(2.0) / w_ * Complex(x, y);
  Complex total{};
  Complex zpow{1.0, 0.0};
  int apow = 0;
  for (const auto& [a, g] : groups_) {
    while (apow < a) {
      zpow *= zc;
      ++apow;
    }
    const std::size_t n = std::max(g.plus.size(), g.minus.size());
    Complex s_plus{}, s_minus{};
    double prev = 1.0;
    double cur = 1.0 + a - big_x;
    for (std::size_t p = 0; p < n; ++p) {
      const double lag = p == 0 ? 1.0 : cur;
      if (p < g.plus.size()) s_plus += g.plus[p] * lag;
      if (p < g.minus.size()) s_minus += g.minus[p] * lag;
      if (p >= 1) {
        const double next = ((2.0 * p + 1.0 + a - big_x) * cur - (p + a) * prev) / (p + 1.0);
        prev = cur;
        cur = next;
      }
    }
    total += zpow * s_plus;
    if (a > 0) total += std::conj(zpow) * s_minus;
  }
  const PlaneFactors f{w_, k_, inv_r_, 0.0, 0.0};
  return total * envelope(r2, f);
}

Complex lg_mode(ModeIndex idx, double r, double phi, double z, const BeamGeometry& beam) {
  const PlaneFactors f = plane_factors(z, beam);
  const int a = std::abs(idx.l);
  const double big_x = 2.0 * r * r / (f.w * f.w);
  const double radial = radial_norm(idx.p, a) * std::pow(big_x, 0.5 * a) *
                        specfun::laguerre(idx.p, a, big_x);
  return radial * envelope(r * r, f) * mode_phase(idx.p, a, f) * std::polar(1.0, idx.l * phi);
}

Complex sample_field(const SpectralDecomposition& decomp, double x, double y, double z,
                     const BeamGeometry& beam) {
  return FieldEvaluator(decomp, z, beam)(x, y);
}

FieldGrid synthesize(const SpectralDecomposition& decomp, const GridSpec& spec, double z,
                     const BeamGeometry& beam) {
  if (spec.nx < 2 || spec.ny < 2 || !(spec.half_extent > 0.0)) {
    throw std::invalid_argument("synthesize: grid needs at least 2x2 samples and a positive extent");
  }
  FieldGrid grid;
  grid.nx = spec.nx;
  grid.ny = spec.ny;
  grid.half_extent = spec.half_extent;
  grid.z = z;
  grid.samples = Eigen::MatrixXcd::Zero(spec.ny, spec.nx);
  if (decomp.entries.empty()) return grid;
  const FieldEvaluator sum(decomp, z, beam);
  parallel_for(static_cast<std::size_t>(spec.ny), [&](std::size_t row) {
    const double y = grid.y(static_cast<int>(row));
    for (int col = 0; col < spec.nx; ++col) {
      grid.samples(static_cast<Eigen::Index>(row), col) = sum(grid.x(col), y);
    }
  });
  return grid;
}

namespace {

Complex bilinear(const FieldGrid& g, double x, double y) {
  const double fx = (x + g.half_extent) / g.dx();
  const double fy = (y + g.half_extent) / g.dy();
  int c = std::clamp(static_cast<int>(std::floor(fx)), 0, g.nx - 2);
  int r = std::clamp(static_cast<int>(std::floor(fy)), 0, g.ny - 2);
  const double tx = fx - c;
  const double ty = fy - r;
  return (1 - tx) * (1 - ty) * g.samples(r, c) + tx * (1 - ty) * g.samples(r, c + 1) +
         (1 - tx) * ty * g.samples(r + 1, c) + tx * ty * g.samples(r + 1, c + 1);
}

double wrapped_step(Complex from, Complex to) { return std::arg(to * std::conj(from)); }

}  // namespace

double topological_charge(const FieldGrid& grid, double loop_radius, double center_x,
                          double center_y) {
  if (!(loop_radius > 0.0)) throw std::invalid_argument("topological_charge: radius must be positive");
  const double e = grid.half_extent;
  if (std::abs(center_x) + loop_radius > e || std::abs(center_y) + loop_radius > e) {
    throw std::invalid_argument("topological_charge: loop does not fit in the grid");
  }
  const double floor_abs = 1e-9 * grid.max_abs();
  const double step = 0.25 * std::min(grid.dx(), grid.dy());
  const int n = std::max(256, static_cast<int>(std::ceil(2.0 * kPi * loop_radius / step)));

  std::vector<Complex> loop(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    loop[j] = bilinear(grid, center_x + loop_radius * std::cos(t), center_y + loop_radius * std::sin(t));
    if (std::abs(loop[j]) <= floor_abs) {
      throw DegenerateLoop("topological_charge: field vanishes on the loop");
    }
  }
  double total = 0.0;
  for (int j = 0; j < n; ++j) total += wrapped_step(loop[j], loop[(j + 1) % n]);
  return total / (2.0 * kPi);
}

Eigen::MatrixXi residue_charges(const FieldGrid& grid) {
  Eigen::MatrixXi charge = Eigen::MatrixXi::Zero(grid.ny - 1, grid.nx - 1);
  const auto& s = grid.samples;
  for (int r = 0; r + 1 < grid.ny; ++r) {
    for (int c = 0; c + 1 < grid.nx; ++c) {
      const double sum = wrapped_step(s(r, c), s(r, c + 1)) + wrapped_step(s(r, c + 1), s(r + 1, c + 1)) +
                         wrapped_step(s(r + 1, c + 1), s(r + 1, c)) + wrapped_step(s(r + 1, c), s(r, c));
      charge(r, c) = static_cast<int>(std::lround(sum / (2.0 * kPi)));
    }
  }
  return charge;
}

}  // namespace sppkit::paraxial
