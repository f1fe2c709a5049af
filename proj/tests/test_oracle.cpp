#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sppkit/classical.hpp"
#include "sppkit/oracle.hpp"
#include "sppkit/paraxial.hpp"
#include "sppkit/specfun.hpp"
#include "support/reference.hpp"

using namespace sppkit;
using namespace sppkit::oracle;

namespace {

AzimuthalField lg_field(ModeIndex idx, double w0) {
  return {[idx, w0](double r, double phi) {
            const ref::cld u = ref::lg(idx.p, idx.l, r, phi, w0);
            return Complex(double(u.real()), double(u.imag()));
          },
          0.0};
}

Complex gaussian(double r, double w0) { return std::sqrt(2.0 / kPi) / w0 * std::exp(-r * r / (w0 * w0)); }

}  // namespace

TEST_CASE("generalized Gauss-Laguerre rules integrate polynomials exactly") {
  for (double alpha : {0.0, 0.5, 1.0, 2.5, 7.0}) {
    for (int n : {1, 5, 20, 64}) {
      const GaussRule rule = gauss_laguerre(n, alpha);
      REQUIRE(rule.nodes.size() == n);
      for (int i = 0; i < n; ++i) {
        CHECK(rule.nodes(i) > 0.0);
        CHECK(rule.weights(i) >= 0.0);
        if (i > 0) CHECK(rule.nodes(i) > rule.nodes(i - 1));
      }
      for (int j = 0; j <= std::min(2 * n - 1, 12); ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += rule.weights(i) * std::pow(rule.nodes(i), j);
        CHECK(s == doctest::Approx(std::tgamma(alpha + j + 1.0)).epsilon(1e-12));
      }
    }
  }
  // One-point rule: the node is the mean alpha + 1.
  CHECK(gauss_laguerre(1, 0.5).nodes(0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_laguerre(0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_laguerre(4, -1.0), std::invalid_argument);
}

TEST_CASE("overlap examples") {
  const double w0 = 0.8;
  for (ModeIndex idx : {ModeIndex{0, 0}, ModeIndex{2, 1}, ModeIndex{1, -3}, ModeIndex{4, 2}}) {
    const AzimuthalField f = lg_field(idx, w0);
    CHECK(std::abs(overlap_coefficient(f, idx, w0) - 1.0) < 1e-12);
    CHECK(std::abs(overlap_coefficient(f, {idx.p + 1, idx.l}, w0)) < 1e-12);
    CHECK(std::abs(overlap_coefficient(f, {idx.p, idx.l + 1}, w0)) < 1e-12);
  }
  const AzimuthalField half{[](double r, double) { return gaussian(r, 1.0); }, 0.5};
  CHECK(std::abs(overlap_coefficient(half, {0, 0}, 1.0) - Complex(0.0, 2.0 / kPi)) < 1e-10);
  // Integer charge: only the l = 1 column is populated.
  const AzimuthalField one{[](double r, double) { return gaussian(r, 1.0); }, 1.0};
  CHECK(std::norm(overlap_coefficient(one, {0, 1}, 1.0)) == doctest::Approx(kPi / 4).epsilon(1e-10));
  CHECK(std::abs(overlap_coefficient(one, {0, 2}, 1.0)) < 1e-12);
  CHECK(std::abs(overlap_coefficient(one, {3, 0}, 1.0)) < 1e-12);
}

TEST_CASE("overlap agrees with test-side quadrature") {
  const double r0 = 0.9, phi0 = 0.4;
  auto displaced = [=](double r, double phi) {
    const double d2 = r * r + r0 * r0 - 2 * r * r0 * std::cos(phi - phi0);
    return std::sqrt(2.0 / kPi) * std::exp(-d2) * std::polar(1.0, 0.3 * r * r);
  };
  const OverlapProjector proj({displaced, 1.5}, 1.0, QuadratureSpec{96, 128, 1e-10});
  for (ModeIndex idx : {ModeIndex{0, 0}, ModeIndex{1, 2}, ModeIndex{3, -1}, ModeIndex{0, 4}}) {
    const auto v = ref::overlap(
        [&](ref::ld r, ref::ld phi) {
          const Complex f = displaced(double(r), double(phi)) * std::polar(1.0, 1.5 * double(phi));
          return ref::cld(f.real(), f.imag());
        },
        idx.p, idx.l, 1.0L, 96);
    const OverlapResult got = proj.coefficient(idx);
    CHECK(got.error_estimate < 1e-10);
    CHECK(std::abs(got.value - Complex(double(v.real()), double(v.imag()))) < 1e-9);
  }
}

TEST_CASE("projecting a synthesized field recovers its coefficients") {
  const double w0 = 2e-4;
  SpectralDecomposition d;
  d.w0 = w0;
  d.set({0, 0}, {0.4, -0.1});
  d.set({3, 2}, {0.0, 0.5});
  d.set({1, -4}, {-0.3, 0.2});
  d.set({6, 1}, {0.25, 0.0});
  d.refresh_power();
  const paraxial::BeamGeometry beam(w0, 632.8e-9);
  const paraxial::FieldEvaluator eval(d, 0.0, beam);
  const OverlapProjector proj({[&](double r, double phi) { return eval(r * std::cos(phi), r * std::sin(phi)); }, 0.0},
                              w0);
  const IndexWindow window{8, 6};
  const SpectralDecomposition back = proj.project(window);
  const EquivalenceReport rep = compare_decompositions(d, back, window);
  CHECK(rep.max_abs_diff < 1e-10);
  CHECK(std::abs(rep.power_diff) < 1e-10);
  CHECK(back.w0 == w0);
}

TEST_CASE("quadrature failures are reported") {
  const AzimuthalField top_hat{[](double r, double) { return r < 1.0 ? Complex(1.0, 0.0) : Complex{}; }, 0.0};
  CHECK_THROWS_AS(overlap_coefficient(top_hat, {0, 0}, 1.0), NotConverged);
  try {
    overlap_coefficient(top_hat, {0, 0}, 1.0);
  } catch (const NotConverged& e) {
    CHECK(e.estimate() > 1e-10);
  }
  const OverlapProjector proj(top_hat, 1.0);
  CHECK_THROWS_AS(proj.project(IndexWindow{2, 2}), NotConverged);
  const OverlapProjector coarse({[](double r, double) { return gaussian(r, 1.0); }, 0.0}, 1.0,
                                QuadratureSpec{48, 16, 1e-10});
  CHECK_THROWS_AS(coarse.project(IndexWindow{2, 10}), std::invalid_argument);
  CHECK_THROWS_AS(OverlapProjector(top_hat, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(OverlapProjector(top_hat, 1.0, QuadratureSpec{48, 7, 1e-10}), std::invalid_argument);
  CHECK(QuadratureSpec{}.adequate_for(10, 2.5));
  CHECK(!QuadratureSpec{48, 32, 1e-10}.adequate_for(10, 2.5));
}

TEST_CASE("kernel quadrature against the closed form") {
  CHECK(kernel_quadrature(0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(kernel_quadrature(0, 0, 1, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(kernel_quadrature(0, 0, 0, 1) == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-13));
  for (int p = 0; p <= 6; ++p) {
    for (int h = 0; h <= 6; ++h) {
      for (int l = -4; l <= 4; ++l) {
        for (int k = -4; k <= 4; ++k) {
          const double numeric = kernel_quadrature(p, h, l, k);
          const double closed = specfun::coupling_kernel(p, h, l, k);
          CHECK(std::abs(numeric - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
        }
      }
    }
  }
  CHECK_THROWS_AS(kernel_quadrature(-1, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("comparison reports") {
  TruncationPolicy t;
  t.p_max = 6;
  t.l_max = 6;
  const auto a = classical::gaussian_spp_coeffs(1.5, t);
  const EquivalenceReport same = compare_decompositions(a, a);
  CHECK(same.max_abs_diff == 0.0);
  CHECK(same.power_diff == 0.0);
  CHECK(same.n_compared == static_cast<int>(a.entries.size()));

  SpectralDecomposition b = a;
  b.set({2, 3}, b[{2, 3}] + Complex(0.0, 0.01));
  b.set({9, 9}, 0.001);
  const EquivalenceReport diff = compare_decompositions(a, b);
  CHECK(diff.max_abs_diff == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(diff.worst_index == ModeIndex{2, 3});
  CHECK(diff.n_compared == static_cast<int>(a.entries.size()) + 1);
  const EquivalenceReport windowed = compare_decompositions(a, b, IndexWindow{1, 6});
  CHECK(windowed.max_abs_diff == 0.0);

  quantum::TwoModeState vac = quantum::TwoModeState::vacuum();
  SpectralDecomposition g;
  g.w0 = 3e-4;
  g.set({0, 0}, 1.0);
  CHECK(equivalence_report(g, vac, 3e-4).max_abs_diff == 0.0);
  CHECK_THROWS_AS(equivalence_report(g, vac, 1e-4), std::invalid_argument);
}
