// Acceptance checks. Each criterion prints indented detail lines followed by a
// single [PASS] or [FAIL] line; the runtime limit is part of the verdict.
//
//   acceptance                  run every criterion
//   acceptance --criterion N    run criterion N only

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "sppkit/classical.hpp"
#include "sppkit/oracle.hpp"
#include "sppkit/paraxial.hpp"
#include "sppkit/quantum.hpp"
#include "sppkit/specfun.hpp"
#include "support/reference.hpp"

using namespace sppkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string summary;
};

void detail(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void detail(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  std::printf("    ");
  std::vprintf(fmt, args);
  std::printf("\n");
  va_end(args);
}

std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

TruncationPolicy square(int p_max, int l_max) {
  TruncationPolicy t;
  t.p_max = p_max;
  t.l_max = l_max;
  return t;
}

Complex gaussian(double r) { return std::sqrt(2.0 / kPi) * std::exp(-r * r); }

Complex displaced(double r, double phi, double r0, double phi0) {
  return std::sqrt(2.0 / kPi) * std::exp(-(r * r + r0 * r0 - 2.0 * r * r0 * std::cos(phi - phi0)));
}

// Fractional-charge baseline.
Outcome c1() {
  const auto d = classical::gaussian_spp_coeffs(0.5, square(10, 10));
  const double closed = std::norm(d[{0, 0}]);
  const double exact = 4.0 / (kPi * kPi);
  const Complex numeric = oracle::overlap_coefficient({[](double r, double) { return gaussian(r); }, 0.5}, {0, 0}, 1.0);
  const double err_exact = std::abs(closed - exact);
  const double err_oracle = std::abs(closed - std::norm(numeric));
  detail("|C00|^2 closed %.15f, 4/pi^2 %.15f, oracle %.15f", closed, exact, std::norm(numeric));
  return {err_exact <= 1e-10 && err_oracle <= 1e-9,
          format("q=0.5 |C00|^2 error %.2e vs 4/pi^2 (tol 1e-10), %.2e vs oracle (tol 1e-9)", err_exact, err_oracle)};
}

// Integer-charge coupling.
Outcome c2() {
  const auto d = classical::gaussian_spp_coeffs(1.0, TruncationPolicy{});
  const Complex numeric = oracle::overlap_coefficient({[](double r, double) { return gaussian(r); }, 1.0}, {0, 1}, 1.0);
  const double err = std::abs(std::norm(numeric) - kPi / 4);
  const double err_closed = std::abs(std::norm(d[{0, 1}]) - std::norm(numeric));
  int nonzero_off = 0;
  for (int l = -40; l <= 40; ++l) {
    if (l == 1) continue;
    for (int p = 0; p <= 40; ++p) {
      if (d[{p, l}] != Complex{}) ++nonzero_off;
    }
  }
  detail("oracle |C01|^2 %.15f, pi/4 %.15f, closed %.15f", std::norm(numeric), kPi / 4, std::norm(d[{0, 1}]));
  detail("nonzero entries with l != 1: %d of %d", nonzero_off, 80 * 41);
  return {err <= 1e-9 && err_closed <= 1e-9 && nonzero_off == 0,
          format("q=1 oracle |C01|^2 error %.2e vs pi/4 (tol 1e-9), closed form %.2e; off-column entries %d",
                 err, err_closed, nonzero_off)};
}

// Plate unitarity.
Outcome c3() {
  bool ok = true;
  std::string s;
  for (double q : {0.5, 1.5, 2.5}) {
    double previous = 2.0;
    bool monotone = true;
    std::string trail;
    for (int l_max : {5, 10, 20, 40}) {
      const double deficit = 1.0 - classical::gaussian_spp_coeffs(q, square(40, l_max)).captured_power;
      monotone = monotone && deficit < previous;
      previous = deficit;
      trail += format(" %d:%.4e", l_max, deficit);
    }
    const bool pass = previous <= 5e-3 && monotone;
    detail("q=%.1f deficit by l_max (p_max=40):%s -> %s", q, trail.c_str(), pass ? "ok" : "short");
    ok = ok && pass;
    s += format(" q=%.1f:%.4e", q, previous);
  }
  return {ok, "deficit 1 - sum_{p,|l|<=40} |C|^2 (tol 5e-3, monotone in l_max):" + s};
}

// Classical-quantum equivalence on the vacuum.
Outcome c4() {
  bool ok = true;
  std::string s;
  const IndexWindow window{10, 10};
  for (double q : {0.5, 1.5, 2.5}) {
    const auto classical = classical::gaussian_spp_coeffs(q, square(10, 10));
    const auto state = quantum::apply_spp_operator(quantum::TwoModeState::vacuum(), q, {40, 60, 0.1});
    const auto rep = oracle::equivalence_report(classical, state, 1.0, window);
    detail("q=%.1f max diff %.3e at (%d,%d) over %d entries, quantum truncation loss %.3e", q, rep.max_abs_diff,
           rep.worst_index.p, rep.worst_index.l, rep.n_compared, state.lost_power);
    ok = ok && rep.max_abs_diff < 1e-9;
    s += format(" q=%.1f:%.2e", q, rep.max_abs_diff);
  }
  return {ok, "vacuum equivalence over p,|l|<=10 (tol 1e-9):" + s};
}

// Single-mode limit of the matrix elements.
Outcome c5() {
  double worst = 0.0;
  int count = 0;
  for (int k = 1; k <= 4; ++k) {
    for (int n = 0; n <= 10; ++n) {
      for (int n_out = 0; n_out <= 10; ++n_out) {
        const double expected =
            n_out == n - k ? std::tgamma(1.0 + n - 0.5 * k) / std::sqrt(std::tgamma(n + 1.0) * std::tgamma(n - k + 1.0))
                           : 0.0;
        worst = std::max(worst, std::abs(quantum::phase_op_matrix_element(k, n_out, 0, 0, n) - expected));
        ++count;
      }
    }
  }
  return {worst <= 1e-10, format("m=0 sector vs Gamma(1+n-k/2)/sqrt(n!(n-k)!), k<=4, n<=10: max error %.2e over %d "
                                 "elements (tol 1e-10)",
                                 worst, count)};
}

// Hermitian conjugacy, plus two independent element checks so that the
// relation is not satisfied by construction alone.
Outcome c6() {
  double conj_err = 0.0, literal_err = 0.0, quad_err = 0.0;
  for (int k = -4; k <= 4; ++k) {
    for (int a = 0; a <= 8; ++a) {
      for (int b = 0; b <= 8; ++b) {
        for (int c = 0; c <= 8; ++c) {
          for (int d = 0; d <= 8; ++d) {
            const double lhs = quantum::phase_op_matrix_element(-k, a, b, c, d);
            conj_err = std::max(conj_err, std::abs(lhs - quantum::phase_op_matrix_element(k, d, c, b, a)));
            if (k % 2 != 0) {
              const double lit = quantum::detail::phase_op_matrix_element_literal(-k, a, b, c, d);
              literal_err = std::max(literal_err, std::abs(lhs - lit) / std::max(1.0, std::abs(lit)));
            }
          }
        }
      }
    }
  }
  // Position-space overlap: |n+, n-> is (-1)^p u_pl and e^{ik phi} multiplies.
  for (int k = -4; k <= 4; ++k) {
    for (int m_in = 0; m_in <= 4; ++m_in) {
      for (int n_in = 0; n_in <= 4; ++n_in) {
        for (int m_out = 0; m_out <= 6; ++m_out) {
          const int n_out = n_in + m_out - m_in - k;
          if (n_out < 0) continue;
          const int p_in = std::min(m_in, n_in), l_in = m_in - n_in;
          const int p_out = std::min(m_out, n_out), l_out = m_out - n_out;
          const ref::ld radial = ref::halfline(
              [&](ref::ld r) { return (ref::lg(p_in, l_in, r, 0, 1) * ref::lg(p_out, l_out, r, 0, 1)).real() * r; });
          const double expected = (((p_in + p_out) % 2 == 0) ? 1.0 : -1.0) * double(2 * ref::kPi * radial);
          quad_err = std::max(quad_err,
                              std::abs(quantum::phase_op_matrix_element(k, n_out, m_out, m_in, n_in) - expected));
        }
      }
    }
  }
  detail("literal Gamma form, odd k, n,m<=8: max relative error %.2e", literal_err);
  detail("position-space quadrature, |k|<=4, n,m<=4: max error %.2e", quad_err);
  return {conj_err <= 1e-10 && literal_err <= 1e-10 && quad_err <= 1e-10,
          format("conjugacy over n,m<=8, |k|<=4: max error %.2e (tol 1e-10); literal %.2e, quadrature %.2e",
                 conj_err, literal_err, quad_err)};
}

// Displaced-beam decomposition.
Outcome c7() {
  const auto d = classical::displaced_gaussian_coeffs(1.0, 0.0, 1.0, square(8, 8));
  const double c00_err = std::abs(d[{0, 0}] - std::exp(-0.5));
  const IndexWindow window{8, 8};
  double table_err = 0.0;
  for (double phi0 : {0.0, kPi / 2}) {
    const auto closed = classical::displaced_gaussian_coeffs(1.0, phi0, 1.0, square(8, 8));
    const oracle::OverlapProjector proj({[phi0](double r, double phi) { return displaced(r, phi, 1.0, phi0); }, 0.0},
                                        1.0, oracle::QuadratureSpec{96, 128, 1e-10});
    table_err = std::max(table_err, oracle::compare_decompositions(closed, proj.project(window), window).max_abs_diff);
  }
  const double norm = quantum::displace_vacuum(1.0 / std::sqrt(2.0), 0.0, {40, 1e-16}).norm();
  detail("c00 %.15f, e^{-1/2} %.15f", d[{0, 0}].real(), std::exp(-0.5));
  detail("coherent-state norm at cutoff 40: 1 - %.3e", 1.0 - norm);
  return {c00_err <= 1e-10 && table_err <= 1e-9 && norm >= 1.0 - 1e-8,
          format("r0=w0: c00 error %.2e (tol 1e-10), table vs oracle p,|l|<=8 %.2e (tol 1e-9), norm deficit %.2e "
                 "(tol 1e-8)",
                 c00_err, table_err, 1.0 - norm)};
}

// Displaced beam through the plate: operator path against the classical
// coupling sum, and the reindexed closed form against the operator path.
Outcome c8() {
  bool ok = true;
  std::string s;
  const IndexWindow window{10, 10};
  const quantum::OperatorTruncation trunc{40, 60, 0.1};
  for (double phi0 : {0.0, kPi / 2}) {
    const auto classical = classical::displaced_spp_coeffs(2.5, 1.0, phi0, 1.0, TruncationPolicy{});
    const auto operational = quantum::displaced_spp_quantum(2.5, 1.0 / std::sqrt(2.0), phi0, trunc);
    const auto closed = quantum::displaced_spp_quantum_closed_form(2.5, 1.0 / std::sqrt(2.0), phi0, trunc);
    const auto rep = oracle::equivalence_report(classical, operational, 1.0, window);
    const auto routes = oracle::compare_decompositions(quantum::state_to_lg_coeffs(operational, 1.0),
                                                       quantum::state_to_lg_coeffs(closed, 1.0), window);
    detail("phi0=%.4f operator vs classical %.3e at (%d,%d) over %d entries; closed form vs operator %.3e", phi0,
           rep.max_abs_diff, rep.worst_index.p, rep.worst_index.l, rep.n_compared, routes.max_abs_diff);
    ok = ok && rep.max_abs_diff <= 1e-6 && routes.max_abs_diff <= 1e-6;
    s += format(" phi0=%.4f:%.2e/%.2e", phi0, rep.max_abs_diff, routes.max_abs_diff);
  }
  return {ok, "q=2.5 r0=w0, p,|l|<=10, quantum vs classical / closed form vs operator (tol 1e-6):" + s};
}

// Coupling kernel identity.
Outcome c9() {
  double rel = 0.0;
  for (int p = 0; p <= 6; ++p) {
    for (int h = 0; h <= 6; ++h) {
      for (int l = -4; l <= 4; ++l) {
        for (int k = -4; k <= 4; ++k) {
          const double closed = specfun::coupling_kernel(p, h, l, k);
          const double numeric = oracle::kernel_quadrature(p, h, l, k);
          rel = std::max(rel, std::abs(closed - numeric) / std::max(1.0, std::abs(numeric)));
        }
      }
    }
  }
  int sinc_bad = 0;
  for (int d = -8; d <= 8; ++d) {
    if (specfun::sinc_phase(0.0, d) != Complex(d == 0 ? 1.0 : 0.0, 0.0)) ++sinc_bad;
  }
  double delta_err = 0.0;
  for (int l = -4; l <= 4; ++l) {
    for (int p = 0; p <= 6; ++p) {
      for (int h = 0; h <= 6; ++h) {
        const double c = std::abs(classical::spp_coupling_coeff(0.0, {p, l}, {h, l}));
        delta_err = std::max(delta_err, std::abs(c - (p == h ? 1.0 : 0.0)));
      }
    }
  }
  return {rel <= 1e-9 && sinc_bad == 0 && delta_err <= 1e-10,
          format("kernel vs quadrature p,h<=6, |l|,|k|<=4: max relative error %.2e (tol 1e-9); q=0 sinc mismatches "
                 "%d (exact); normalized kernel vs delta %.2e (tol 1e-10)",
                 rel, sinc_bad, delta_err)};
}

// Field synthesis: on-axis darkness and integer circulation.
Outcome c10() {
  const paraxial::BeamGeometry beam(1.0, kPi);
  const paraxial::GridSpec grid{257, 257, 3.0};
  bool ok = true;
  std::string s;
  struct Case {
    std::string name;
    SpectralDecomposition d;
    bool check_axis;
  };
  std::vector<Case> cases;
  for (double q : {0.5, 1.5, 2.5}) {
    cases.push_back({format("q=%.1f", q), classical::gaussian_spp_coeffs(q, TruncationPolicy{}), q != 0.5});
  }
  for (double phi0 : {0.0, kPi / 2}) {
    cases.push_back({format("q=2.5 r0=w0 phi0=%.4f", phi0),
                     classical::displaced_spp_coeffs(2.5, 1.0, phi0, 1.0, TruncationPolicy{}), false});
  }
  for (const auto& c : cases) {
    const paraxial::FieldGrid g = paraxial::synthesize(c.d, grid, 0.0, beam);
    const double peak = g.max_abs() * g.max_abs();
    const double axis = std::norm(g.samples(grid.ny / 2, grid.nx / 2));
    double worst_frac = 0.0;
    std::string charges;
    for (double radius : {0.25, 0.5, 1.0, 1.5, 2.0}) {
      try {
        const double n = paraxial::topological_charge(g, radius);
        worst_frac = std::max(worst_frac, std::abs(n - std::round(n)));
        charges += format(" %.2f:%+.0f", radius, n);
      } catch (const paraxial::DegenerateLoop&) {
        charges += format(" %.2f:zero", radius);
      }
    }
    const bool axis_ok = !c.check_axis || axis < 1e-6 * peak;
    detail("%s: on-axis/peak %.3e%s; loop charges%s; max distance from integer %.1e", c.name.c_str(), axis / peak,
           c.check_axis ? (axis_ok ? " (ok)" : " (above 1e-6)") : " (not checked)", charges.c_str(), worst_frac);
    ok = ok && axis_ok && worst_frac <= 1e-6;
    if (c.check_axis) s += format("%s %s axis/peak %.2e", s.empty() ? "" : ";", c.name.c_str(), axis / peak);
  }
  return {ok, "grids produced; on-axis intensity < 1e-6 peak for q=1.5, 2.5 and integer loop charges:" + s};
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "fractional-charge baseline", 1.0, c1},   {2, "integer-charge coupling", 1.0, c2},
      {3, "plate unitarity", 5.0, c3},              {4, "vacuum equivalence", 30.0, c4},
      {5, "single-mode limit", 1.0, c5},            {6, "Hermitian conjugacy", 5.0, c6},
      {7, "displaced-beam decomposition", 5.0, c7}, {8, "displaced beam through the plate", 120.0, c8},
      {9, "kernel identity", 10.0, c9},             {10, "field synthesis", 60.0, c10},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::printf("C%d %s\n", c.id, c.title);
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < c.limit_s;
    const bool pass = o.ok && in_time;
    std::printf("[%s] C%d %s; runtime %.2f s (limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, o.summary.c_str(),
                elapsed, c.limit_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
    all = all && pass;
  }
  return all ? 0 : 1;
}
