#pragma once

#include <stdexcept>
#include <string>

#include "sppkit/types.hpp"

/// Real special-function kernels: Gamma machinery, Pochhammer symbols,
/// generalized binomials, associated Laguerre polynomials, modified Bessel
/// functions, the sinc-phase harmonic coefficient and the LG coupling kernel.
/// Everything here is a pure function of its arguments.
namespace sppkit::specfun {

/// Raised by gamma() at x in {0, -1, -2, ...}.
class GammaPole : public std::domain_error {
 public:
  explicit GammaPole(double x);
  double where() const { return x_; }

 private:
  double x_;
};

/// True when x lies within tol of a non-positive integer.
bool is_nonpositive_integer(double x, double tol = 1e-12);

/// sin(pi x) and cos(pi x) with exact zeros at the integers / half-integers.
double sin_pi(double x);
double cos_pi(double x);

/// Gamma(x). Throws GammaPole at the poles and std::overflow_error when the
/// result exceeds the double range (x > ~171.6).
double gamma(double x);

/// 1 / Gamma(x); the entire continuation, exactly 0 at the poles of Gamma.
double reciprocal_gamma(double x);

/// log |Gamma(x)|. Throws GammaPole at the poles.
double log_abs_gamma(double x);

/// Sign of Gamma(x) (+1 or -1). Throws GammaPole at the poles.
int gamma_sign(double x);

/// n! for n >= 0, exact for n <= 22.
double factorial(int n);
double log_factorial(int n);

struct PochhammerArg {
  double base = 0.0;
  int steps = 0;
};

/// r (r-1) ... (r-h+1), an explicit product so that no Gamma pole can arise.
double pochhammer_falling(double r, int h);
inline double pochhammer_falling(PochhammerArg a) { return pochhammer_falling(a.base, a.steps); }

/// a (a+1) ... (a+n-1).
double pochhammer_rising(double a, int n);

/// Generalized binomial coefficient binom(r, h) = (r)_h / h! with falling (r)_h.
double gen_binomial(double r, int h);

/// Harmonic coefficient (1/2pi) int_0^{2pi} exp(i (q-k) phi) dphi.
Complex sinc_phase(double q, int k);

/// Associated Laguerre polynomial L_p^{(alpha)}(x) by upward recurrence.
double laguerre(int p, double alpha, double x);

/// Modified Bessel function of the first kind I_l(x), integer order.
double bessel_i(int l, double x);

/// Appell F2(a; -p, -h; c1, c2; 1, 1) as the terminating double sum.
/// Throws std::invalid_argument when (c1)_r or (c2)_s vanishes inside the range.
double appell_f2_unit(double a, int p, int h, double c1, double c2);

/// int_0^inf e^{-x} x^{(|l|+|k|)/2} L_p^{(|l|)}(x) L_h^{(|k|)}(x) dx, finite closed form.
double coupling_kernel(int p, int h, int l, int k);

/// The same kernel through the Appell-F2 representation. Loses accuracy to
/// cancellation for large p, h; kept as an independent route.
double coupling_kernel_appell(int p, int h, int l, int k);

}  // namespace sppkit::specfun
