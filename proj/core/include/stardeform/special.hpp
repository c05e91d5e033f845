#pragma once

#include <map>
#include <vector>

#include "stardeform/poly.hpp"
#include "stardeform/scalar.hpp"

namespace sd {

// ---------------------------------------------------------------- Hermite

// H_n(w, tau) = (sqrt 2)^n R_n(w, tau) with R_n rational whenever tau is.
// Storing R_n keeps every identity exact; R_n is the star power w_*^n.
struct HermiteFamily {
  QComplex tau;
  std::vector<RationalPoly> reduced;

  // Numerical H_n including the (sqrt 2)^n factor.
  Poly numeric(unsigned n) const;
  // "1", "sqrt(2)*w", "2w^2 - 1", "sqrt(2)*(2w^3 - 3w)" style rendering.
  std::string render(unsigned n) const;
};

// Built from the explicit coefficient formula
// H_n / n! = sum_p (sqrt 2)^n tau^p / (p! (n-2p)! 4^p) w^{n-2p}.
HermiteFamily hermite_table(unsigned n_max, const QComplex& tau);

struct HermiteReport {
  bool recurrence = true;        // (tau/sqrt2) H_n' + sqrt2 w H_n = H_{n+1}
  bool ode = true;               // tau H_n'' + 2 w H_n' - 2 n H_n = 0
  bool ladder = true;            // H_n' = sqrt2 n H_{n-1}
  bool top_derivative = true;    // d^n H_n = (sqrt 2)^n n!
  bool product_law = true;       // H_k * H_l = H_{k+l}
  bool convolution_unscaled = true;  // sum_k C(n,k) H_k * H_{n-k} = H_n
  bool convolution_scaled = true;    // sum_k C(n,k) H_k * H_{n-k} = 2^n H_n
};

// All checks are exact rational comparisons.
HermiteReport hermite_checks(const HermiteFamily& fam);

// int_R e^{w^2/tau} H_n H_m dw by Gauss-Legendre panels. Requires Re tau < 0.
Complex hermite_orthogonality(unsigned n, unsigned m, Complex tau);
// n! (-tau)^n sqrt(-tau) sqrt(pi)
Complex hermite_norm(unsigned n, Complex tau);

// ----------------------------------------------------------------- Bessel

// Classical integer-order Bessel functions of complex argument.
Complex bessel_j(int n, Complex z);
Complex bessel_i(int n, Complex z);

struct BesselTable {
  Complex a;
  Complex tau;
  int n_max = 0;
  std::vector<double> grid;
  std::map<int, std::vector<Complex>> values;  // J_n(a w, tau) on grid, |n| <= n_max

  const std::vector<Complex>& at(int n) const { return values.at(n); }
};

// J_n(aw, tau) = e^{-z} sum_k I_k(z) J_{n-2k}(aw), z = a^2 tau / 8: the
// classical coefficients convolved with the Fourier coefficients of the
// tau-dependent correction factor. Throws TruncationFailure when the
// requested n_max leaves a tail above tol.
BesselTable bessel_table(Complex a, Complex tau, int n_max, const std::vector<double>& grid,
                         double tol = 1e-12);

// Independent path: Fourier coefficient of the tau-expression of
// e_*^{i a w sin s} by the periodic trapezoid rule.
Complex bessel_star_direct(int n, Complex a, Complex tau, Complex w, int nodes = 128);

// J_m(aw, tau) * J_l(bw, tau) in tau-expression, from the closed-form
// product of linear star exponentials under a double Fourier integral.
Complex bessel_star_product(int m, int l, Complex a, Complex b, Complex tau, Complex w,
                            int nodes = 64);

// max over grid of |J_n((a+b)w, tau) - sum_{|m|<=n_max} J_m(aw) * J_{n-m}(bw)|
double bessel_addition_residual(int n, Complex a, Complex b, Complex tau, int n_max,
                                const std::vector<double>& grid);

// --------------------------------------------------------------- Legendre

// Values of P_n(w + a, tau) for n = 0..n_max at each grid point, from the
// Laplace-type s-integral with the t-Taylor coefficients taken in closed
// form under the integral. Requires Re tau < 0. Result indexed [n][i].
std::vector<std::vector<Complex>> legendre_star(unsigned n_max, Complex a, Complex tau,
                                                const std::vector<double>& grid);

// Classical Legendre polynomial from the three-term recurrence.
RationalPoly legendre_classical(unsigned n);

// ---------------------------------------------------------------- Laguerre

// L_n(x, tau) = [t^n] (1 - t tau)^{-1/2} exp(t x / (1 - t tau)), n = 0..n_max,
// as polynomials in x (substitute x = w^2 for tau-expressions).
template <class T>
std::vector<BasicPoly<T>> laguerre_star(unsigned n_max, const T& tau);

// Classical generalized Laguerre L_n^{(alpha)} with alpha = p/2 rational.
RationalPoly laguerre_classical(unsigned n, const mpq_class& alpha);

// int_0^inf x^{alpha} e^{x/tau} L_n L_m dx with x = u^2 substitution so the
// x^{-1/2} endpoint is smooth. alpha must be -1/2 or +1/2; Re tau < 0.
Complex laguerre_gram(unsigned n, unsigned m, Complex tau, int alpha_twice);
// (-tau)^{1/2} tau^{2n} Gamma(n + 1/2) / n!, the norm for the x^{-1/2} weight.
Complex laguerre_norm(unsigned n, Complex tau);

}  // namespace sd
