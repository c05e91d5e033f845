#pragma once

#include <functional>
#include <vector>

#include "stardeform/poly.hpp"
#include "stardeform/scalar.hpp"

namespace sd {

// sheet * amp * poly(w) * exp(alpha w^2 + beta w). The sheet sign records
// which branch of a square-root amplitude the value sits on, relative to
// the principal branch that amp was computed with.
struct GaussPoly {
  Poly poly = Poly::constant(1.0);
  Complex alpha = 0.0;
  Complex beta = 0.0;
  Complex amp = 1.0;
  int sheet = 1;

  Complex operator()(Complex w) const;
  // Amplitude including the sheet sign.
  Complex signed_amp() const { return static_cast<double>(sheet) * amp; }
};

GaussPoly derivative(const GaussPoly& g);
// Pointwise product.
GaussPoly multiply(const GaussPoly& f, const GaussPoly& g);
GaussPoly multiply(const Poly& p, const GaussPoly& g);

// Finite sum of Gaussian-polynomial terms.
using GaussSum = std::vector<GaussPoly>;
Complex eval(const GaussSum& s, Complex w);

// Outcome of continuing sqrt(r) along a path from a chosen start value.
struct SheetTrace {
  Complex value;   // continued square root at the end of the path
  int sheet;       // +1 if value is the principal root there, -1 otherwise
  int crossings;   // times the radicand crossed the negative real axis
};

// Continues sqrt(radicand(z)) along the polyline through `points`, starting
// from start_sheet * principal sqrt at points.front(). Step size adapts to
// the local relative change of the radicand. Throws SingularPoint if the
// radicand vanishes on the path.
SheetTrace continue_sqrt(const std::vector<Complex>& points,
                         const std::function<Complex(Complex)>& radicand, int start_sheet = 1);

// tau-expression of e_*^{s w}: exp(s w + s^2 tau / 4).
GaussPoly star_exp_linear(Complex s, Complex tau);

// tau-expression of e_*^{t w^2}: (1 - tau t)^{-1/2} exp(t w^2 / (1 - tau t)).
// The square root is continued from t = 0 along `path` (waypoints from 0 to
// t; empty means the straight segment). Throws SingularPoint when the path
// or endpoint meets t = 1/tau.
GaussPoly star_exp_quadratic(Complex t, Complex tau, const std::vector<Complex>& path = {});
SheetTrace star_exp_quadratic_sheet(Complex t, Complex tau, const std::vector<Complex>& path = {});

// exp(theta d^2) applied to a Gaussian polynomial. Principal branch for the
// (1 - 4 alpha theta)^{-1/2} factor.
GaussPoly heat(const GaussPoly& g, Complex theta);
// Transports a tau-expression to the tau'-expression (principal branch).
GaussPoly intertwine(const GaussPoly& g, Complex tau_from, Complex tau_to);

// Moves the tau-expression of e_*^{t w^2} along a path in the tau plane and
// reports the sheet relative to the principal value at the endpoint.
SheetTrace intertwine_quadratic_sheet(Complex t, const std::vector<Complex>& tau_path,
                                      int start_sheet = 1);

// Closed-form star product of two Gaussian polynomials at tau.
// Throws SingularProduct when 1 - tau^2 alpha_f alpha_g vanishes.
GaussPoly gauss_star(const GaussPoly& f, const GaussPoly& g, Complex tau);
Complex gauss_star_det(const GaussPoly& f, const GaussPoly& g, Complex tau);

// Finite Moyal-type sum; exact up to rounding because p is a polynomial.
GaussPoly star_product(const Poly& p, const GaussPoly& g, Complex tau);
GaussPoly star_product(const GaussPoly& g, const Poly& p, Complex tau);

// e_*^{2 s w} * g = exp(2 s w + s^2 tau) g(w + s tau).
GaussPoly translate_action(Complex s, const GaussPoly& g, Complex tau);
Complex translate_action(Complex s, const std::function<Complex(Complex)>& f, Complex tau,
                         Complex w);

// e_*^{t w^2} * G for a pure Gaussian G (constant polynomial part). Written
// with the denominator 1 - tau t (1 + tau alpha_G) so t = 1/tau is harmless
// whenever that denominator is nonzero. The root is continued from t = 0.
GaussPoly quad_exp_star(Complex t, const GaussPoly& gaussian, Complex tau);

// max over the grid of |e_*^{sw^2} * e_*^{tw^2} - e_*^{(s+t)w^2}|, with all
// square roots continued from the origin along straight segments.
double quad_exponential_law_residual(Complex s, Complex t, Complex tau,
                                     const std::vector<Complex>& grid);
// Parameter mismatch in e_*^{sw} * e_*^{tw} = e_*^{(s+t)w} (closed form).
double linear_exponential_law_residual(Complex s, Complex t, Complex tau);

// c_n = sup_{|w| <= 1} |P_{n ell}(w, tau)| / n! for n = 1..n_max, using the
// maximum modulus principle on |w| = 1.
std::vector<double> series_radius_probe(unsigned ell, Complex tau, unsigned n_max);

}  // namespace sd
