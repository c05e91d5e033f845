#pragma once

#include <functional>
#include <vector>

#include "stardeform/gauss.hpp"
#include "stardeform/scalar.hpp"

namespace sd {

// Near the branch point z = 1/tau of e_*^{z(nu + w_*^2)}, put z = 1/tau + s^2.
// On the double cover the tau-expression is single valued in s:
//   E(s) = e^{nu/tau} (-tau)^{-1/2} e^{-w^2/tau} s^{-1} e^{nu s^2 - w^2/(tau^2 s^2)},
// with the principal root of -tau. Only odd powers s^{2k-1} occur, and
//   a_{2k-1} = C sum_{l >= max(0,-k)} nu^{l+k}/(l+k)! (-w^2/tau^2)^l / l!,
//   C = e^{nu/tau} (-tau)^{-1/2} e^{-w^2/tau}.

// Value of a_{2k-1}(nu, tau, w), summed until the terms are negligible.
Complex laurent_coeff_closed(int k, Complex nu, Complex tau, Complex w);

// The same coefficient as a Gaussian polynomial (alpha = -1/tau), the series
// truncated once it is below 1e-20 relative for |w| <= w_max.
GaussPoly laurent_coeff(int k, Complex nu, Complex tau, double w_max = 4.0);

// d/dz of a_{2k-1} along the surface z = 1/tau (nu, w fixed), same form.
GaussPoly laurent_coeff_dz(int k, Complex nu, Complex tau, double w_max = 4.0);

// The Laurent series on the cover, evaluated from the star-exponential
// closed form at z = 1/tau + s^2.
Complex cover_exponential(Complex s, Complex nu, Complex tau, Complex w);

// (2 pi i)^{-1} contour integral of s^{-2k} E(s) over |s| = radius by the
// trapezoid rule. The node count is accepted when halving it changes the
// value by less than 1e-12 relative, else NodeCountError.
Complex residue_contour(int k, Complex nu, Complex tau, Complex w, double radius = 1.0,
                        int n_nodes = 256);

// max over grid of |(nu + w_*^2) * a_{2k-1} - (k + 1/2) a_{2k+1}|, the product
// taken in closed form on the Gaussian-polynomial representation.
double ladder_residual(int k, Complex nu, Complex tau, const std::vector<Complex>& grid);

// |integral of e_*^{z(nu + w_*^2)} dz| over the doubled loop z = 1/tau + s^2,
// |s| = radius. Vanishes because E has no s^{-2} term.
double closed_contour_vanishing(Complex nu, Complex tau, Complex w, double radius = 1.0,
                                int n_nodes = 256);

// Boundary-value solutions of (alpha^2 - w_*^2) * f = 0 spanned by
// delta_*(w + alpha) and delta_*(w - alpha): Phi(0) = 1, Phi'(0) = 0 and
// Psi(0) = 0, Psi'(0) = 1. Requires Re tau > 0.
struct PhiPsi {
  Complex alpha;
  Complex tau;
  GaussSum phi;
  GaussSum psi;

  Complex phi_at(Complex w) const { return eval(phi, w); }
  Complex psi_at(Complex w) const { return eval(psi, w); }
};
// Throws DegenerateBoundary when the boundary system is singular (alpha = 0).
PhiPsi phi_psi(Complex alpha, Complex tau);
// Phi alone; at alpha = 0 the symmetric choice delta_*(w)/delta_*(0) is used.
GaussSum phi_solution(Complex alpha, Complex tau);

// max over grid of |(alpha^2 - w_*^2) * f| summed over the terms of f.
double annihilator_residual(const GaussSum& f, Complex alpha, Complex tau, const std::vector<Complex>& grid);

// max over grid of |e_*^{t w^2} * delta_*(w + alpha) - e^{t alpha^2} delta_*(w + alpha)|.
// The product is the regular closed form, so t = 1/tau is allowed.
double semigroup_on_delta(Complex t, Complex alpha, Complex tau, const std::vector<Complex>& grid);
// Same for Phi and Psi.
double semigroup_on_phi_psi(Complex t, const PhiPsi& f, const std::vector<Complex>& grid);

// e_*^{t(nu + w_*^2)} * a_{2k-1} realised as the residue of s^{-2k} E(s)
// shifted by t: the branch point moves to s^2 = -t and leaves the contour.
// Radius must satisfy r < |t|/2 and r^2 < |t|/4.
struct OrphanReport {
  Complex product;        // at the given radius
  Complex product_half;   // at radius / 2
  Complex ladder;         // (nu + w_*^2) * a_{2k-1} = (k + 1/2) a_{2k+1} at t = 0
};
OrphanReport orphan_annihilation(Complex t, int k, Complex nu, Complex tau, Complex w, double radius,
                                 int n_nodes = 256);

// A scalar family f(z, tau, w) together with its z-partial at fixed tau.
// The covariant derivative on z = 1/tau is that partial evaluated at
// tau = 1/z; for tau-expressions it equals
//   d/dz f(z, 1/z, w) + (1/(4 z^2)) d^2/dw^2 f(z, 1/z, w).
struct CovariantFamily {
  std::function<Complex(Complex z, Complex tau, Complex w)> value;
  std::function<Complex(Complex z, Complex tau, Complex w)> partial_z;
};
Complex covariant_derivative(const CovariantFamily& f, Complex z0, Complex w);
CovariantFamily family_product(const CovariantFamily& f, const CovariantFamily& g);

// (m + k) z^m - m tau^k z^{m+k}: parallel polynomials of degree k.
CovariantFamily parallel_polynomial(int k, int m);

// a_{2k-1}(nu, w)(tau) as a family on the surface; only tau = 1/z is defined.
CovariantFamily laurent_family(int k, Complex nu);

// Closed-form solutions F = sqrt(z) e^{z(nu - w^2)} H(z w), z = 1/tau, of
//   d_z F = tau w F' + (w^2 + nu + tau/2) F.
// sheet selects the root of z.
GaussPoly relativity_solution(const Poly& h, Complex nu, Complex z, int sheet = 1);
// d/dz of the same closed form.
GaussPoly relativity_dz(const Poly& h, Complex nu, Complex z, int sheet = 1);
// Walks the polyline of z values with sqrt(z) continued from the principal
// root at the first point; returns the max residual of the evolution
// equation over the path samples and w grid. SingularPoint if z reaches 0.
double relativity_residual(const Poly& h, Complex nu, const std::vector<Complex>& z_path,
                           const std::vector<Complex>& grid);
CovariantFamily relativity_family(const Poly& h, Complex nu);

// Integrals of e_*^{z(nu + w_*^2)} dz from -infinity to 0. Gamma_- runs along
// the negative axis; Gamma_+ follows it and then loops once around 1/tau
// back to 0. The square root is the principal one at z = 0 on both paths
// and is continued backwards from there. Requires Re nu > 0, Re tau > 0.
struct GammaReport {
  Complex minus;             // integral over Gamma_-
  Complex plus;              // integral over Gamma_+
  Complex annihilated_minus; // (nu + w_*^2) * integral, expected 1
  Complex annihilated_plus;
  double difference;         // |(nu + w_*^2) * (plus - minus)|
};
GammaReport gamma_integrals(Complex nu, Complex tau, Complex w);

}  // namespace sd
