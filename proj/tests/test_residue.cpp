#include <cmath>

#include "doctest.h"
#include "stardeform/residue.hpp"

using namespace sd;

namespace {

std::vector<Complex> grid(double lo, double hi, int n) {
  std::vector<Complex> g;
  for (int i = 0; i < n; ++i) g.emplace_back(lo + (hi - lo) * i / (n - 1), 0.0);
  return g;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("Laurent coefficients: special values") {
  const Complex tau(1.0, 1.0);
  CHECK(std::abs(laurent_coeff_closed(0, 0.0, tau, 0.0) - 1.0 / std::sqrt(-tau)) < 1e-15);
  for (int k = 1; k <= 3; ++k) {
    for (Complex w : grid(-1, 1, 5)) CHECK(std::abs(laurent_coeff_closed(k, 0.0, tau, w)) == 0.0);
  }
  for (int k = -3; k <= -1; ++k) CHECK(std::abs(laurent_coeff_closed(k, 0.7, tau, 0.0)) == 0.0);
  // a_{-1} at nu = 0 is the bare Gaussian.
  for (Complex w : grid(-1, 1, 5)) {
    CHECK(rel(laurent_coeff_closed(0, 0.0, tau, w), std::exp(-w * w / tau) / std::sqrt(-tau)) < 1e-14);
  }
}

TEST_CASE("a_{-1} matches the Bessel-type double series") {
  const Complex nu(0.6, -0.2), tau(0.8, 0.5);
  for (Complex w : grid(-1.5, 1.5, 7)) {
    Complex sum = 0.0, term = 1.0;
    for (int k = 0; k < 60; ++k) {
      if (k > 0) term *= -nu * (w / tau) * (w / tau) / (double(k) * k);
      sum += term;
    }
    const Complex ref = std::exp(nu / tau) / std::sqrt(-tau) * std::exp(-w * w / tau) * sum;
    CHECK(rel(laurent_coeff_closed(0, nu, tau, w), ref) < 1e-13);
  }
}

TEST_CASE("contour residues agree with the closed form") {
  for (Complex tau : {Complex(1.0), Complex(1.0, 1.0), Complex(-0.7, 0.4)}) {
    for (Complex nu : {Complex(0.0), Complex(1.0), Complex(0.4, -0.6)}) {
      for (int k = -2; k <= 2; ++k) {
        for (Complex w : {Complex(0.0), Complex(0.3), Complex(-0.8, 0.1)}) {
          const Complex c = residue_contour(k, nu, tau, w);
          const Complex e = laurent_coeff_closed(k, nu, tau, w);
          CHECK(std::abs(c - e) <= 1e-10 * std::max(1.0, std::abs(e)));
        }
      }
    }
  }
  const Complex tau(1.0, 1.0);
  CHECK(std::abs(residue_contour(0, 0.0, tau, 0.4) - std::exp(-0.16 / tau) / std::sqrt(-tau)) < 1e-12);
}

TEST_CASE("contour radius independence") {
  for (int k = -1; k <= 2; ++k) {
    const Complex a = residue_contour(k, 0.9, Complex(1.0, 0.3), 0.5, 1.0);
    const Complex b = residue_contour(k, 0.9, Complex(1.0, 0.3), 0.5, 0.5, 512);
    CHECK(std::abs(a - b) < 1e-12);
  }
  CHECK_THROWS_AS(residue_contour(0, 1.0, 1.0, 3.0, 0.1, 16), NodeCountError);
  CHECK_THROWS_AS(residue_contour(0, 1.0, 1.0, 0.0, -1.0), DomainError);
}

TEST_CASE("ladder relation (nu + w^2) * a_{2k-1} = (k + 1/2) a_{2k+1}") {
  const auto g = grid(-1.5, 1.5, 9);
  for (int k = -2; k <= 2; ++k) {
    CHECK(ladder_residual(k, Complex(0.8, 0.3), Complex(0.9, 0.4), g) <= 1e-12);
    CHECK(ladder_residual(k, 1.0, 1.0, g) <= 1e-12);
  }
  // nu = 0, k = 0: the product is a_1 / 2 = 0.
  CHECK(ladder_residual(0, 0.0, 1.0, g) <= 1e-14);
  for (Complex w : g) CHECK(std::abs(laurent_coeff_closed(1, 0.0, 1.0, w)) == 0.0);
}

TEST_CASE("integrals over closed paths on the double cover vanish") {
  CHECK(closed_contour_vanishing(1.0, 1.0, 0.0) <= 1e-10);
  CHECK(closed_contour_vanishing(0.0, 1.0, 0.0) <= 1e-12);
  for (Complex w : grid(-1, 1, 5)) CHECK(closed_contour_vanishing(0.5, Complex(0.8, 0.2), w, 0.7) <= 1e-10);
}

TEST_CASE("Phi and Psi boundary solutions") {
  const Complex alpha(0.7, 0.2), tau(0.9, 0.3);
  const PhiPsi f = phi_psi(alpha, tau);
  CHECK(std::abs(f.phi_at(0.0) - 1.0) < 1e-14);
  CHECK(std::abs(f.psi_at(0.0)) < 1e-14);
  // Derivatives at 0 by central differences.
  const double h = 1e-5;
  CHECK(std::abs((f.phi_at(h) - f.phi_at(-h)) / (2 * h)) < 1e-8);
  CHECK(std::abs((f.psi_at(h) - f.psi_at(-h)) / (2 * h) - 1.0) < 1e-8);
  for (Complex w : grid(-2, 2, 9)) {
    CHECK(std::abs(f.phi_at(w) - f.phi_at(-w)) < 1e-13);
    CHECK(std::abs(f.psi_at(w) + f.psi_at(-w)) < 1e-13);
  }
  const auto g = grid(-2, 2, 9);
  CHECK(annihilator_residual(f.phi, alpha, tau, g) < 1e-13);
  CHECK(annihilator_residual(f.psi, alpha, tau, g) < 1e-13);
  CHECK_THROWS_AS(phi_psi(0.0, 1.0), DegenerateBoundary);
  CHECK(std::abs(eval(phi_solution(0.0, 1.0), 0.0) - 1.0) < 1e-15);
}

TEST_CASE("e_*^{t w^2} acts on star deltas as a genuine one-parameter group") {
  const auto g = grid(-2, 2, 9);
  const Complex tau(0.9, 0.3);
  CHECK(semigroup_on_delta(0.0, 0.5, tau, g) == 0.0);
  CHECK(semigroup_on_delta(1.0 / tau, 0.5, tau, g) <= 1e-12);
  CHECK(semigroup_on_delta(kI, 1.0, 2.0, g) <= 1e-12);
  CHECK(semigroup_on_delta(1.0, kI, 2.0, g) <= 1e-12);
  const PhiPsi f = phi_psi(0.6, tau);
  for (Complex t : {Complex(0.3), 1.0 / tau, Complex(-0.4, 1.0)}) CHECK(semigroup_on_phi_psi(t, f, g) <= 1e-12);
}

TEST_CASE("orphan annihilation: the t -> 0 limit is discontinuous") {
  const Complex nu(0.7, 0.1), tau(1.0, 0.2);
  for (int k = -1; k <= 1; ++k) {
    const OrphanReport r = orphan_annihilation(0.1, k, nu, tau, 0.4, 0.04);
    CHECK(std::abs(r.product) <= 1e-10);
    CHECK(std::abs(r.product_half) <= 1e-10);
    CHECK(std::abs(r.ladder - (k + 0.5) * laurent_coeff_closed(k + 1, nu, tau, 0.4)) == 0.0);
  }
  CHECK(std::abs(orphan_annihilation(0.1, 0, nu, tau, 0.4, 0.04).ladder) > 0.1);
  const OrphanReport zero = orphan_annihilation(Complex(0.0, -0.2), 0, 0.0, 1.0, 0.0, 0.05);
  CHECK(std::abs(zero.product) <= 1e-10);
  CHECK(std::abs(zero.ladder) == 0.0);
  CHECK_THROWS_AS(orphan_annihilation(0.1, 0, nu, tau, 0.4, 0.2), DomainError);
}

TEST_CASE("parallel polynomials are covariantly constant") {
  for (int k = -2; k <= 3; ++k) {
    for (int m = -1; m <= 3; ++m) {
      for (Complex z0 : {Complex(1.3), Complex(0.5, -0.8)}) {
        CHECK(std::abs(covariant_derivative(parallel_polynomial(k, m), z0, 0.0)) < 1e-12);
      }
    }
  }
  const CovariantFamily prod = family_product(parallel_polynomial(1, 2), parallel_polynomial(-2, 3));
  CHECK(std::abs(covariant_derivative(prod, Complex(0.7, 0.4), 0.0)) < 1e-12);
  CHECK(std::abs(prod.value(Complex(0.7, 0.4), 1.0 / Complex(0.7, 0.4), 0.0)) > 0.1);
  // A function of z alone: plain derivative.
  CovariantFamily cube{[](Complex z, Complex, Complex) { return z * z * z; },
                       [](Complex z, Complex, Complex) { return 3.0 * z * z; }};
  CHECK(std::abs(covariant_derivative(cube, 2.0, 0.5) - 12.0) < 1e-14);
}

TEST_CASE("Laurent coefficients satisfy the covariant evolution equation") {
  const Complex nu(0.5, 0.2);
  for (Complex z0 : {Complex(1.0), Complex(0.8, 0.4)}) {
    const Complex tau = 1.0 / z0;
    for (int k = -2; k <= 2; ++k) {
      const GaussPoly rhs = star_product(Poly{{nu + 0.5 * tau, 0.0, 1.0}}, laurent_coeff(k, nu, tau), tau);
      for (Complex w : grid(-1.5, 1.5, 7)) {
        const Complex lhs = covariant_derivative(laurent_family(k, nu), z0, w);
        CHECK(std::abs(lhs - rhs(w)) <= 1e-10 * std::max(1.0, std::abs(rhs(w))));
      }
    }
  }
}

TEST_CASE("laurent_coeff_dz against a finite difference") {
  const Complex nu(0.5, 0.2), z0(0.9, 0.3);
  const double h = 1e-4;
  for (int k = -1; k <= 1; ++k) {
    for (Complex w : grid(-1, 1, 5)) {
      auto a = [&](Complex z) { return laurent_coeff_closed(k, nu, 1.0 / z, w); };
      const Complex fd = (8.0 * (a(z0 + h) - a(z0 - h)) - (a(z0 + 2 * h) - a(z0 - 2 * h))) / (12 * h);
      CHECK(std::abs(laurent_coeff_dz(k, nu, 1.0 / z0)(w) - fd) < 1e-8);
    }
  }
}

TEST_CASE("closed-form solutions of the evolution equation") {
  const Complex nu(0.3, -0.1);
  const auto g = grid(-1.5, 1.5, 7);
  const Poly h{{1.0, Complex(0.5, 0.2), -0.3, 0.1}};
  // Circles around 0 flip the root of z; the equation holds on both sheets.
  std::vector<Complex> path;
  for (int j = 0; j <= 16; ++j) path.push_back(std::polar(1.0, 4.0 * kPi * j / 16));
  CHECK(relativity_residual(h, nu, path, g) <= 1e-12);
  CHECK(relativity_residual(Poly::constant(1.0), nu, {0.5, Complex(2.0, 1.0), Complex(-1.0, 0.5)}, g) <= 1e-12);
  CHECK_THROWS_AS(relativity_residual(h, nu, {1.0, -1.0}, g), SingularPoint);
  CHECK(std::abs(relativity_solution(Poly(), nu, 2.0)(0.3)) == 0.0);
  for (Complex z0 : {Complex(1.2), Complex(0.6, 0.7)}) {
    const GaussPoly f = relativity_solution(h, nu, z0);
    const GaussPoly rhs = star_product(Poly{{nu + 0.5 / z0, 0.0, 1.0}}, f, 1.0 / z0);
    for (Complex w : g) {
      CHECK(std::abs(covariant_derivative(relativity_family(h, nu), z0, w) - rhs(w)) < 1e-12 * std::max(1.0, std::abs(rhs(w))));
    }
  }
}

TEST_CASE("initial data F(1, 1) = 1") {
  // H(u) = e^{u^2 - nu} gives F(z) = sqrt(z) e^{z(nu - w^2)} e^{-(nu - z^2 w^2)}.
  const Complex nu(0.4, 0.1);
  for (Complex w : grid(-1, 1, 5)) {
    const Complex z = 1.0;
    const Complex f = std::sqrt(z) * std::exp(z * (nu - w * w)) * std::exp(-(nu - z * z * w * w));
    CHECK(std::abs(f - 1.0) < 1e-15);
  }
}

TEST_CASE("the exponential on the cover is recovered from H(z, s)") {
  const Complex nu(0.4, 0.2);
  for (Complex tau : {Complex(1.0), Complex(0.7, 0.3), Complex(0.7, -0.3)}) {
    for (Complex s : {Complex(0.8, 0.3), Complex(-0.5, 1.1)}) {
      for (Complex w : grid(-1, 1, 5)) {
        const Complex z = 1.0 / tau;
        const Complex hz = std::exp(nu * s * s - (z * w) * (z * w) / (s * s)) / (kI * s);
        const Complex f = std::sqrt(z) * std::exp(z * (nu - w * w)) * hz;
        // The two roots agree when sqrt(-tau) = i sqrt(tau); otherwise the
        // representations sit on opposite sheets, related by s -> -s.
        const double sheet = std::abs(std::sqrt(-tau) - kI * std::sqrt(tau)) < 1e-12 ? 1.0 : -1.0;
        CHECK(rel(f, sheet * cover_exponential(s, nu, tau, w)) < 1e-12);
        CHECK(rel(f, cover_exponential(sheet * s, nu, tau, w)) < 1e-12);
      }
    }
  }
}

TEST_CASE("Gamma path integrals differ by a solution of (nu + w^2) * f = 0") {
  for (Complex tau : {Complex(1.0), Complex(0.8, 0.3)}) {
    for (Complex w : {Complex(0.0), Complex(0.5), Complex(-0.9)}) {
      const GammaReport r = gamma_integrals(Complex(1.0, 0.2), tau, w);
      CHECK(std::abs(r.annihilated_minus - 1.0) < 1e-8);
      CHECK(std::abs(r.annihilated_plus - 1.0) < 1e-8);
      CHECK(r.difference < 1e-8);
      CHECK(std::abs(r.plus - r.minus) > 1e-3);
    }
  }
  CHECK_THROWS_AS(gamma_integrals(-1.0, 1.0, 0.0), DomainError);
}
