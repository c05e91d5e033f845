#include <cmath>
#include <random>

#include "doctest.h"
#include "stardeform/gauss.hpp"

using namespace sd;

namespace {

std::vector<Complex> grid(double lo, double hi, int n) {
  std::vector<Complex> g;
  for (int i = 0; i < n; ++i) g.emplace_back(lo + (hi - lo) * i / (n - 1), 0.0);
  return g;
}

// Truncated defining series sum_k (tau/2)^k / k! f^(k) g^(k) evaluated at w.
Complex series_oracle(const GaussPoly& f, const GaussPoly& g, Complex tau, Complex w, int kmax) {
  GaussPoly df = f, dg = g;
  Complex c = 1.0, acc = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) {
      df = derivative(df);
      dg = derivative(dg);
      c *= tau / (2.0 * k);
    }
    acc += c * df(w) * dg(w);
  }
  return acc;
}

// Pure Gaussian derivatives via f^(k+1) = (2aw + b) f^(k) + 2 a k f^(k-1).
std::vector<Complex> gaussian_derivatives(Complex a, Complex b, Complex w, int kmax) {
  std::vector<Complex> d(kmax + 1);
  d[0] = std::exp(a * w * w + b * w);
  d[1] = (2.0 * a * w + b) * d[0];
  for (int k = 1; k < kmax; ++k) d[k + 1] = (2.0 * a * w + b) * d[k] + 2.0 * a * double(k) * d[k - 1];
  return d;
}

}  // namespace

TEST_CASE("linear exponential law is exact in closed form") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 50; ++i) {
    Complex s(u(rng), u(rng)), t(u(rng), u(rng)), tau(u(rng), u(rng));
    CHECK(linear_exponential_law_residual(s, t, tau) < 1e-13);
  }
}

TEST_CASE("pure Gaussian product matches the derivative recurrence series") {
  const Complex tau(0.7, 0.2);
  const Complex a1(0.15, 0.05), b1(0.3, -0.2), a2(-0.1, 0.08), b2(-0.4, 0.1);
  GaussPoly f, g;
  f.alpha = a1;
  f.beta = b1;
  g.alpha = a2;
  g.beta = b2;
  GaussPoly prod = gauss_star(f, g, tau);
  for (Complex w : grid(-1.5, 1.5, 7)) {
    auto df = gaussian_derivatives(a1, b1, w, 60);
    auto dg = gaussian_derivatives(a2, b2, w, 60);
    Complex c = 1.0, acc = 0.0;
    for (int k = 0; k <= 60; ++k) {
      if (k > 0) c *= tau / (2.0 * k);
      acc += c * df[k] * dg[k];
    }
    CHECK(std::abs(prod(w) - acc) < 1e-10 * std::max(1.0, std::abs(acc)));
  }
}

TEST_CASE("Gaussian-polynomial product matches the truncated series") {
  const Complex tau(0.5, -0.3);
  GaussPoly f;
  f.poly = Poly{Complex(1, 1), 2.0, Complex(0, -0.5)};
  f.alpha = Complex(0.1, 0.02);
  f.beta = 0.2;
  f.amp = Complex(0.5, 0.1);
  GaussPoly g;
  g.poly = Poly{-1.0, 0.0, 0.0, 1.0};
  g.alpha = Complex(-0.12, 0.0);
  g.beta = Complex(0.0, 0.3);
  GaussPoly prod = gauss_star(f, g, tau);
  for (Complex w : grid(-1.0, 1.0, 5)) {
    Complex ref = series_oracle(f, g, tau, w, 45);
    CHECK(std::abs(prod(w) - ref) < 1e-9 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("polynomial times Gaussian uses the finite sum") {
  const Complex tau(1.0, 0.5);
  GaussPoly g = star_exp_quadratic(Complex(0.2, 0.1), tau);
  Poly p{1.0, Complex(0, 2), 3.0};
  GaussPoly as_gauss;
  as_gauss.poly = p;
  as_gauss.alpha = 0.0;
  GaussPoly closed = gauss_star(as_gauss, g, tau);
  GaussPoly finite = star_product(p, g, tau);
  for (Complex w : grid(-2, 2, 9)) CHECK(std::abs(closed(w) - finite(w)) < 1e-12);
}

TEST_CASE("heat kernel matches its series and transports quadratic exponentials") {
  GaussPoly g;
  g.poly = Poly{0.5, -1.0, 2.0};
  g.alpha = Complex(-0.3, 0.1);
  g.beta = Complex(0.4, 0.2);
  const Complex theta(0.05, 0.03);
  GaussPoly h = heat(g, theta);
  for (Complex w : grid(-1, 1, 5)) {
    GaussPoly d = g;
    Complex acc = g(w), c = 1.0;
    for (int k = 1; k <= 30; ++k) {
      d = derivative(derivative(d));
      c *= theta / double(k);
      acc += c * d(w);
    }
    CHECK(std::abs(h(w) - acc) < 1e-10);
  }
  const Complex t(0.3, -0.2), tau(0.8, 0.1), tau2(0.4, 0.5);
  GaussPoly moved = intertwine(star_exp_quadratic(t, tau), tau, tau2);
  GaussPoly direct = star_exp_quadratic(t, tau2);
  for (Complex w : grid(-2, 2, 9)) CHECK(std::abs(moved(w) - direct(w)) < 1e-12);
}

TEST_CASE("quadratic exponential law with continued roots") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  auto g = grid(-1, 1, 11);
  for (int i = 0; i < 40; ++i) {
    Complex s(u(rng), u(rng)), t(u(rng), u(rng)), tau(1.0 + u(rng), u(rng));
    CHECK(quad_exponential_law_residual(s, t, tau, g) < 1e-10);
  }
  // Large parameters: the product determinant winds, continuation keeps the law.
  CHECK(quad_exponential_law_residual(Complex(0.9, 0.6), Complex(0.8, 0.7), 1.0, g) < 1e-10);
}

TEST_CASE("sheet of e_*^{tw^2} flips after looping around 1/tau") {
  const Complex tau = 1.0;
  const Complex t(2.0, 0.5);
  SheetTrace straight = star_exp_quadratic_sheet(t, tau);
  CHECK(straight.sheet == 1);
  CHECK(straight.crossings == 0);
  // Pass below 1/tau = 1: the radicand 1 - t crosses the negative axis.
  std::vector<Complex> below{Complex(0.5, 0), Complex(1.5, -0.5), Complex(2.0, 0.5)};
  SheetTrace around = star_exp_quadratic_sheet(t, tau, below);
  CHECK(around.sheet == -1);
  CHECK(around.crossings == 1);
  CHECK(std::abs(star_exp_quadratic(t, tau, below)(0.3) + star_exp_quadratic(t, tau)(0.3)) < 1e-14);
  CHECK_THROWS_AS(star_exp_quadratic(1.0, tau), SingularPoint);
  std::vector<Complex> through{Complex(1.0, 0.0), Complex(2.0, 0.5)};
  CHECK_THROWS_AS(star_exp_quadratic(t, tau, through), SingularPoint);
}

TEST_CASE("two-to-two intertwiner flips iff the tau triangle encloses 1/t") {
  const Complex t(0.5, 0.0);  // 1/t = 2
  std::vector<Complex> around{Complex(1, -1), Complex(3, -1), Complex(2, 2), Complex(1, -1)};
  CHECK(intertwine_quadratic_sheet(t, around).sheet == -1);
  std::vector<Complex> missing{Complex(-1, -1), Complex(0.5, -1), Complex(0, 1), Complex(-1, -1)};
  CHECK(intertwine_quadratic_sheet(t, missing).sheet == 1);
}

TEST_CASE("translation by e_*^{2sw} agrees with the closed-form product") {
  const Complex tau(0.9, -0.2), s(0.3, 0.4);
  GaussPoly g;
  g.poly = Poly{1.0, 0.5, Complex(0, 1)};
  g.alpha = Complex(-0.2, 0.05);
  g.beta = 0.1;
  GaussPoly via_product = gauss_star(star_exp_linear(2.0 * s, tau), g, tau);
  GaussPoly via_translate = translate_action(s, g, tau);
  for (Complex w : grid(-1, 1, 7)) {
    CHECK(std::abs(via_product(w) - via_translate(w)) < 1e-12);
    CHECK(std::abs(translate_action(s, [&](Complex z) { return g(z); }, tau, w) - via_translate(w)) <
          1e-12);
  }
}

TEST_CASE("e_*^{tw^2} times a Gaussian is regular at t = 1/tau") {
  const Complex tau(1.0, 0.3);
  GaussPoly delta;
  delta.alpha = -1.0 / tau;
  delta.amp = 1.0 / std::sqrt(kPi * tau);
  for (Complex t : {Complex(0.2, 0.1), 1.0 / tau, Complex(3.0, -1.0)}) {
    GaussPoly r = quad_exp_star(t, delta, tau);
    for (Complex w : grid(-1, 1, 5)) CHECK(std::abs(r(w) - delta(w)) < 1e-13);
  }
  GaussPoly gsn;
  gsn.alpha = Complex(-0.3, 0.1);
  gsn.beta = Complex(0.2, 0.0);
  const Complex t(0.25, -0.1);
  GaussPoly a = quad_exp_star(t, gsn, tau);
  GaussPoly b = gauss_star(star_exp_quadratic(t, tau), gsn, tau);
  for (Complex w : grid(-1, 1, 5)) CHECK(std::abs(a(w) - b(w)) < 1e-12);
}

TEST_CASE("convergence radius probe separates ell = 2 from ell = 3") {
  // At tau = 1 all coefficients of P_n are positive, so the sup over the unit
  // disk is P_n(1); compare against exact rational arithmetic.
  auto c3 = series_radius_probe(3, 1.0, 16);
  RationalPoly p = RationalPoly::constant(1);
  mpq_class fact(1);
  for (unsigned n = 1; n <= 16; ++n) {
    for (unsigned k = 0; k < 3; ++k)
      p = RationalPoly::w() * p + p.derivative() * QComplex(mpq_class(1, 2));
    fact *= n;
    double exact = mpq_class(p(QComplex(1)).re() / fact).get_d();
    CHECK(c3[n - 1] == doctest::Approx(exact).epsilon(1e-12));
  }
  for (unsigned n = 5; n < 16; ++n) CHECK(c3[n] / c3[n - 1] > c3[n - 1] / c3[n - 2]);
  auto c2 = series_radius_probe(2, 1.0, 40);
  for (unsigned n = 10; n < 40; ++n) CHECK(c2[n] / c2[n - 1] < 1.3);
}
