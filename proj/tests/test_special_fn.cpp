#include <cmath>

#include "doctest.h"
#include "stardeform/special.hpp"

using namespace sd;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
  return g;
}

// Taylor coefficients of exp(sqrt2 t w + t^2 tau / 2) in t, times n!.
std::vector<Complex> hermite_generating(Complex w, Complex tau, int n_max) {
  std::vector<Complex> lin(n_max + 1), quad(n_max + 1, 0.0), prod(n_max + 1, 0.0);
  lin[0] = 1.0;
  for (int k = 1; k <= n_max; ++k) lin[k] = lin[k - 1] * std::sqrt(2.0) * w / double(k);
  Complex q = 1.0;
  for (int k = 0; 2 * k <= n_max; ++k) {
    quad[2 * k] = q;
    q *= tau / 2.0 / double(k + 1);
  }
  double fact = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) fact *= n;
    for (int k = 0; k <= n; ++k) prod[n] += lin[k] * quad[n - k];
    prod[n] *= fact;
  }
  return prod;
}

}  // namespace

TEST_CASE("Hermite table matches the generating function") {
  HermiteFamily fam = hermite_table(10, QComplex(-1));
  CHECK(fam.render(0) == "1");
  CHECK(fam.render(1) == "sqrt(2)*w");
  CHECK(fam.render(2) == "2w^2 - 1");
  CHECK(fam.render(3) == "sqrt(2)*(2w^3 - 3w)");
  const Complex tau(0.4, -0.7);
  HermiteFamily cf = hermite_table(10, QComplex::from_complex(tau));
  for (double w : {-1.3, 0.2, 0.9}) {
    auto ref = hermite_generating(w, tau, 10);
    for (unsigned n = 0; n <= 10; ++n) {
      CHECK(std::abs(cf.numeric(n).eval(Complex(w)) - ref[n]) < 1e-10 * std::max(1.0, std::abs(ref[n])));
    }
  }
}

TEST_CASE("Hermite identities hold exactly; convolution needs the 2^n factor") {
  for (QComplex tau : {QComplex(-1), QComplex(mpq_class(3, 7), mpq_class(-2, 5))}) {
    HermiteReport rep = hermite_checks(hermite_table(12, tau));
    CHECK(rep.recurrence);
    CHECK(rep.ode);
    CHECK(rep.ladder);
    CHECK(rep.top_derivative);
    CHECK(rep.product_law);
    CHECK(rep.convolution_scaled);
    CHECK_FALSE(rep.convolution_unscaled);
  }
}

TEST_CASE("Hermite orthogonality by quadrature") {
  CHECK(std::abs(hermite_orthogonality(0, 0, -1.0) - std::sqrt(kPi)) < 1e-12);
  CHECK(std::abs(hermite_orthogonality(3, 3, -1.0) - 6.0 * std::sqrt(kPi)) < 1e-10);
  for (Complex tau : {Complex(-1.0), Complex(-0.8, 0.5)}) {
    for (unsigned n = 0; n <= 8; ++n) {
      for (unsigned m = 0; m <= 8; ++m) {
        Complex v = hermite_orthogonality(n, m, tau);
        Complex norm = hermite_norm(n, tau);
        if (n == m) CHECK(std::abs(v - norm) < 1e-8 * std::abs(norm));
        else CHECK(std::abs(v) < 1e-8 * std::abs(hermite_norm(std::max(n, m), tau)));
      }
    }
  }
  CHECK_THROWS_AS(hermite_orthogonality(1, 1, 1.0), DomainError);
}

TEST_CASE("classical Bessel kernels") {
  CHECK(bessel_j(0, 1.0).real() == doctest::Approx(0.7651976865579666).epsilon(1e-14));
  CHECK(bessel_j(1, 1.0).real() == doctest::Approx(0.4400505857449335).epsilon(1e-14));
  CHECK(bessel_j(-1, 1.0).real() == doctest::Approx(-0.4400505857449335).epsilon(1e-14));
  CHECK(bessel_j(5, 10.0).real() == doctest::Approx(-0.23406152818679364).epsilon(1e-12));
  CHECK(bessel_j(0, 20.0).real() == doctest::Approx(0.16702466434058316).epsilon(1e-12));
  CHECK(bessel_i(0, 1.0).real() == doctest::Approx(1.2660658777520082).epsilon(1e-14));
  CHECK(bessel_i(2, 3.0).real() == doctest::Approx(2.245212440929951).epsilon(1e-14));
}

TEST_CASE("star Bessel table: unit sum, symmetry, direct Fourier agreement") {
  auto g = grid(-1, 1, 21);
  for (Complex tau : {Complex(1.0), Complex(0.3, -0.8)}) {
    BesselTable t = bessel_table(1.0, tau, 20, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      Complex sum = 0.0;
      for (int n = -20; n <= 20; ++n) sum += t.at(n)[i];
      CHECK(std::abs(sum - 1.0) < 1e-10);
      for (int n = 1; n <= 6; ++n) {
        CHECK(std::abs(t.at(n)[i] - (n % 2 ? -1.0 : 1.0) * t.at(-n)[i]) < 1e-14);
        CHECK(std::abs(t.at(n)[i] - bessel_star_direct(n, 1.0, tau, g[i])) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(bessel_table(1.0, 1.0, 1, g), TruncationFailure);
}

TEST_CASE("the correction factor carries e^{-a^2 tau/8}, not its reciprocal") {
  // Convolving with the opposite-sign factor disagrees with the direct
  // Fourier coefficients of e_*^{iaw sin s}.
  const Complex a = 1.0, tau = 1.0, w = 0.4;
  const Complex z = a * a * tau / 8.0;
  Complex flipped = 0.0;
  for (int k = -30; k <= 30; ++k) flipped += std::exp(z) * bessel_i(k, -z) * bessel_j(2 - 2 * k, a * w);
  const Complex direct = bessel_star_direct(2, a, tau, w);
  CHECK(std::abs(flipped - direct) > 1e-3);
  CHECK(std::abs(bessel_table(a, tau, 20, {0.4}).at(2)[0] - direct) < 1e-13);
}

TEST_CASE("star Bessel addition formula") {
  auto g = grid(-1, 1, 5);
  CHECK(bessel_addition_residual(0, 1.0, 0.5, 1.0, 16, g) < 1e-9);
  CHECK(bessel_addition_residual(2, 1.0, 0.5, 1.0, 16, g) < 1e-9);
  CHECK(std::abs(bessel_star_product(1, 0, 1.0, 0.5, 1.0, 0.3) -
                 bessel_star_product(0, 1, 0.5, 1.0, 1.0, 0.3)) < 1e-14);
}

TEST_CASE("star Legendre equals the intertwined classical polynomial") {
  const auto g = grid(-1, 1, 9);
  for (Complex tau : {Complex(-1.0), Complex(-0.5, 0.4)}) {
    const Complex a(0.2, 0.0);
    auto vals = legendre_star(8, a, tau, g);
    for (unsigned n = 0; n <= 8; ++n) {
      Poly ref = to_numeric(intertwine(legendre_classical(n), QComplex(0), QComplex::from_complex(tau)));
      for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(std::abs(vals[n][i] - ref.eval(g[i] + a)) < 1e-11);
      }
    }
  }
  // Small tau recovers the classical polynomials.
  auto small = legendre_star(6, 0.0, -1e-12, g);
  for (unsigned n = 0; n <= 6; ++n) {
    Poly cl = to_numeric(legendre_classical(n));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(small[n][i] - cl.eval(Complex(g[i]))) < 1e-8);
  }
  CHECK_THROWS_AS(legendre_star(2, 0.0, 1.0, g), DomainError);
}

TEST_CASE("P_2 agrees with finite differences of the full t-integral") {
  const Complex tau = -1.0;
  const double x = 0.6;
  auto full = [&](double t) {
    auto f = [&](double u) {
      const double s = u * u;
      return 2.0 * std::exp(tau * s * s * t * t - s * (1.0 - 2.0 * t * x + t * t));
    };
    Complex acc = 0.0;
    for (int p = 0; p < 40; ++p) {
      const double lo = 0.25 * p, hi = 0.25 * (p + 1);
      const double m = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
      // 5-point Gauss-Legendre per panel keeps the oracle independent of the library rule.
      static const double xs[5] = {0.0, 0.5384693101056831, -0.5384693101056831, 0.9061798459386640,
                                   -0.9061798459386640};
      static const double ws[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                   0.2369268850561891, 0.2369268850561891};
      for (int k = 0; k < 5; ++k) acc += ws[k] * h * f(m + h * xs[k]);
    }
    return acc / std::sqrt(kPi);
  };
  auto second = [&](double h) { return (full(h) - 2.0 * full(0.0) + full(-h)) / (2.0 * h * h); };
  const double h = 0.01;
  Complex richardson = (4.0 * second(h / 2) - second(h)) / 3.0;
  auto vals = legendre_star(2, 0.0, tau, {x});
  CHECK(std::abs(vals[2][0] - richardson) < 1e-7);
}

TEST_CASE("star Laguerre: classical case, scaling, top derivative") {
  auto lag = laguerre_star(10, QComplex(-1));
  for (unsigned n = 0; n <= 10; ++n) {
    RationalPoly cl = laguerre_classical(n, mpq_class(-1, 2));
    CHECK(lag[n] == cl * QComplex(n % 2 ? -1 : 1));
    CHECK(lag[n].derivative(n) == RationalPoly::constant(1));
  }
  const QComplex tau(mpq_class(2, 3), mpq_class(1, 5));
  auto lt = laguerre_star(8, tau);
  for (unsigned n = 0; n <= 8; ++n) {
    // L_n(x, tau) = tau^n L_n^{(-1/2)}(-x / tau)
    RationalPoly scaled = laguerre_classical(n, mpq_class(-1, 2)).compose_linear(-(QComplex(1) / tau), 0);
    CHECK(lt[n] == scaled * pow(tau, n));
  }
}

TEST_CASE("star Laguerre equals star powers of w^2 (cross-check with star-exp)") {
  const QComplex tau(mpq_class(-3, 4), mpq_class(1, 2));
  auto lt = laguerre_star(7, tau);
  RationalPoly sq = RationalPoly{tau / QComplex(2), 0, 1};
  RationalPoly power = RationalPoly::constant(1);
  for (unsigned n = 0; n <= 7; ++n) {
    RationalPoly in_w;
    for (int k = 0; k <= lt[n].degree(); ++k) in_w += RationalPoly::monomial(lt[n].coeff(k), 2 * k);
    CHECK(in_w * QComplex(factorial_q(n)) == power);
    power = star_product(power, sq, tau);
  }
}

TEST_CASE("Laguerre orthogonality holds for x^{-1/2} with the derived norm") {
  for (Complex tau : {Complex(-1.0), Complex(-1.0, 0.6)}) {
    for (unsigned n = 0; n <= 5; ++n) {
      for (unsigned m = 0; m <= 5; ++m) {
        Complex v = laguerre_gram(n, m, tau, -1);
        if (n == m) CHECK(std::abs(v - laguerre_norm(n, tau)) < 1e-9 * std::abs(laguerre_norm(n, tau)));
        else CHECK(std::abs(v) < 1e-9 * std::abs(laguerre_norm(std::max(n, m), tau)));
      }
    }
  }
  // The x^{1/2} weight does not orthogonalize the family.
  CHECK(std::abs(laguerre_gram(1, 0, -1.0, 1)) > 0.1);
}
