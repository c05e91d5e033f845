#include <random>

#include "doctest.h"
#include "stardeform/poly.hpp"

using namespace sd;

namespace {

RationalPoly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  std::vector<QComplex> c(deg(rng) + 1);
  for (auto& x : c) x = QComplex(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
  return RationalPoly(std::move(c));
}

QComplex random_tau(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-7, 7);
  std::uniform_int_distribution<long> den(1, 4);
  return {mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))};
}

// Independent oracle: expand both factors into monomials and use
// w^a * w^b = sum_k tau^k/(2^k k!) a!/(a-k)! b!/(b-k)! w^{a+b-2k}.
RationalPoly monomial_oracle(const RationalPoly& f, const RationalPoly& g, const QComplex& tau) {
  RationalPoly acc;
  for (int a = 0; a <= f.degree(); ++a) {
    for (int b = 0; b <= g.degree(); ++b) {
      for (int k = 0; k <= std::min(a, b); ++k) {
        mpq_class c = factorial_q(a) / factorial_q(a - k) * factorial_q(b) / factorial_q(b - k) /
                      factorial_q(k);
        c /= mpq_class(mpz_class(1) << k);
        acc += RationalPoly::monomial(f.coeff(a) * g.coeff(b) * pow(tau, k) * QComplex(c),
                                      a + b - 2 * k);
      }
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("w*w and the w^2 square at tau = 1") {
  const QComplex tau(1);
  RationalPoly w = RationalPoly::w();
  CHECK(star_product(w, w, tau) == RationalPoly{QComplex(mpq_class(1, 2)), 0, 1});
  RationalPoly w2 = RationalPoly::monomial(1, 2);
  CHECK(to_string(star_product(w2, w2, tau)) == "w^4 + 2w^2 + 1/2");
  CHECK(to_string(star_product(to_numeric(w2), to_numeric(w2), Complex(1.0))) ==
        "w^4 + 2w^2 + 0.5");
}

TEST_CASE("star product agrees with the monomial expansion oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    RationalPoly f = random_poly(rng, 7);
    RationalPoly g = random_poly(rng, 7);
    QComplex tau = random_tau(rng);
    CHECK(star_product(f, g, tau) == monomial_oracle(f, g, tau));
  }
}

TEST_CASE("commutativity and associativity hold exactly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    RationalPoly f = random_poly(rng, 5);
    RationalPoly g = random_poly(rng, 5);
    RationalPoly h = random_poly(rng, 5);
    QComplex tau = random_tau(rng);
    CHECK(star_product(f, g, tau) == star_product(g, f, tau));
    CHECK(star_product(star_product(f, g, tau), h, tau) ==
          star_product(f, star_product(g, h, tau), tau));
  }
}

TEST_CASE("intertwiners form a cocycle and are algebra isomorphisms") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    RationalPoly f = random_poly(rng, 6);
    RationalPoly g = random_poly(rng, 6);
    QComplex t1 = random_tau(rng), t2 = random_tau(rng), t3 = random_tau(rng);
    CHECK(intertwine(intertwine(f, t1, t2), t2, t3) == intertwine(f, t1, t3));
    CHECK(intertwine(f, t1, t1) == f);
    CHECK(intertwine(star_product(f, g, t1), t1, t2) ==
          star_product(intertwine(f, t1, t2), intertwine(g, t1, t2), t2));
  }
}

TEST_CASE("at tau = 0 the product is the pointwise product") {
  std::mt19937_64 rng(17);
  RationalPoly f = random_poly(rng, 6);
  RationalPoly g = random_poly(rng, 6);
  CHECK(star_product(f, g, QComplex(0)) == f * g);
}

TEST_CASE("star powers of w follow the recurrence and match iterated products") {
  const QComplex tau(mpq_class(3, 2), mpq_class(-1, 3));
  RationalPoly iterated = RationalPoly::constant(1);
  for (unsigned n = 0; n <= 12; ++n) {
    CHECK(w_star_power(n, tau) == iterated);
    iterated = star_product(iterated, RationalPoly::w(), tau);
  }
  // P_4 = w^4 + 3 tau w^2 + 3 tau^2 / 4
  const QComplex t(1);
  CHECK(w_star_power(4, t) ==
        RationalPoly{QComplex(mpq_class(3, 4)), 0, QComplex(3), 0, QComplex(1)});
  // The star power of w is the intertwined ordinary power.
  CHECK(w_star_power(9, tau) == intertwine(RationalPoly::monomial(1, 9), QComplex(0), tau));
}

TEST_CASE("infinitesimal intertwiner is the tau-derivative of the intertwiner") {
  std::mt19937_64 rng(19);
  RationalPoly f = random_poly(rng, 8);
  const QComplex tau = random_tau(rng);
  const QComplex h(mpq_class(1, 1000000));
  // The intertwiner is polynomial in h; subtract the known h^2 term exactly.
  RationalPoly step = intertwine(f, tau, tau + h) - f;
  RationalPoly second = f.derivative(4) * (h * h / QComplex(32));
  RationalPoly first = (step - second) * (QComplex(1) / h);
  RationalPoly diff = first - infinitesimal_intertwiner(f);
  for (const auto& c : diff.coeffs()) {
    CHECK(abs(c.re()) < mpq_class(1, 1000));
    CHECK(abs(c.im()) < mpq_class(1, 1000));
  }
  CHECK(infinitesimal_intertwiner(RationalPoly::monomial(1, 2)) ==
        RationalPoly::constant(QComplex(mpq_class(1, 2))));
}

TEST_CASE("double precision path tracks the exact one") {
  std::mt19937_64 rng(23);
  RationalPoly f = random_poly(rng, 6);
  RationalPoly g = random_poly(rng, 6);
  const QComplex tau(mpq_class(1, 2), mpq_class(1, 4));
  Poly exact = to_numeric(star_product(f, g, tau));
  Poly approx = star_product(to_numeric(f), to_numeric(g), tau.to_complex());
  CHECK(max_coeff_diff(exact, approx) < 1e-11);
}

TEST_CASE("polynomial utilities") {
  RationalPoly p{1, 2, 3};
  CHECK(p.shift(QComplex(1)) == RationalPoly{6, 8, 3});
  CHECK(p.compose_linear(QComplex(2), QComplex(0)) == RationalPoly{1, 4, 12});
  CHECK(to_string(RationalPoly{QComplex(-1), 0, QComplex(2)}) == "2w^2 - 1");
  CHECK(to_string(Poly{Complex(0, 1), Complex(1, 2)}) == "(1+2i)w + i");
  CHECK(RationalPoly().degree() == -1);
}
