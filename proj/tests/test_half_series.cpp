#include <cmath>
#include <random>

#include "doctest.h"
#include "stardeform/distributions.hpp"
#include "stardeform/halfseries.hpp"

using namespace sd;

namespace {

HalfSeries random_series(std::mt19937& rng, unsigned order, int base = 0) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<QComplex> a(order + 1);
  for (auto& x : a) x = QComplex(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
  if (a[0].is_zero()) a[0] = QComplex(1L);
  return HalfSeries(a, base, order);
}

// Plain convolution, written independently of the class.
std::vector<QComplex> convolve(const std::vector<QComplex>& a, const std::vector<QComplex>& b, unsigned order) {
  std::vector<QComplex> c(order + 1, QComplex(0L));
  for (unsigned i = 0; i < a.size() && i <= order; ++i)
    for (unsigned j = 0; j < b.size() && i + j <= order; ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<mpq_class> euler_by_recurrence(unsigned n) {
  std::vector<mpq_class> e(2 * n + 1, 0);
  e[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    mpq_class s = 0;
    for (unsigned k = 0; k < m; ++k) s += binomial_q(2 * m, 2 * k) * e[2 * k];
    e[2 * m] = -s;
  }
  return e;
}

std::vector<mpq_class> bernoulli_by_recurrence(unsigned n) {
  std::vector<mpq_class> b(n + 1, 0);
  b[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    mpq_class s = 0;
    for (unsigned k = 0; k < m; ++k) s += binomial_q(m + 1, k) * b[k];
    b[m] = -s / mpq_class(m + 1);
  }
  return b;
}

std::vector<Complex> grid(double lo, double hi, int n) {
  std::vector<Complex> g;
  for (int i = 0; i < n; ++i) g.emplace_back(lo + (hi - lo) * i / (n - 1), 0.0);
  return g;
}

}  // namespace

TEST_CASE("half-series multiplication") {
  std::mt19937 rng(20240611);
  const HalfSeries f = random_series(rng, 12, -2), g = random_series(rng, 12, 3), h = random_series(rng, 12);
  CHECK(f * HalfSeries::one(12) == f);
  const HalfSeries fg = f * g;
  CHECK(fg.base_deg() == 1);
  const auto ref = convolve(f.coeffs(), g.coeffs(), 12);
  for (unsigned n = 0; n <= 12; ++n) CHECK(fg.coeff(n) == ref[n]);
  CHECK(f * g == g * f);
  CHECK((f * g) * h == f * (g * h));
  CHECK(f * (g + h) == f * g + f * h);
  // q = e_*^{2iw}: (1 - q) * sum q^n = 1 through order K.
  std::vector<QComplex> geo(25, QComplex(0L));
  for (unsigned n = 0; n <= 24; n += 2) geo[n] = QComplex(1L);
  const HalfSeries one_minus_q({QComplex(1L), QComplex(0L), QComplex(-1L)});
  const HalfSeries prod = one_minus_q * HalfSeries(geo);
  CHECK(prod.coeff(0) == QComplex(1L));
  for (unsigned n = 1; n <= 24; ++n) CHECK(prod.coeff(n).is_zero());
}

TEST_CASE("inverses by indeterminate coefficients") {
  std::mt19937 rng(7);
  CHECK(hs_inverse(HalfSeries::one()) == HalfSeries::one());
  for (int trial = 0; trial < 5; ++trial) {
    const HalfSeries f = random_series(rng, 16, trial - 2);
    const HalfSeries g = hs_inverse(f);
    CHECK(g.base_deg() == -f.base_deg());
    CHECK(f * g == HalfSeries::one(16));
    CHECK(hs_inverse(g) == f);
  }
  // z / (e^z - 1): b_1 = -1/2 and the even coefficients are B_{2n}/(2n)!.
  std::vector<QComplex> s(25);
  for (unsigned n = 0; n <= 24; ++n) s[n] = QComplex(mpq_class(1) / factorial_q(n + 1));
  const HalfSeries inv = hs_inverse(HalfSeries(s));
  CHECK(inv.coeff(1) == QComplex(mpq_class(-1, 2)));
  CHECK(inv.coeff(2) == QComplex(mpq_class(1, 12)));
  CHECK(inv.coeff(3).is_zero());
  CHECK_THROWS_AS(hs_inverse(HalfSeries()), NonUnit);
  // Leading zeros are absorbed into the base degree, so q is a unit.
  const HalfSeries q({QComplex(0L), QComplex(1L)});
  CHECK(q.base_deg() == 1);
  CHECK(hs_inverse(q).base_deg() == -1);
}

TEST_CASE("Euler numbers") {
  const auto e = euler_numbers(10);
  CHECK(e[0] == 1);
  CHECK(e[2] == -1);
  CHECK(e[4] == 5);
  CHECK(e[6] == -61);
  CHECK(e == euler_by_recurrence(10));
  for (unsigned m = 1; m < e.size(); m += 2) CHECK(e[m] == 0);
  // Only the full exponential 1 + e^{2z} reproduces them.
  CHECK(euler_numbers(4, EulerReading::TailOnly) != euler_by_recurrence(4));
}

TEST_CASE("Bernoulli numbers") {
  const auto b = bernoulli_numbers(10);
  const auto ref = bernoulli_by_recurrence(20);
  CHECK(b[0] == 1);
  CHECK(b[2] == mpq_class(1, 6));
  CHECK(b[4] == mpq_class(-1, 30));
  CHECK(b[6] == mpq_class(1, 42));
  for (unsigned m = 0; m <= 20; m += 2) CHECK(b[m] == ref[m]);
  for (unsigned m = 1; m <= 20; m += 2) CHECK(b[m] == 0);
  CHECK(ref[1] == mpq_class(-1, 2));
}

TEST_CASE("Euler and Bernoulli identities as tau-expressions") {
  const Complex tau(2.0, 0.3);
  const auto g = grid(-3, 3, 13);
  const auto e = euler_by_recurrence(12);
  const auto lhs = hs_to_tau_expression(euler_series(), tau, g);
  const auto bern = bernoulli_by_recurrence(24);
  const auto lhs_b = hs_to_tau_expression(bernoulli_series(), tau, g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    Complex rhs = 0.0, rhs_b = 0.0;
    for (unsigned n = 0; n <= 12; ++n) {
      const double m = 2.0 * n;
      const Complex basis = std::exp(-m * m * tau / 4.0 + kI * m * g[j]);
      rhs += (mpq_class(e[2 * n] / factorial_q(2 * n))).get_d() * basis;
      rhs_b += (mpq_class(bern[2 * n] / factorial_q(2 * n))).get_d() * basis;
    }
    CHECK(std::abs(lhs[j] - rhs) < 1e-10);
    CHECK(std::abs(lhs_b[j] - rhs_b) < 1e-10);
  }
}

TEST_CASE("replacement principle: the (iw)_*^k basis gives the same coefficients") {
  for (QComplex tau : {QComplex(1L), QComplex(mpq_class(1, 2), mpq_class(1))}) {
    const FormalBasis basis{tau, 12};
    const auto euler_formal = euler_series_formal(basis);
    const auto bern_formal = bernoulli_series_formal(basis);
    const HalfSeries euler = euler_series(12);
    const HalfSeries bern = bernoulli_series(12);
    for (unsigned k = 0; k <= 12; ++k) {
      CHECK(euler_formal[k] == euler.at_degree(static_cast<int>(k)));
      CHECK(bern_formal[k] == bern.at_degree(static_cast<int>(k)));
    }
  }
  // The basis change is exact and triangular.
  const FormalBasis basis{QComplex(mpq_class(1, 3)), 6};
  std::vector<QComplex> c{QComplex(1L), QComplex(2L), QComplex(0L), QComplex(mpq_class(-1, 5))};
  c.resize(7, QComplex(0L));
  CHECK(basis.decompose(basis.realise(c)) == c);
}

TEST_CASE("tau-expressions of half-series") {
  const auto g = grid(-2, 2, 9);
  for (Complex v : hs_to_tau_expression(HalfSeries::one(), 1.0, g)) CHECK(std::abs(v - 1.0) < 1e-15);
  std::vector<QComplex> geo(25, QComplex(0L));
  for (unsigned n = 0; n <= 24; n += 2) geo[n] = QComplex(1L);
  const Complex tau(0.8, 0.2);
  const auto vals = hs_to_tau_expression(HalfSeries(geo), tau, g);
  const ExpSeries ref = geometric_inverse_plus(12);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(vals[j] - ref(g[j], tau)) < 1e-14);
  CHECK_THROWS_AS(hs_to_tau_expression(HalfSeries::one(), -1.0, g), DomainError);
}

TEST_CASE("the tau-expression determines the coefficients") {
  std::mt19937 rng(99);
  const HalfSeries f = random_series(rng, 10, 1);
  const auto rec = injectivity_probe(f, 0.05);
  for (unsigned n = 0; n <= 10; ++n) CHECK(std::abs(rec[n] - f.coeff(n).to_complex()) < 1e-9);
  for (Complex c : injectivity_probe(HalfSeries(10), 0.05)) CHECK(std::abs(c) < 1e-15);
}
