#include "stardeform/special.hpp"

#include <cmath>

#include "stardeform/quadrature.hpp"

namespace sd {

// ---------------------------------------------------------------- Hermite

Poly HermiteFamily::numeric(unsigned n) const {
  return to_numeric(reduced.at(n)) * Complex(std::pow(std::sqrt(2.0), n));
}

std::string HermiteFamily::render(unsigned n) const {
  const RationalPoly& r = reduced.at(n);
  // (sqrt 2)^n = 2^{n/2} for even n, sqrt(2) 2^{(n-1)/2} for odd n.
  RationalPoly scaled = r * QComplex(mpq_class(mpz_class(1) << (n / 2)));
  std::string body = to_string(scaled);
  if (n % 2 == 0) return body;
  bool single_term = body.find(' ') == std::string::npos;
  return single_term ? "sqrt(2)*" + body : "sqrt(2)*(" + body + ")";
}

HermiteFamily hermite_table(unsigned n_max, const QComplex& tau) {
  HermiteFamily fam{tau, {}};
  fam.reduced.reserve(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) {
    RationalPoly r;
    for (unsigned p = 0; 2 * p <= n; ++p) {
      mpq_class c = factorial_q(n) / (factorial_q(p) * factorial_q(n - 2 * p) *
                                      mpq_class(mpz_class(1) << (2 * p)));
      r += RationalPoly::monomial(pow(tau, p) * QComplex(c), n - 2 * p);
    }
    fam.reduced.push_back(std::move(r));
  }
  return fam;
}

HermiteReport hermite_checks(const HermiteFamily& fam) {
  HermiteReport rep;
  const auto& r = fam.reduced;
  const QComplex& tau = fam.tau;
  const QComplex half_tau = tau / QComplex(2);
  const unsigned n_max = r.empty() ? 0 : static_cast<unsigned>(r.size() - 1);
  // Each identity divided through by the common power of sqrt 2.
  for (unsigned n = 0; n <= n_max; ++n) {
    if (n < n_max && RationalPoly::w() * r[n] + r[n].derivative() * half_tau != r[n + 1]) {
      rep.recurrence = false;
    }
    RationalPoly ode = r[n].derivative(2) * tau + RationalPoly::w() * r[n].derivative() * QComplex(2) -
                       r[n] * QComplex(2L * n);
    if (!ode.is_zero()) rep.ode = false;
    if (n > 0 && r[n].derivative() != r[n - 1] * QComplex(static_cast<long>(n))) rep.ladder = false;
    if (r[n].derivative(n) != RationalPoly::constant(QComplex(factorial_q(n)))) {
      rep.top_derivative = false;
    }
    for (unsigned k = 0; k <= n; ++k) {
      if (star_product(r[k], r[n - k], tau) != r[n]) rep.product_law = false;
    }
    RationalPoly conv;
    for (unsigned k = 0; k <= n; ++k) {
      conv += star_product(r[k], r[n - k], tau) * QComplex(binomial_q(n, k));
    }
    if (conv != r[n]) rep.convolution_unscaled = false;
    if (conv != r[n] * QComplex(mpq_class(mpz_class(1) << n))) rep.convolution_scaled = false;
  }
  return rep;
}

namespace {

// Half-width L with |e^{L^2 Re(1/tau)}| L^{k} below 1e-17.
double gaussian_cutoff(double decay, unsigned poly_degree) {
  double l = 4.0;
  for (int it = 0; it < 200; ++it) {
    double log_tail = -decay * l * l + poly_degree * std::log(l);
    if (log_tail < -40.0) return l;
    l *= 1.1;
  }
  throw QuadratureFailure("Gaussian tail bound not reached");
}

}  // namespace

Complex hermite_orthogonality(unsigned n, unsigned m, Complex tau) {
  if (tau.real() >= 0) throw DomainError("Hermite orthogonality needs Re tau < 0");
  const double decay = -(1.0 / tau).real();
  const double l = gaussian_cutoff(decay, n + m + 2);
  HermiteFamily fam = hermite_table(std::max(n, m), QComplex::from_complex(tau));
  Poly hn = fam.numeric(n), hm = fam.numeric(m);
  auto f = [&](double w) { return std::exp(w * w / tau) * hn.eval(Complex(w)) * hm.eval(Complex(w)); };
  const int panels = 16 + static_cast<int>(2.0 * l * std::sqrt(decay) + (n + m));
  return quad::gl_composite(f, -l, l, panels);
}

Complex hermite_norm(unsigned n, Complex tau) {
  return std::tgamma(n + 1.0) * std::pow(-tau, static_cast<double>(n)) * std::sqrt(-tau) *
         std::sqrt(kPi);
}

// ----------------------------------------------------------------- Bessel

namespace {

Complex bessel_series(int n, Complex z, bool modified) {
  const Complex half = z / 2.0;
  Complex term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / double(k);
  Complex sum = term;
  const Complex q = half * half * (modified ? 1.0 : -1.0);
  for (int m = 1; m < 500; ++m) {
    term *= q / (double(m) * double(m + n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's backward recurrence normalized by J_0 + 2 sum J_{2k} = 1.
Complex bessel_miller(int n, Complex z) {
  const int start = 2 * ((std::max(n, static_cast<int>(std::abs(z))) + 40) / 2);
  Complex next = 0.0, cur = 1e-30, result = 0.0, norm = 0.0;
  for (int k = start; k > 0; --k) {
    Complex prev = 2.0 * double(k) / z * cur - next;
    next = cur;
    cur = prev;
    if (k - 1 == n) result = cur;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0 ? 1.0 : 2.0) * cur;
    if (std::abs(cur) > 1e250) {  // rescale to stay finite
      next *= 1e-250;
      cur *= 1e-250;
      result *= 1e-250;
      norm *= 1e-250;
    }
  }
  return result / norm;
}

}  // namespace

Complex bessel_j(int n, Complex z) {
  if (n < 0) return (n % 2 == 0 ? 1.0 : -1.0) * bessel_j(-n, z);
  if (z == Complex(0.0)) return n == 0 ? 1.0 : 0.0;
  // Cancellation in the alternating series costs about |z|/ln 10 digits.
  if (std::abs(z) <= 8.0 || std::abs(z.imag()) > 0.5 * std::abs(z)) return bessel_series(n, z, false);
  return bessel_miller(n, z);
}

Complex bessel_i(int n, Complex z) { return bessel_series(std::abs(n), z, true); }

BesselTable bessel_table(Complex a, Complex tau, int n_max, const std::vector<double>& grid,
                         double tol) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  BesselTable t{a, tau, n_max, grid, {}};
  const Complex z = a * a * tau / 8.0;
  // Correction coefficients e^{-z} I_k(z), truncated once negligible.
  std::vector<Complex> corr;
  for (int k = 0; k < 200; ++k) {
    Complex c = std::exp(-z) * bessel_i(k, z);
    corr.push_back(c);
    if (k > 2 && std::abs(c) < 1e-18) break;
  }
  if (std::abs(corr.back()) >= 1e-18) throw TruncationFailure("correction series did not converge");
  const int kmax = static_cast<int>(corr.size()) - 1;

  for (int n = -n_max; n <= n_max; ++n) t.values[n].resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex x = a * grid[i];
    const int reach = n_max + 2 * kmax + 2;
    std::vector<Complex> cj(2 * reach + 1);
    for (int m = -reach; m <= reach; ++m) cj[m + reach] = bessel_j(m, x);
    auto jn = [&](int n) {
      Complex s = corr[0] * cj[n + reach];
      for (int k = 1; k <= kmax; ++k) s += corr[k] * (cj[n - 2 * k + reach] + cj[n + 2 * k + reach]);
      return s;
    };
    for (int n = -n_max; n <= n_max; ++n) t.values[n][i] = jn(n);
    const double tail = std::abs(jn(n_max + 1)) + std::abs(jn(-n_max - 1));
    if (tail > tol) {
      throw TruncationFailure("Bessel table tail " + std::to_string(tail) + " exceeds tolerance at w=" +
                              std::to_string(grid[i]));
    }
  }
  return t;
}

Complex bessel_star_direct(int n, Complex a, Complex tau, Complex w, int nodes) {
  Complex sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double s = 2.0 * kPi * j / nodes;
    const Complex x = kI * a * std::sin(s);
    sum += std::exp(x * w + x * x * tau / 4.0 - kI * double(n) * s);
  }
  return sum / double(nodes);
}

Complex bessel_star_product(int m, int l, Complex a, Complex b, Complex tau, Complex w, int nodes) {
  Complex sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double s1 = 2.0 * kPi * j / nodes;
    const Complex x = kI * a * std::sin(s1);
    for (int k = 0; k < nodes; ++k) {
      const double s2 = 2.0 * kPi * k / nodes;
      const Complex y = kI * b * std::sin(s2);
      const Complex u = x + y;
      sum += std::exp(u * w + u * u * tau / 4.0 - kI * (double(m) * s1 + double(l) * s2));
    }
  }
  return sum / double(nodes * nodes);
}

double bessel_addition_residual(int n, Complex a, Complex b, Complex tau, int n_max,
                                const std::vector<double>& grid) {
  BesselTable lhs = bessel_table(a + b, tau, std::max(n_max, std::abs(n)), grid, 1e-10);
  constexpr int kNodes = 48;
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex w = grid[i];
    // One pass over the double grid, then every needed Fourier pair.
    std::vector<Complex> ex(kNodes), ey(kNodes);
    for (int j = 0; j < kNodes; ++j) {
      const double s = 2.0 * kPi * j / kNodes;
      ex[j] = kI * a * std::sin(s);
      ey[j] = kI * b * std::sin(s);
    }
    std::vector<Complex> f(kNodes * kNodes);
    for (int j = 0; j < kNodes; ++j)
      for (int k = 0; k < kNodes; ++k) {
        const Complex u = ex[j] + ey[k];
        f[j * kNodes + k] = std::exp(u * w + u * u * tau / 4.0);
      }
    Complex rhs = 0.0;
    for (int m = -n_max; m <= n_max; ++m) {
      const int l = n - m;
      Complex s = 0.0;
      for (int j = 0; j < kNodes; ++j) {
        const Complex pj = std::exp(-kI * (2.0 * kPi * m * j / kNodes));
        Complex inner = 0.0;
        for (int k = 0; k < kNodes; ++k) inner += f[j * kNodes + k] * std::exp(-kI * (2.0 * kPi * l * k / kNodes));
        s += pj * inner;
      }
      rhs += s / double(kNodes * kNodes);
    }
    worst = std::max(worst, std::abs(lhs.at(n)[i] - rhs));
  }
  return worst;
}

// --------------------------------------------------------------- Legendre

RationalPoly legendre_classical(unsigned n) {
  RationalPoly p0 = RationalPoly::constant(1);
  if (n == 0) return p0;
  RationalPoly p1 = RationalPoly::w();
  for (unsigned k = 1; k < n; ++k) {
    // (k+1) P_{k+1} = (2k+1) w P_k - k P_{k-1}
    RationalPoly next = (RationalPoly::w() * p1 * QComplex(2L * k + 1) - p0 * QComplex(long(k))) *
                        (QComplex(1) / QComplex(long(k) + 1));
    p0 = std::move(p1);
    p1 = std::move(next);
  }
  return p1;
}

std::vector<std::vector<Complex>> legendre_star(unsigned n_max, Complex a, Complex tau,
                                                const std::vector<double>& grid) {
  if (tau.real() >= 0) throw DomainError("star Legendre integral needs Re tau < 0");
  // s = u^2 turns s^{-1/2} e^{-s} ds into 2 e^{-u^2} du.
  const double u_max = gaussian_cutoff(1.0, 2 * n_max + 2);
  std::vector<double> inv_fact(n_max + 1, 1.0);
  for (unsigned k = 1; k <= n_max; ++k) inv_fact[k] = inv_fact[k - 1] / k;

  std::vector<std::vector<Complex>> out(n_max + 1, std::vector<Complex>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex x = grid[i] + a;
    for (unsigned n = 0; n <= n_max; ++n) {
      // [t^n] e^{2 s x t + (tau s^2 - s) t^2}
      auto coeff = [&](double u) {
        const double s = u * u;
        const Complex lin = 2.0 * s * x;
        const Complex quad = tau * s * s - s;
        Complex acc = 0.0;
        Complex qj = 1.0;
        for (unsigned j = 0; 2 * j <= n; ++j) {
          Complex lj = 1.0;
          for (unsigned k = 0; k < n - 2 * j; ++k) lj *= lin;
          acc += lj * inv_fact[n - 2 * j] * qj * inv_fact[j];
          qj *= quad;
        }
        return 2.0 * std::exp(-s) * acc;
      };
      out[n][i] = quad::gl_composite(coeff, 0.0, u_max, 24) / std::sqrt(kPi);
    }
  }
  return out;
}

// ---------------------------------------------------------------- Laguerre

template <class T>
std::vector<BasicPoly<T>> laguerre_star(unsigned n_max, const T& tau) {
  using P = BasicPoly<T>;
  // (1 - t tau)^{-1/2} = sum_k C(2k,k) (tau/4)^k t^k
  std::vector<T> amp(n_max + 1);
  amp[0] = T(1L);
  for (unsigned k = 1; k <= n_max; ++k) {
    amp[k] = amp[k - 1] * tau * T(long(2 * k - 1)) / T(long(2 * k));
  }
  // t x / (1 - t tau) = sum_{j>=1} x tau^{j-1} t^j; exponentiate with
  // e_n = (1/n) sum_k k b_k e_{n-k}.
  std::vector<P> b(n_max + 1), e(n_max + 1);
  for (unsigned j = 1; j <= n_max; ++j) b[j] = P::monomial(j == 1 ? T(1L) : b[j - 1].coeff(1) * tau, 1);
  e[0] = P::constant(T(1L));
  for (unsigned n = 1; n <= n_max; ++n) {
    P acc;
    for (unsigned k = 1; k <= n; ++k) acc += b[k] * e[n - k] * T(long(k));
    e[n] = acc * (T(1L) / T(long(n)));
  }
  std::vector<P> out(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n)
    for (unsigned k = 0; k <= n; ++k) out[n] += e[n - k] * amp[k];
  return out;
}

template std::vector<Poly> laguerre_star<Complex>(unsigned, const Complex&);
template std::vector<RationalPoly> laguerre_star<QComplex>(unsigned, const QComplex&);

RationalPoly laguerre_classical(unsigned n, const mpq_class& alpha) {
  // L_n^{(alpha)}(x) = sum_k (-1)^k C(n+alpha, n-k) x^k / k!
  RationalPoly out;
  for (unsigned k = 0; k <= n; ++k) {
    mpq_class binom(1);
    for (unsigned j = 0; j < n - k; ++j) binom *= (alpha + k + 1 + j) / mpq_class(j + 1);
    mpq_class c = binom / factorial_q(k);
    if (k % 2 == 1) c = -c;
    out += RationalPoly::monomial(QComplex(c), k);
  }
  return out;
}

Complex laguerre_gram(unsigned n, unsigned m, Complex tau, int alpha_twice) {
  if (tau.real() >= 0) throw DomainError("Laguerre weight needs Re tau < 0");
  if (alpha_twice != -1 && alpha_twice != 1) throw DomainError("weight exponent must be -1/2 or 1/2");
  auto table = laguerre_star(std::max(n, m), tau);
  const double decay = -(1.0 / tau).real();
  const double u_max = gaussian_cutoff(decay, 2 * (n + m) + 4);
  auto f = [&](double u) {
    const Complex x = u * u;
    const Complex jac = alpha_twice < 0 ? Complex(2.0) : Complex(2.0 * u * u);
    return jac * std::exp(x / tau) * table[n].eval(x) * table[m].eval(x);
  };
  const int panels = 24 + static_cast<int>(2.0 * u_max * std::sqrt(decay) + n + m);
  return quad::gl_composite(f, 0.0, u_max, panels);
}

Complex laguerre_norm(unsigned n, Complex tau) {
  return std::sqrt(-tau) * std::pow(tau, 2.0 * n) * std::tgamma(n + 0.5) / std::tgamma(n + 1.0);
}

}  // namespace sd
