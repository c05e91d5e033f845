#include "stardeform/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "stardeform/quadrature.hpp"

namespace sd {

namespace {

void require_half_plane(Complex tau) {
  if (!(tau.real() > 0)) throw DomainError("star-delta calculus needs Re tau > 0");
}

Complex ipow(Complex z, unsigned n) {
  Complex r = 1.0;
  for (unsigned k = 0; k < n; ++k) r *= z;
  return r;
}

double factorial(unsigned n) { return std::tgamma(n + 1.0); }

// Cutoff T beyond which |t^p e^{-t^2 Re tau/4 + |t| y}| < e^{-42}.
double gaussian_t_cutoff(double re_tau, double y, unsigned p) {
  double t = 1.0;
  for (int it = 0; it < 6; ++it) {
    const double c = 42.0 + p * std::log(std::max(t, 1.0));
    t = (y + std::sqrt(y * y + re_tau * c)) / (0.5 * re_tau);
  }
  return t;
}

// int over [-T, 0] (negative) or [0, T] of t^p e^{-t^2 tau/4 + i t z} dt.
Complex half_line(Complex z, Complex tau, unsigned p, bool negative) {
  const double t_max = gaussian_t_cutoff(tau.real(), std::abs(z.imag()), p);
  // Highest local frequency of the phase, for the panel count.
  const double omega = std::abs(z.real()) + 0.5 * t_max * std::abs(tau.imag()) + 1.0;
  const int panels = 6 + static_cast<int>(std::ceil(t_max * omega / (8.0 * kPi)));
  auto f = [&](double t) { return ipow(Complex(t), p) * std::exp(-t * t * tau / 4.0 + kI * t * z); };
  return negative ? quad::gl_composite(f, -t_max, 0.0, panels) : quad::gl_composite(f, 0.0, t_max, panels);
}

}  // namespace

GaussPoly delta_tau(Complex a, Complex tau) {
  require_half_plane(tau);
  GaussPoly g;
  g.alpha = -1.0 / tau;
  g.beta = -2.0 * a / tau;
  g.amp = std::exp(-a * a / tau) / std::sqrt(kPi * tau);
  return g;
}

Complex sided_power(unsigned m, Complex a, Side side, Complex tau, Complex w, unsigned derivative) {
  require_half_plane(tau);
  if (m == 0) throw DomainError("sided powers need m >= 1");
  const Complex sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m-1}
  Complex coef = sign * ipow(kI, m) / factorial(m - 1) * ipow(kI, derivative);
  if (side == Side::Minus) coef = -coef;
  return coef * half_line(a + w, tau, m - 1 + derivative, side == Side::Plus);
}

std::vector<Complex> sided_inverse(Complex a, Side side, Complex tau, const std::vector<Complex>& grid) {
  std::vector<Complex> out;
  out.reserve(grid.size());
  for (const auto& w : grid) out.push_back(sided_power(1, a, side, tau, w));
  return out;
}

double sided_inverse_defect(Complex a, Side side, Complex tau, const std::vector<Complex>& grid) {
  double worst = 0.0;
  for (const auto& w : grid) {
    const Complex f = sided_power(1, a, side, tau, w);
    const Complex df = sided_power(1, a, side, tau, w, 1);
    worst = std::max(worst, std::abs((a + w) * f + 0.5 * tau * df - 1.0));
  }
  return worst;
}

std::vector<Complex> tempered_transform(const RealFn& fhat, Complex tau, const std::vector<Complex>& grid,
                                        double t_max) {
  require_half_plane(tau);
  std::vector<Complex> out;
  out.reserve(grid.size());
  for (const auto& w : grid) {
    const double t_end = t_max > 0 ? t_max : gaussian_t_cutoff(tau.real(), std::abs(w.imag()), 0);
    const double omega = std::abs(w.real()) + 0.5 * t_end * std::abs(tau.imag()) + 1.0;
    const int panels = 6 + static_cast<int>(std::ceil(t_end * omega / (8.0 * kPi)));
    auto f = [&](double t) { return fhat(t) * std::exp(-t * t * tau / 4.0 - kI * t * w); };
    Complex v = quad::gl_composite(f, -t_end, 0.0, panels) + quad::gl_composite(f, 0.0, t_end, panels);
    out.push_back(v / std::sqrt(2.0 * kPi));
  }
  return out;
}

Complex x_transform(const RealFn& f, Complex tau, Complex w, const std::vector<double>& breakpoints) {
  require_half_plane(tau);
  const double decay = (1.0 / tau).real();
  const double half = std::sqrt(45.0 / decay) + 2.0 * std::abs(w.imag());
  const double lo = w.real() - half, hi = w.real() + half;
  std::vector<double> cuts{lo};
  for (double b : breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  const Complex norm = 1.0 / std::sqrt(kPi * tau);
  auto g = [&](double x) {
    const Complex d = x - w;
    return f(x) * norm * std::exp(-d * d / tau);
  };
  Complex sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += quad::gl_adaptive(g, cuts[i], cuts[i + 1], 1e-15);
  return sum;
}

HeavisideSgn heaviside_sgn(Complex tau, const std::vector<Complex>& grid) {
  HeavisideSgn out;
  auto y = [](double x) { return Complex(x > 0 ? 1.0 : (x == 0 ? 0.5 : 0.0)); };
  for (const auto& w : grid) {
    const Complex yp = x_transform(y, tau, w, {0.0});
    const Complex ym = x_transform(y, tau, -w, {0.0});
    out.y.push_back(yp);
    out.y_minus.push_back(ym);
    out.sgn.push_back(yp - ym);
  }
  return out;
}

HeavisideReport heaviside_identities(Complex tau, const std::vector<Complex>& grid) {
  HeavisideReport rep;
  HeavisideSgn ys = heaviside_sgn(tau, grid);
  auto y = [](double x) { return x > 0 ? 1.0 : (x == 0 ? 0.5 : 0.0); };
  auto sgn = [](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex w = grid[i];
    rep.sum = std::max(rep.sum, std::abs(ys.y[i] + ys.y_minus[i] - 1.0));
    // Products multiply the underlying distributions, then transform back.
    const Complex yy = x_transform([&](double x) { return Complex(y(x) * y(x)); }, tau, w, {0.0});
    rep.yy = std::max(rep.yy, std::abs(yy - ys.y[i]));
    const Complex y_ym = x_transform([&](double x) { return Complex(x == 0 ? 0.0 : y(x) * y(-x)); }, tau, w, {0.0});
    rep.y_ym = std::max(rep.y_ym, std::abs(y_ym));
    const Complex ss = x_transform([&](double x) { return Complex(x == 0 ? 1.0 : sgn(x) * sgn(x)); }, tau, w, {0.0});
    rep.sgn_sgn = std::max(rep.sgn_sgn, std::abs(ss - 1.0));
  }
  return rep;
}

double eval_pairing(const RealFn& f, double a, Complex tau, const std::vector<Complex>& grid) {
  require_half_plane(tau);
  constexpr int kLevels = 6;
  constexpr double kEps0 = 0.004;
  const Complex norm = 1.0 / std::sqrt(kPi * tau);
  double worst = 0.0;
  for (const auto& w : grid) {
    auto at_eps = [&](double eps) {
      const double half = 9.0 * std::sqrt(eps);
      auto g = [&](double x) {
        const double d = x - a;
        const Complex k = x - w;
        return f(x) * std::exp(-d * d / eps) / std::sqrt(kPi * eps) * norm * std::exp(-k * k / tau);
      };
      return quad::gl_composite(g, a - half, a + half, 8);
    };
    // Expansion in powers of eps: Richardson table with ratio 2.
    std::vector<Complex> row(kLevels);
    for (int j = 0; j < kLevels; ++j) row[j] = at_eps(kEps0 / std::pow(2.0, j));
    for (int k = 1; k < kLevels; ++k) {
      const double fac = std::pow(2.0, k);
      for (int j = kLevels - 1; j >= k; --j) row[j] = (fac * row[j] - row[j - 1]) / (fac - 1.0);
    }
    const Complex d = a - w;
    const Complex rhs = f(a) * norm * std::exp(-d * d / tau);
    worst = std::max(worst, std::abs(row[kLevels - 1] - rhs));
  }
  return worst;
}

std::vector<Complex> principal_value_inverse(unsigned m, Complex tau, const std::vector<Complex>& grid) {
  require_half_plane(tau);
  if (m == 0) throw DomainError("principal value needs m >= 1");
  const Complex coef = 0.5 * kI * ipow(kI, m - 1) / factorial(m - 1);
  std::vector<Complex> out;
  out.reserve(grid.size());
  for (const auto& w : grid) {
    out.push_back(coef * (half_line(-w, tau, m - 1, false) - half_line(-w, tau, m - 1, true)));
  }
  return out;
}

double periodic_comb_residual(Complex a, Complex tau, int n_terms, const std::vector<Complex>& grid) {
  require_half_plane(tau);
  double worst = 0.0;
  for (const auto& w : grid) {
    Complex lhs = 0.0, rhs = 0.0;
    for (int n = -n_terms; n <= n_terms; ++n) {
      lhs += delta_tau(a + 2.0 * kPi * double(n), tau)(w);
      rhs += std::exp(-double(n * n) * tau / 4.0 + kI * double(n) * (a + w));
    }
    worst = std::max(worst, std::abs(lhs - rhs / (2.0 * kPi)));
  }
  return worst;
}

double fourier_transport_residual(Complex tau, int n_terms, const std::vector<Complex>& grid) {
  require_half_plane(tau);
  auto triangle = [](double x) {
    double r = std::fmod(x + kPi, 2.0 * kPi);
    if (r < 0) r += 2.0 * kPi;
    return Complex(std::abs(r - kPi));
  };
  double worst = 0.0;
  for (const auto& w : grid) {
    Complex series = kPi / 2.0;
    for (int n = 1; n <= n_terms; ++n) {
      const double an = ((n % 2 == 0 ? 1.0 : -1.0) - 1.0) / (kPi * n * n);
      series += an * std::exp(-double(n * n) * tau / 4.0) * 2.0 * std::cos(double(n) * w);
    }
    std::vector<double> kinks;
    for (int k = -40; k <= 40; ++k) kinks.push_back(k * kPi);
    worst = std::max(worst, std::abs(series - x_transform(triangle, tau, w, kinks)));
  }
  return worst;
}

Complex constant_variation_inverse(Complex a, Complex c, Complex tau, Complex w, bool derivative) {
  const Complex z = a + w;
  auto integrand = [&](double t) {
    const Complex zt = a + w * t;
    const Complex e = std::exp((zt * zt - z * z) / tau);
    if (!derivative) return e * w;
    return e * (1.0 + w * (2.0 * t * zt - 2.0 * z) / tau);
  };
  const Complex part = 2.0 / tau * quad::gl_composite(integrand, 0.0, 1.0, 4);
  const Complex hom = c * std::exp(-z * z / tau);
  return part + (derivative ? -2.0 * z / tau * hom : hom);
}

double constant_variation_defect(Complex a, Complex c, Complex tau, const std::vector<Complex>& grid) {
  double worst = 0.0;
  for (const auto& w : grid) {
    const Complex g = constant_variation_inverse(a, c, tau, w);
    const Complex dg = constant_variation_inverse(a, c, tau, w, true);
    worst = std::max(worst, std::abs((a + w) * g + 0.5 * tau * dg - 1.0));
  }
  return worst;
}

double product_of_inverses_defect(Complex a, Complex b, Side side, Complex tau,
                                  const std::vector<Complex>& grid) {
  if (a == b) throw DomainError("product of inverses needs distinct points");
  double worst = 0.0;
  for (const auto& w : grid) {
    Complex f[3];
    for (unsigned d = 0; d < 3; ++d) {
      f[d] = (sided_power(1, a, side, tau, w, d) - sided_power(1, b, side, tau, w, d)) / (b - a);
    }
    const Complex g = (b + w) * f[0] + 0.5 * tau * f[1];
    const Complex dg = f[0] + (b + w) * f[1] + 0.5 * tau * f[2];
    worst = std::max(worst, std::abs((a + w) * g + 0.5 * tau * dg - 1.0));
  }
  return worst;
}

double delta_product_magnitude(double a, double b, Complex tau, const std::vector<Complex>& grid, double eps) {
  const Complex scale = (2.0 * kPi * kI) * (2.0 * kPi * kI);
  auto nascent = [eps](double x) { return std::exp(-x * x / eps) / std::sqrt(kPi * eps); };
  double worst = 0.0;
  for (const auto& w : grid) {
    Complex v = x_transform([&](double x) { return Complex(nascent(x + a) * nascent(x + b)); }, tau, w,
                            {-a, -b});
    worst = std::max(worst, std::abs(scale * v));
  }
  return worst;
}

// ---------------------------------------------------------------- ExpSeries

ExpSeries ExpSeries::term(int k, Complex c) {
  ExpSeries s;
  s.c_[k] = c;
  return s;
}

Complex ExpSeries::operator()(Complex w, Complex tau) const {
  Complex sum = 0.0;
  for (const auto& [k, c] : c_) sum += c * std::exp(-double(k) * k * tau / 4.0 + kI * double(k) * w);
  return sum;
}

ExpSeries& ExpSeries::operator+=(const ExpSeries& o) {
  for (const auto& [k, c] : o.c_) c_[k] += c;
  return *this;
}

ExpSeries operator-(ExpSeries a, const ExpSeries& b) {
  for (const auto& [k, c] : b.c_) a.c_[k] -= c;
  return a;
}

ExpSeries operator*(Complex s, ExpSeries a) {
  for (auto& kv : a.c_) kv.second *= s;
  return a;
}

ExpSeries star(const ExpSeries& a, const ExpSeries& b) {
  ExpSeries out;
  for (const auto& [j, cj] : a.c_)
    for (const auto& [k, ck] : b.c_) out.c_[j + k] += cj * ck;
  return out;
}

ExpSeries ExpSeries::pruned(Complex tau, double tol) const {
  ExpSeries out;
  for (const auto& [k, c] : c_) {
    if (std::abs(c) * std::exp(-double(k) * k * tau.real() / 4.0) >= tol) out.c_[k] = c;
  }
  return out;
}

ExpSeries geometric_inverse_plus(int n_terms) {
  ExpSeries s;
  for (int n = 0; n <= n_terms; ++n) s += ExpSeries::term(2 * n);
  return s;
}

ExpSeries geometric_inverse_minus(int n_terms) {
  ExpSeries s;
  for (int n = 1; n <= n_terms; ++n) s += ExpSeries::term(-2 * n, -1.0);
  return s;
}

ExpSeries cos_inverse(Side side, int n_terms) {
  const int dir = side == Side::Plus ? 1 : -1;
  ExpSeries s;
  for (int n = 0; n <= n_terms; ++n) s += ExpSeries::term(dir * (2 * n + 1), n % 2 == 0 ? 2.0 : -2.0);
  return s;
}

AssociativityGap associativity_gap(Complex tau, int n_terms, const std::vector<Complex>& grid) {
  require_half_plane(tau);
  constexpr double kTol = 1e-15;
  const ExpSeries a = geometric_inverse_plus(n_terms);
  const ExpSeries b = ExpSeries::term(0) - ExpSeries::term(2);
  const ExpSeries c = geometric_inverse_minus(n_terms);
  const ExpSeries left = star(star(a, b).pruned(tau, kTol), c);
  const ExpSeries right = star(a, star(b, c).pruned(tau, kTol));
  AssociativityGap out{0.0, 0.0};
  for (const auto& w : grid) {
    const Complex gap = right(w, tau) - left(w, tau);
    out.gap = std::max(out.gap, std::abs(gap));
    Complex theta = 0.0;
    for (int n = -n_terms; n <= n_terms; ++n) theta += std::exp(-double(n * n) * tau + 2.0 * kI * double(n) * w);
    out.theta_mismatch = std::max(out.theta_mismatch, std::abs(gap - theta));
  }
  return out;
}

}  // namespace sd
