#include "stardeform/gauss.hpp"

#include <algorithm>
#include <cmath>

namespace sd {

Complex GaussPoly::operator()(Complex w) const {
  return signed_amp() * poly.eval(w) * std::exp(alpha * w * w + beta * w);
}

GaussPoly derivative(const GaussPoly& g) {
  GaussPoly d = g;
  d.poly = g.poly.derivative() + Poly{g.beta, 2.0 * g.alpha} * g.poly;
  return d;
}

GaussPoly multiply(const GaussPoly& f, const GaussPoly& g) {
  return {f.poly * g.poly, f.alpha + g.alpha, f.beta + g.beta, f.amp * g.amp, f.sheet * g.sheet};
}

GaussPoly multiply(const Poly& p, const GaussPoly& g) {
  GaussPoly out = g;
  out.poly = p * g.poly;
  return out;
}

Complex eval(const GaussSum& s, Complex w) {
  Complex acc = 0.0;
  for (const auto& g : s) acc += g(w);
  return acc;
}

SheetTrace continue_sqrt(const std::vector<Complex>& points,
                         const std::function<Complex(Complex)>& radicand, int start_sheet) {
  if (points.empty()) throw DomainError("continuation path is empty");
  Complex r0 = radicand(points.front());
  const double scale = std::max(1.0, std::abs(r0));
  const double singular = 1e-12 * scale;
  if (std::abs(r0) < singular) throw SingularPoint("square root starts at a branch point");

  Complex v = static_cast<double>(start_sheet) * std::sqrt(r0);
  int crossings = 0;
  constexpr double kMaxStep = 1.0 / 32.0;
  for (std::size_t seg = 0; seg + 1 < points.size(); ++seg) {
    const Complex a = points[seg];
    const Complex b = points[seg + 1];
    double s = 0.0;
    double h = kMaxStep;
    while (s < 1.0) {
      const double s1 = std::min(1.0, s + h);
      const Complex r1 = radicand(a + s1 * (b - a));
      if (std::abs(r1) < singular) throw SingularPoint("continuation path meets a branch point");
      // Small relative steps keep the nearest-root choice unambiguous.
      if (std::abs(r1 - r0) > 0.2 * std::min(std::abs(r0), std::abs(r1))) {
        h *= 0.5;
        if (h < 1e-14) throw SingularPoint("continuation path passes too close to a branch point");
        continue;
      }
      const Complex p = std::sqrt(r1);
      v = std::abs(p - v) <= std::abs(p + v) ? p : -p;
      if (r0.real() < 0 && r1.real() < 0 && std::signbit(r0.imag()) != std::signbit(r1.imag())) {
        ++crossings;
      }
      r0 = r1;
      s = s1;
      h = std::min(2.0 * h, kMaxStep);
    }
  }
  const Complex principal = std::sqrt(r0);
  const int sheet = std::abs(v - principal) <= std::abs(v + principal) ? 1 : -1;
  return {v, sheet, crossings};
}

GaussPoly star_exp_linear(Complex s, Complex tau) {
  GaussPoly g;
  g.beta = s;
  g.amp = std::exp(s * s * tau / 4.0);
  return g;
}

namespace {

std::vector<Complex> endpoint_path(Complex end, const std::vector<Complex>& waypoints) {
  std::vector<Complex> pts;
  pts.push_back(0.0);
  for (const auto& z : waypoints) {
    if (pts.back() != z) pts.push_back(z);
  }
  if (pts.back() != end) pts.push_back(end);
  if (pts.size() == 1) pts.push_back(end);
  return pts;
}

}  // namespace

SheetTrace star_exp_quadratic_sheet(Complex t, Complex tau, const std::vector<Complex>& path) {
  const Complex r = 1.0 - tau * t;
  if (std::abs(r) < 1e-12) throw SingularPoint("e_*^{t w^2} is singular at t = 1/tau");
  return continue_sqrt(endpoint_path(t, path), [tau](Complex z) { return 1.0 - tau * z; });
}

GaussPoly star_exp_quadratic(Complex t, Complex tau, const std::vector<Complex>& path) {
  SheetTrace trace = star_exp_quadratic_sheet(t, tau, path);
  const Complex r = 1.0 - tau * t;
  GaussPoly g;
  g.alpha = t / r;
  g.amp = 1.0 / std::sqrt(r);
  g.sheet = trace.sheet;
  return g;
}

GaussPoly heat(const GaussPoly& g, Complex theta) {
  const Complex d = 1.0 - 4.0 * g.alpha * theta;
  if (std::abs(d) < 1e-14) throw SingularProduct("heat kernel determinant vanishes");
  // p(d/dbeta) acting on the Gaussian kernel: d^k/dbeta^k e^E = Q_k(L) e^E with
  // L = dE/dbeta and c = d^2E/dbeta^2 constant.
  const Complex c = 2.0 * theta / d;
  Poly q = Poly::constant(1.0);
  Poly in_l = Poly::constant(g.poly.coeff(0));
  for (int k = 1; k <= g.poly.degree(); ++k) {
    q = Poly::w() * q + q.derivative() * c;
    in_l += q * g.poly.coeff(k);
  }
  GaussPoly out;
  out.poly = in_l.compose_linear(1.0 / d, 2.0 * theta * g.beta / d);
  out.alpha = g.alpha / d;
  out.beta = g.beta / d;
  out.amp = g.amp / std::sqrt(d) * std::exp(theta * g.beta * g.beta / d);
  out.sheet = g.sheet;
  return out;
}

GaussPoly intertwine(const GaussPoly& g, Complex tau_from, Complex tau_to) {
  return heat(g, (tau_to - tau_from) / 4.0);
}

SheetTrace intertwine_quadratic_sheet(Complex t, const std::vector<Complex>& tau_path,
                                      int start_sheet) {
  if (tau_path.size() < 2) throw DomainError("tau path needs at least two points");
  return continue_sqrt(tau_path, [t](Complex tau) { return 1.0 - tau * t; }, start_sheet);
}

namespace {

// Polynomial in two commuting variables, B[u][v] multiplies L1^u L2^v.
struct Bivariate {
  std::vector<std::vector<Complex>> c;

  explicit Bivariate(std::size_t n) : c(n, std::vector<Complex>(n, 0.0)) {}

  Bivariate times_l1() const {
    Bivariate o(c.size());
    for (std::size_t u = 0; u + 1 < c.size(); ++u)
      for (std::size_t v = 0; v < c.size(); ++v) o.c[u + 1][v] = c[u][v];
    return o;
  }
  Bivariate times_l2() const {
    Bivariate o(c.size());
    for (std::size_t u = 0; u < c.size(); ++u)
      for (std::size_t v = 0; v + 1 < c.size(); ++v) o.c[u][v + 1] = c[u][v];
    return o;
  }
  Bivariate d_l1() const {
    Bivariate o(c.size());
    for (std::size_t u = 1; u < c.size(); ++u)
      for (std::size_t v = 0; v < c.size(); ++v) o.c[u - 1][v] = static_cast<double>(u) * c[u][v];
    return o;
  }
  Bivariate d_l2() const {
    Bivariate o(c.size());
    for (std::size_t u = 0; u < c.size(); ++u)
      for (std::size_t v = 1; v < c.size(); ++v) o.c[u][v - 1] = static_cast<double>(v) * c[u][v];
    return o;
  }
  void axpy(Complex a, const Bivariate& x) {
    for (std::size_t u = 0; u < c.size(); ++u)
      for (std::size_t v = 0; v < c.size(); ++v) c[u][v] += a * x.c[u][v];
  }
};

}  // namespace

Complex gauss_star_det(const GaussPoly& f, const GaussPoly& g, Complex tau) {
  return 1.0 - tau * tau * f.alpha * g.alpha;
}

// exp((tau/2) d1 d2) applied to f(w1) g(w2), then w1 = w2 = w. The Gaussian
// kernel is done in closed form and the polynomial factors become
// derivatives in the linear coefficients b1, b2.
GaussPoly gauss_star(const GaussPoly& f, const GaussPoly& g, Complex tau) {
  const Complex th = tau / 2.0;
  const Complex a1 = f.alpha, a2 = g.alpha, b1 = f.beta, b2 = g.beta;
  const Complex det = gauss_star_det(f, g, tau);
  if (std::abs(det) < 1e-14) throw SingularProduct("Gaussian star product determinant vanishes");
  const Complex k = th / det;

  const Complex c11 = 2.0 * th * th * a2 / det;
  const Complex c12 = k;
  const Complex c22 = 2.0 * th * th * a1 / det;
  const Poly l1{k * (2.0 * th * a2 * b1 + b2), 1.0 + k * (4.0 * th * a1 * a2 + 2.0 * a2)};
  const Poly l2{k * (b1 + 2.0 * th * a1 * b2), 1.0 + k * (2.0 * a1 + 4.0 * th * a1 * a2)};

  const int dp = std::max(f.poly.degree(), 0);
  const int dr = std::max(g.poly.degree(), 0);
  const std::size_t n = static_cast<std::size_t>(dp + dr + 1);

  Bivariate total(n);
  Bivariate row(n);
  row.c[0][0] = 1.0;
  for (int i = 0; i <= dp; ++i) {
    if (i > 0) {
      Bivariate next = row.times_l1();
      next.axpy(c11, row.d_l1());
      next.axpy(c12, row.d_l2());
      row = next;
    }
    Bivariate q = row;
    for (int j = 0; j <= dr; ++j) {
      if (j > 0) {
        Bivariate next = q.times_l2();
        next.axpy(c12, q.d_l1());
        next.axpy(c22, q.d_l2());
        q = next;
      }
      total.axpy(f.poly.coeff(i) * g.poly.coeff(j), q);
    }
  }

  std::vector<Poly> p1(n, Poly::constant(1.0)), p2(n, Poly::constant(1.0));
  for (std::size_t u = 1; u < n; ++u) {
    p1[u] = p1[u - 1] * l1;
    p2[u] = p2[u - 1] * l2;
  }
  Poly poly;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; u + v < n; ++v)
      if (!is_zero(total.c[u][v])) poly += p1[u] * p2[v] * total.c[u][v];

  GaussPoly out;
  out.poly = poly;
  out.alpha = k * (4.0 * th * a2 * a1 * a1 + 4.0 * a1 * a2 + 4.0 * th * a1 * a2 * a2) + a1 + a2;
  out.beta = k * (4.0 * th * a2 * a1 * b1 + 2.0 * a1 * b2 + 2.0 * a2 * b1 + 4.0 * th * a1 * a2 * b2) +
             b1 + b2;
  const Complex konst = k * (th * a2 * b1 * b1 + b1 * b2 + th * a1 * b2 * b2);
  out.amp = f.amp * g.amp / std::sqrt(det) * std::exp(konst);
  out.sheet = f.sheet * g.sheet;
  return out;
}

GaussPoly star_product(const Poly& p, const GaussPoly& g, Complex tau) {
  GaussPoly out = g;
  Poly acc = p * g.poly;
  Poly dp = p;
  GaussPoly dg = g;
  Complex c = 1.0;
  for (int k = 1; k <= p.degree(); ++k) {
    dp = dp.derivative();
    dg = derivative(dg);
    c *= tau / (2.0 * k);
    acc += dp * dg.poly * c;
  }
  out.poly = acc;
  return out;
}

GaussPoly star_product(const GaussPoly& g, const Poly& p, Complex tau) {
  return star_product(p, g, tau);
}

GaussPoly translate_action(Complex s, const GaussPoly& g, Complex tau) {
  const Complex h = s * tau;
  GaussPoly out = g;
  out.poly = g.poly.shift(h);
  out.beta = g.beta + 2.0 * g.alpha * h + 2.0 * s;
  out.amp = g.amp * std::exp(g.alpha * h * h + g.beta * h + s * s * tau);
  return out;
}

Complex translate_action(Complex s, const std::function<Complex(Complex)>& f, Complex tau,
                         Complex w) {
  return std::exp(2.0 * s * w + s * s * tau) * f(w + s * tau);
}

GaussPoly quad_exp_star(Complex t, const GaussPoly& gaussian, Complex tau) {
  if (gaussian.poly.degree() != 0) {
    throw DomainError("quad_exp_star needs a Gaussian with constant polynomial part");
  }
  const Complex a = gaussian.alpha;
  const Complex b = gaussian.beta;
  const Complex kappa = tau * (1.0 + tau * a);
  const Complex delta = 1.0 - t * kappa;
  if (std::abs(delta) < 1e-14) throw SingularProduct("e_*^{t w^2} * G is singular here");
  SheetTrace trace = continue_sqrt({0.0, t}, [kappa](Complex z) { return 1.0 - z * kappa; });

  GaussPoly out;
  out.alpha = (t + a + tau * t * a) / delta;
  out.beta = b / delta;
  out.amp = gaussian.amp * gaussian.poly.coeff(0) / std::sqrt(delta) *
            std::exp(tau * tau * t * b * b / (4.0 * delta));
  out.sheet = gaussian.sheet * trace.sheet;
  return out;
}

double quad_exponential_law_residual(Complex s, Complex t, Complex tau,
                                     const std::vector<Complex>& grid) {
  GaussPoly es = star_exp_quadratic(s, tau);
  GaussPoly et = star_exp_quadratic(t, tau);
  GaussPoly lhs = gauss_star(es, et, tau);
  // gauss_star used the principal root of its determinant; continue it from
  // the origin of the (s, t) segment instead.
  auto det_along = [&](Complex lam) {
    const Complex a1 = lam * s / (1.0 - tau * lam * s);
    const Complex a2 = lam * t / (1.0 - tau * lam * t);
    return 1.0 - tau * tau * a1 * a2;
  };
  lhs.sheet *= continue_sqrt({0.0, 1.0}, det_along).sheet;
  GaussPoly rhs = star_exp_quadratic(s + t, tau);
  double worst = 0.0;
  for (const auto& w : grid) worst = std::max(worst, std::abs(lhs(w) - rhs(w)));
  return worst;
}

double linear_exponential_law_residual(Complex s, Complex t, Complex tau) {
  GaussPoly lhs = gauss_star(star_exp_linear(s, tau), star_exp_linear(t, tau), tau);
  GaussPoly rhs = star_exp_linear(s + t, tau);
  double r = std::abs(lhs.alpha - rhs.alpha);
  r = std::max(r, std::abs(lhs.beta - rhs.beta));
  r = std::max(r, std::abs(lhs.signed_amp() - rhs.signed_amp()) / std::abs(rhs.amp));
  r = std::max(r, max_coeff_diff(lhs.poly, rhs.poly));
  return r;
}

std::vector<double> series_radius_probe(unsigned ell, Complex tau, unsigned n_max) {
  if (ell == 0) throw DomainError("series probe needs ell >= 1");
  constexpr int kSamples = 720;
  std::vector<double> c;
  c.reserve(n_max);
  Poly p = Poly::constant(1.0);
  const Complex half_tau = tau / 2.0;
  unsigned degree = 0;
  double log_fact = 0.0;
  for (unsigned n = 1; n <= n_max; ++n) {
    for (; degree < n * ell; ++degree) p = Poly::w() * p + p.derivative() * half_tau;
    log_fact += std::log(static_cast<double>(n));
    double sup = 0.0;
    for (int k = 0; k < kSamples; ++k) {
      const double phi = 2.0 * kPi * k / kSamples;
      sup = std::max(sup, std::abs(p.eval(Complex(std::cos(phi), std::sin(phi)))));
    }
    c.push_back(std::exp(std::log(sup) - log_fact));
  }
  return c;
}

}  // namespace sd
