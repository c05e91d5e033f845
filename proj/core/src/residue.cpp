#include "stardeform/residue.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "stardeform/distributions.hpp"
#include "stardeform/quadrature.hpp"

namespace sd {

namespace {

void require_nonzero_tau(Complex tau) {
  if (tau == Complex(0.0)) throw DomainError("tau must be nonzero");
}

// Coefficients of w^{2l} in the even series sum nu^{l+k}/(l+k)! q^l/l!,
// q = -1/tau^2, starting at l = max(0, -k).
std::vector<Complex> laurent_series(int k, Complex nu, Complex tau, double w_max) {
  const Complex q = -1.0 / (tau * tau);
  const int l0 = std::max(0, -k);
  // First term computed directly; 0^0 = 1.
  Complex first = 1.0;
  for (int j = 1; j <= l0 + k; ++j) first *= nu / double(j);
  for (int j = 1; j <= l0; ++j) first *= q / double(j);

  std::vector<Complex> series(static_cast<std::size_t>(l0), 0.0);
  series.push_back(first);
  const double w2 = w_max * w_max;
  double peak = std::abs(first) * std::pow(w2, l0);
  Complex term = first;
  for (int l = l0; l < l0 + 4000; ++l) {
    term *= nu * q / (double(l + k + 1) * double(l + 1));
    const double size = std::abs(term) * std::pow(w2, l + 1);
    const double ratio = std::abs(nu * q) * w2 / (double(l + k + 1) * double(l + 1));
    if (term == Complex(0.0) || (ratio < 0.5 && size < 1e-20 * peak)) return series;
    peak = std::max(peak, size);
    series.push_back(term);
  }
  throw TruncationFailure("Laurent coefficient series did not settle");
}

Poly even_poly(const std::vector<Complex>& series) {
  std::vector<Complex> c(2 * series.size(), 0.0);
  for (std::size_t l = 0; l < series.size(); ++l) c[2 * l] = series[l];
  return Poly(std::move(c));
}

Complex laurent_amp(Complex nu, Complex tau) { return std::exp(nu / tau) / std::sqrt(-tau); }

// Trapezoid sum (1/n) sum_j f(s_j) s_j over |s| = r, i.e. (2 pi i)^{-1} times the contour integral.
// scale receives the largest |f(s) s| seen, which bounds the rounding error.
template <class F>
Complex circle_mean(F&& f, double r, int n, double& scale) {
  Complex sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex s = std::polar(r, 2.0 * kPi * j / n);
    const Complex v = f(s) * s;
    scale = std::max(scale, std::abs(v));
    sum += v;
  }
  return sum / double(n);
}

template <class F>
Complex converged_circle_mean(F&& f, double r, int n_nodes) {
  if (n_nodes < 8 || n_nodes % 2 != 0) throw DomainError("node count must be even and >= 8");
  double scale = 0.0;
  const Complex full = circle_mean(f, r, n_nodes, scale);
  const Complex half = circle_mean(f, r, n_nodes / 2, scale);
  const double tol = 1e-12 * std::max(1.0, std::abs(full)) + 64.0 * 2.2e-16 * scale;
  if (!std::isfinite(scale) || !(std::abs(full - half) <= tol)) {
    throw NodeCountError("contour quadrature not converged at " + std::to_string(n_nodes) + " nodes");
  }
  return full;
}

Complex nearest_root(Complex radicand, Complex previous) {
  const Complex r = std::sqrt(radicand);
  return std::abs(r - previous) <= std::abs(r + previous) ? r : -r;
}

}  // namespace

GaussPoly laurent_coeff(int k, Complex nu, Complex tau, double w_max) {
  require_nonzero_tau(tau);
  GaussPoly g;
  g.poly = even_poly(laurent_series(k, nu, tau, w_max));
  g.alpha = -1.0 / tau;
  g.amp = laurent_amp(nu, tau);
  return g;
}

GaussPoly laurent_coeff_dz(int k, Complex nu, Complex tau, double w_max) {
  require_nonzero_tau(tau);
  const auto series = laurent_series(k, nu, tau, w_max);
  const Poly p = even_poly(series);
  // Coefficients carry z^{2l} through q^l, z = 1/tau.
  std::vector<Complex> scaled(series.size());
  for (std::size_t l = 0; l < series.size(); ++l) scaled[l] = 2.0 * double(l) * tau * series[l];
  GaussPoly g;
  g.poly = (nu + 0.5 * tau) * p - Poly::monomial(1.0, 2) * p + even_poly(scaled);
  g.alpha = -1.0 / tau;
  g.amp = laurent_amp(nu, tau);
  return g;
}

Complex laurent_coeff_closed(int k, Complex nu, Complex tau, Complex w) {
  return laurent_coeff(k, nu, tau, std::max(1.0, std::abs(w)))(w);
}

Complex cover_exponential(Complex s, Complex nu, Complex tau, Complex w) {
  require_nonzero_tau(tau);
  if (s == Complex(0.0)) throw SingularPoint("s = 0 is the branch point");
  const Complex z = 1.0 / tau + s * s;
  // (1 - z tau)^{1/2} on the cover is sqrt(-tau) s.
  const Complex root = std::sqrt(-tau) * s;
  return std::exp(z * nu + z * w * w / (1.0 - z * tau)) / root;
}

Complex residue_contour(int k, Complex nu, Complex tau, Complex w, double radius, int n_nodes) {
  if (!(radius > 0)) throw DomainError("radius must be positive");
  auto f = [&](Complex s) { return std::pow(s, -2 * k) * cover_exponential(s, nu, tau, w); };
  return converged_circle_mean(f, radius, n_nodes);
}

double ladder_residual(int k, Complex nu, Complex tau, const std::vector<Complex>& grid) {
  double w_max = 1.0;
  for (const auto& w : grid) w_max = std::max(w_max, std::abs(w));
  const GaussPoly lhs = star_product(Poly{{nu + 0.5 * tau, 0.0, 1.0}}, laurent_coeff(k, nu, tau, w_max), tau);
  const GaussPoly next = laurent_coeff(k + 1, nu, tau, w_max);
  double worst = 0.0;
  for (const auto& w : grid) worst = std::max(worst, std::abs(lhs(w) - (k + 0.5) * next(w)));
  return worst;
}

double closed_contour_vanishing(Complex nu, Complex tau, Complex w, double radius, int n_nodes) {
  // dz = 2 s ds; s once around is z twice around 1/tau.
  auto f = [&](Complex s) { return 2.0 * s * cover_exponential(s, nu, tau, w); };
  return std::abs(2.0 * kPi * kI * converged_circle_mean(f, radius, n_nodes));
}

// ---------------------------------------------------------------- Phi / Psi

namespace {

GaussPoly scaled(GaussPoly g, Complex c) {
  g.amp *= c;
  return g;
}

}  // namespace

GaussSum phi_solution(Complex alpha, Complex tau) {
  const GaussPoly plus = delta_tau(alpha, tau);    // delta_*(w + alpha)
  const GaussPoly minus = delta_tau(-alpha, tau);  // delta_*(w - alpha)
  const Complex d0 = plus(0.0);
  return {scaled(plus, 0.5 / d0), scaled(minus, 0.5 / d0)};
}

PhiPsi phi_psi(Complex alpha, Complex tau) {
  const GaussPoly plus = delta_tau(alpha, tau);
  const GaussPoly minus = delta_tau(-alpha, tau);
  // Rows: value and derivative at w = 0 of (plus, minus).
  const Complex v = plus(0.0);
  const Complex dp = -2.0 * alpha / tau * v, dm = 2.0 * alpha / tau * v;
  const Complex det = v * dm - v * dp;
  if (std::abs(det) <= 1e-14 * std::abs(v * v / tau)) {
    throw DegenerateBoundary("boundary system for Phi, Psi is singular at alpha = 0");
  }
  // Cramer: Phi solves (1, 0), Psi solves (0, 1).
  const Complex phi_a = dm / det, phi_b = -dp / det;
  const Complex psi_a = -v / det, psi_b = v / det;
  PhiPsi out{alpha, tau, {scaled(plus, phi_a), scaled(minus, phi_b)}, {scaled(plus, psi_a), scaled(minus, psi_b)}};
  return out;
}

double annihilator_residual(const GaussSum& f, Complex alpha, Complex tau, const std::vector<Complex>& grid) {
  // w_*^2 has tau-expression w^2 + tau/2.
  const Poly op{{alpha * alpha - 0.5 * tau, 0.0, -1.0}};
  GaussSum images;
  for (const auto& g : f) images.push_back(star_product(op, g, tau));
  double worst = 0.0;
  for (const auto& w : grid) worst = std::max(worst, std::abs(eval(images, w)));
  return worst;
}

double semigroup_on_delta(Complex t, Complex alpha, Complex tau, const std::vector<Complex>& grid) {
  const GaussPoly d = delta_tau(alpha, tau);
  const GaussPoly moved = quad_exp_star(t, d, tau);
  const Complex factor = std::exp(t * alpha * alpha);
  double worst = 0.0;
  for (const auto& w : grid) worst = std::max(worst, std::abs(moved(w) - factor * d(w)));
  return worst;
}

double semigroup_on_phi_psi(Complex t, const PhiPsi& f, const std::vector<Complex>& grid) {
  const Complex factor = std::exp(t * f.alpha * f.alpha);
  double worst = 0.0;
  for (const GaussSum* part : {&f.phi, &f.psi}) {
    GaussSum moved;
    for (const auto& g : *part) moved.push_back(quad_exp_star(t, g, f.tau));
    for (const auto& w : grid) worst = std::max(worst, std::abs(eval(moved, w) - factor * eval(*part, w)));
  }
  return worst;
}

OrphanReport orphan_annihilation(Complex t, int k, Complex nu, Complex tau, Complex w, double radius,
                                 int n_nodes) {
  require_nonzero_tau(tau);
  const double at = std::abs(t);
  if (at == 0.0) throw DomainError("the orphan product needs t != 0");
  if (!(radius > 0) || radius >= at / 2 || radius * radius >= at / 4) {
    throw DomainError("radius must keep the shifted branch point s^2 = -t outside the contour");
  }
  const Complex root_tau = std::sqrt(-tau), root_t = std::sqrt(t);
  auto shifted = [&](Complex s) {
    const Complex z = 1.0 / tau + t + s * s;
    // (1 - z tau)^{1/2} = sqrt(-tau) sqrt(t) sqrt(1 + s^2/t), analytic on the disc.
    const Complex root = root_tau * root_t * std::sqrt(1.0 + s * s / t);
    return std::pow(s, -2 * k) * std::exp(z * nu - z * w * w / (tau * (t + s * s))) / root;
  };
  OrphanReport rep;
  rep.product = converged_circle_mean(shifted, radius, n_nodes);
  rep.product_half = converged_circle_mean(shifted, radius / 2, n_nodes);
  rep.ladder = (k + 0.5) * laurent_coeff_closed(k + 1, nu, tau, w);
  return rep;
}

// ---------------------------------------------------------------- covariant

Complex covariant_derivative(const CovariantFamily& f, Complex z0, Complex w) {
  if (z0 == Complex(0.0)) throw DomainError("z = 0 is off the surface");
  return f.partial_z(z0, 1.0 / z0, w);
}

CovariantFamily family_product(const CovariantFamily& f, const CovariantFamily& g) {
  CovariantFamily out;
  out.value = [f, g](Complex z, Complex tau, Complex w) { return f.value(z, tau, w) * g.value(z, tau, w); };
  out.partial_z = [f, g](Complex z, Complex tau, Complex w) {
    return f.partial_z(z, tau, w) * g.value(z, tau, w) + f.value(z, tau, w) * g.partial_z(z, tau, w);
  };
  return out;
}

CovariantFamily parallel_polynomial(int k, int m) {
  CovariantFamily out;
  out.value = [k, m](Complex z, Complex tau, Complex) {
    return double(m + k) * std::pow(z, m) - double(m) * std::pow(tau, k) * std::pow(z, m + k);
  };
  out.partial_z = [k, m](Complex z, Complex tau, Complex) {
    const double c = double(m) * double(m + k);
    return c * std::pow(z, m - 1) - c * std::pow(tau, k) * std::pow(z, m + k - 1);
  };
  return out;
}

CovariantFamily laurent_family(int k, Complex nu) {
  CovariantFamily out;
  out.value = [k, nu](Complex, Complex tau, Complex w) { return laurent_coeff_closed(k, nu, tau, w); };
  out.partial_z = [k, nu](Complex z, Complex tau, Complex w) {
    const double w_max = std::max(1.0, std::abs(w));
    const GaussPoly a = laurent_coeff(k, nu, tau, w_max);
    return laurent_coeff_dz(k, nu, tau, w_max)(w) + derivative(derivative(a))(w) / (4.0 * z * z);
  };
  return out;
}

GaussPoly relativity_solution(const Poly& h, Complex nu, Complex z, int sheet) {
  if (z == Complex(0.0)) throw SingularPoint("z = 0 is outside the evolution domain");
  GaussPoly g;
  g.poly = h.compose_linear(z, 0.0);
  g.alpha = -z;
  g.amp = std::sqrt(z) * std::exp(z * nu);
  g.sheet = sheet;
  return g;
}

GaussPoly relativity_dz(const Poly& h, Complex nu, Complex z, int sheet) {
  GaussPoly g = relativity_solution(h, nu, z, sheet);
  const Poly p = g.poly;
  g.poly = (0.5 / z + nu) * p - Poly::monomial(1.0, 2) * p + Poly::w() * h.derivative().compose_linear(z, 0.0);
  return g;
}

CovariantFamily relativity_family(const Poly& h, Complex nu) {
  CovariantFamily out;
  out.value = [h, nu](Complex z, Complex, Complex w) { return relativity_solution(h, nu, z)(w); };
  out.partial_z = [h, nu](Complex z, Complex, Complex w) {
    const GaussPoly f = relativity_solution(h, nu, z);
    return relativity_dz(h, nu, z)(w) + derivative(derivative(f))(w) / (4.0 * z * z);
  };
  return out;
}

double relativity_residual(const Poly& h, Complex nu, const std::vector<Complex>& z_path,
                           const std::vector<Complex>& grid) {
  if (z_path.empty()) return 0.0;
  double worst = 0.0;
  Complex root = std::sqrt(z_path.front());
  auto check = [&](Complex z) {
    if (std::abs(z) < 1e-12) throw SingularPoint("z path reaches 0");
    root = nearest_root(z, root);
    const int sheet = std::abs(root - std::sqrt(z)) < std::abs(root + std::sqrt(z)) ? 1 : -1;
    const GaussPoly f = relativity_solution(h, nu, z, sheet);
    const GaussPoly df = derivative(f);
    const GaussPoly dz = relativity_dz(h, nu, z, sheet);
    const Complex tau = 1.0 / z;
    for (const auto& w : grid) {
      const Complex rhs = tau * w * df(w) + (w * w + nu + 0.5 * tau) * f(w);
      worst = std::max(worst, std::abs(dz(w) - rhs) / std::max(1.0, std::abs(rhs)));
    }
  };
  check(z_path.front());
  for (std::size_t i = 0; i + 1 < z_path.size(); ++i) {
    const Complex a = z_path[i], b = z_path[i + 1];
    // Steps short relative to the distance from 0 keep the root continuation honest.
    double closest = std::min(std::abs(a), std::abs(b));
    const Complex d = b - a;
    if (std::abs(d) > 0) {
      const double u = std::clamp(-(std::conj(d) * a).real() / std::norm(d), 0.0, 1.0);
      closest = std::min(closest, std::abs(a + u * d));
    }
    if (closest < 1e-12) throw SingularPoint("z path reaches 0");
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(d) / (0.05 * closest))));
    for (int j = 1; j <= steps; ++j) check(a + d * (double(j) / steps));
  }
  return worst;
}

// ---------------------------------------------------------------- Gamma paths

namespace {

struct PathPiece {
  std::function<Complex(double)> z;   // u in [0, 1]
  std::function<Complex(double)> dz;  // dz/du
  int panels;
};

// Integrals of E, dE/dw, d^2E/dw^2 along the pieces (in order), with the
// root of 1 - z tau continued backwards from the principal value at the end.
std::array<Complex, 3> path_moments(const std::vector<PathPiece>& pieces, Complex nu, Complex tau, Complex w) {
  auto x = quad::gl_nodes();
  auto wt = quad::gl_weights();
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return x[i] > x[j]; });

  std::array<Complex, 3> acc{0.0, 0.0, 0.0};
  Complex root = std::sqrt(1.0 - pieces.back().z(1.0) * tau);
  for (auto piece = pieces.rbegin(); piece != pieces.rend(); ++piece) {
    const double h = 1.0 / piece->panels;
    for (int p = piece->panels - 1; p >= 0; --p) {
      const double mid = (p + 0.5) * h;
      for (std::size_t i : order) {
        const double u = mid + 0.5 * h * x[i];
        const Complex z = piece->z(u);
        const Complex den = 1.0 - z * tau;
        root = nearest_root(den, root);
        const Complex beta = z / den;
        const Complex e = std::exp(z * nu + beta * w * w) / root * piece->dz(u) * (0.5 * h * wt[i]);
        acc[0] += e;
        acc[1] += 2.0 * beta * w * e;
        acc[2] += (2.0 * beta + 4.0 * beta * beta * w * w) * e;
      }
      root = nearest_root(1.0 - piece->z(p * h) * tau, root);
    }
  }
  return acc;
}

Complex annihilate(const std::array<Complex, 3>& m, Complex nu, Complex tau, Complex w) {
  return (nu + w * w + 0.5 * tau) * m[0] + tau * w * m[1] + 0.25 * tau * tau * m[2];
}

}  // namespace

GammaReport gamma_integrals(Complex nu, Complex tau, Complex w) {
  if (!(nu.real() > 0)) throw DomainError("Gamma integrals need Re nu > 0");
  if (!(tau.real() > 0)) throw DomainError("Gamma integrals need Re tau > 0");
  const double length = 45.0 / nu.real() + 4.0 * std::abs(w) * std::abs(w);
  const int line_panels = 40 + static_cast<int>(length * (1.0 + std::abs(nu.imag())));
  PathPiece line{[length](double u) { return Complex(-length * (1.0 - u)); },
                 [length](double) { return Complex(length); }, line_panels};
  const Complex p = 1.0 / tau;
  PathPiece loop{[p](double u) { return p - p * std::exp(2.0 * kPi * kI * u); },
                 [p](double u) { return -p * 2.0 * kPi * kI * std::exp(2.0 * kPi * kI * u); }, 40};

  const auto m_minus = path_moments({line}, nu, tau, w);
  const auto m_plus = path_moments({line, loop}, nu, tau, w);
  GammaReport rep;
  rep.minus = m_minus[0];
  rep.plus = m_plus[0];
  rep.annihilated_minus = annihilate(m_minus, nu, tau, w);
  rep.annihilated_plus = annihilate(m_plus, nu, tau, w);
  const std::array<Complex, 3> diff{m_plus[0] - m_minus[0], m_plus[1] - m_minus[1], m_plus[2] - m_minus[2]};
  rep.difference = std::abs(annihilate(diff, nu, tau, w));
  return rep;
}

}  // namespace sd
