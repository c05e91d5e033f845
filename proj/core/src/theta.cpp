#include "stardeform/theta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "stardeform/gauss.hpp"

namespace sd {

namespace mp = boost::multiprecision;
using MpReal = mp::mpfr_float;
using MpComplex = mp::number<mp::complex_adaptor<mp::mpfr_float_backend<0>>>;

namespace {

void require_kind(int kind) {
  if (kind < 1 || kind > 4) throw DomainError("theta kind must be 1, 2, 3 or 4");
}

void require_half_plane(Complex tau) {
  if (!(tau.real() > 0)) throw DomainError("theta functions need Re tau > 0");
}

// Works for std::complex<double> and the MPFR complex type alike.
template <class C>
C theta_kernel(int kind, const C& w, const C& tau, int n_max) {
  const C i(0, 1);
  C sum(0);
  for (int n = -n_max; n <= n_max; ++n) {
    const bool odd_kind = kind == 1 || kind == 2;
    const C k = odd_kind ? C(2 * n + 1) : C(2 * n);
    const C expo = -(k * k) * tau / C(4) + k * i * w;
    C term = exp(expo);
    if ((kind == 1 || kind == 4) && (n % 2 != 0)) term = -term;
    sum += term;
  }
  if (kind == 1) sum *= -i;
  return sum;
}

}  // namespace

int theta_truncation(Complex tau, Complex w, double tol) {
  require_half_plane(tau);
  const double l = std::log(1.0 / tol);
  const double y = std::abs(w.imag());
  const double re = tau.real();
  // n^2 Re tau - 2 n |Im w| > ln(1/tol)
  const double n = (y + std::sqrt(y * y + re * l)) / re;
  return static_cast<int>(std::ceil(n)) + 2;
}

ThetaSeries::ThetaSeries(int kind_, Complex tau_, Complex w_bound, double tol)
    : kind(kind_), tau(tau_), trunc(theta_truncation(tau_, w_bound, tol)), q(std::exp(-tau_)) {
  require_kind(kind_);
}

Complex ThetaSeries::operator()(Complex w) const { return theta_kernel<Complex>(kind, w, tau, trunc); }

Complex theta_eval(int kind, Complex w, Complex tau, double tol) {
  require_kind(kind);
  return theta_kernel<Complex>(kind, w, tau, theta_truncation(tau, w, tol));
}

namespace {

MpComplex to_mp(Complex z) { return MpComplex(MpReal(z.real()), MpReal(z.imag())); }

std::string mp_str(const MpReal& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

struct PrecisionScope {
  unsigned saved;
  explicit PrecisionScope(unsigned digits) : saved(MpReal::default_precision()) {
    MpReal::default_precision(digits + 10);
  }
  ~PrecisionScope() { MpReal::default_precision(saved); }
};

}  // namespace

ExtendedValue theta_eval_extended(int kind, Complex w, Complex tau, unsigned digits) {
  require_kind(kind);
  require_half_plane(tau);
  PrecisionScope scope(digits);
  const int n = theta_truncation(tau, w, std::pow(10.0, -static_cast<double>(digits) - 5));
  MpComplex v = theta_kernel<MpComplex>(kind, to_mp(w), to_mp(tau), n);
  return {mp_str(v.real(), digits), mp_str(v.imag(), digits)};
}

int quasi_periodicity_sign(int kind) {
  require_kind(kind);
  return (kind == 2 || kind == 3) ? 1 : -1;
}

double quasi_periodicity_residual(int kind, const std::vector<Complex>& grid, Complex tau) {
  const int sign = quasi_periodicity_sign(kind);
  double worst = 0.0;
  for (const auto& w : grid) {
    Complex lhs = std::exp(2.0 * kI * w - tau) * theta_eval(kind, w + kI * tau, tau);
    worst = std::max(worst, std::abs(lhs - double(sign) * theta_eval(kind, w, tau)));
  }
  return worst;
}

double imaginary_transform_residual(Complex w, Complex tau) {
  require_half_plane(tau);
  const Complex dual_tau = kPi * kPi / tau;
  const Complex dual_w = kPi * w / (kI * tau);
  Complex rhs = std::sqrt(kPi / tau) * std::exp(-w * w / tau) * theta_eval(3, dual_w, dual_tau);
  return std::abs(theta_eval(3, w, tau) - rhs);
}

double imaginary_transform_residual_extended(Complex w, Complex tau, unsigned digits) {
  require_half_plane(tau);
  PrecisionScope scope(digits);
  const double tol = std::pow(10.0, -static_cast<double>(digits) - 5);
  const MpComplex i(0, 1);
  const MpComplex pi(mp::mpfr_float(boost::math::constants::pi<MpReal>()), MpReal(0));
  const MpComplex mw = to_mp(w), mt = to_mp(tau);
  const MpComplex dual_tau = pi * pi / mt;
  const MpComplex dual_w = pi * mw / (i * mt);
  const Complex dt(static_cast<double>(dual_tau.real()), static_cast<double>(dual_tau.imag()));
  const Complex dw(static_cast<double>(dual_w.real()), static_cast<double>(dual_w.imag()));
  MpComplex lhs = theta_kernel<MpComplex>(3, mw, mt, theta_truncation(tau, w, tol));
  MpComplex rhs = sqrt(pi / mt) * exp(-mw * mw / mt) *
                  theta_kernel<MpComplex>(3, dual_w, dual_tau, theta_truncation(dt, dw, tol));
  return static_cast<double>(abs(lhs - rhs));
}

Complex delta_sum_representation(Complex w, Complex tau, int n_terms) {
  require_half_plane(tau);
  Complex sum = 0.0;
  for (int n = -n_terms; n <= n_terms; ++n) {
    const Complex x = w + kPi * double(n);
    sum += std::exp(-x * x / tau);
  }
  return std::sqrt(kPi / tau) * sum;
}

double translate_eigen_residual(const std::function<Complex(Complex)>& f, int sign,
                                const std::vector<Complex>& grid, Complex tau) {
  double worst = 0.0;
  for (const auto& w : grid) {
    worst = std::max(worst, std::abs(translate_action(kI, f, tau, w) - double(sign) * f(w)));
  }
  return worst;
}

double theta_eigen_residual(int kind, const std::vector<Complex>& grid, Complex tau) {
  require_half_plane(tau);
  const int sign = quasi_periodicity_sign(kind);
  return translate_eigen_residual([&](Complex z) { return theta_eval(kind, z, tau); }, sign, grid,
                                  tau);
}

}  // namespace sd
