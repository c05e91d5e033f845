#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stardeform/scalar.hpp"

namespace sd {

// Jacobi theta functions as tau-expressions of bilateral star-exponential
// series, q = e^{-tau}:
//   theta1 = -i sum (-1)^n q^{(n+1/2)^2} e^{(2n+1)iw}
//   theta2 =    sum        q^{(n+1/2)^2} e^{(2n+1)iw}
//   theta3 =    sum        q^{n^2}       e^{2niw}
//   theta4 =    sum (-1)^n q^{n^2}       e^{2niw}
// All entry points require Re tau > 0 and throw DomainError otherwise.
struct ThetaSeries {
  int kind;
  Complex tau;
  int trunc;  // terms with |n| <= trunc are summed
  Complex q;

  ThetaSeries(int kind, Complex tau, Complex w_bound = 0.0, double tol = 1e-17);
  Complex operator()(Complex w) const;
};

// Smallest N whose dropped terms are below tol at this w. For real w this is
// ceil(sqrt(ln(1/tol) / Re tau)) + 2.
int theta_truncation(Complex tau, Complex w, double tol);

Complex theta_eval(int kind, Complex w, Complex tau, double tol = 1e-17);

// Same series in MPFR-backed complex arithmetic with `digits` decimal digits;
// values returned as decimal strings.
struct ExtendedValue {
  std::string re;
  std::string im;
};
ExtendedValue theta_eval_extended(int kind, Complex w, Complex tau, unsigned digits);

// max over grid of |e^{2iw - tau} theta(w + i tau) - sign theta(w)|,
// sign = +1 for kinds 2, 3 and -1 for kinds 1, 4.
double quasi_periodicity_residual(int kind, const std::vector<Complex>& grid, Complex tau);
int quasi_periodicity_sign(int kind);

// |theta3(w, tau) - sqrt(pi/tau) e^{-w^2/tau} theta3(pi w/(i tau), pi^2/tau)|
double imaginary_transform_residual(Complex w, Complex tau);
double imaginary_transform_residual_extended(Complex w, Complex tau, unsigned digits);

// sqrt(pi/tau) sum_{|n| <= n_terms} exp(-(w + pi n)^2 / tau): the delta comb
// sum_n pi delta_tau(w + pi n).
Complex delta_sum_representation(Complex w, Complex tau, int n_terms);

// max over grid of |e_*^{2iw} * f - sign f| with the product realised by
// translate_action(s = i).
double translate_eigen_residual(const std::function<Complex(Complex)>& f, int sign,
                                const std::vector<Complex>& grid, Complex tau);
double theta_eigen_residual(int kind, const std::vector<Complex>& grid, Complex tau);

}  // namespace sd
