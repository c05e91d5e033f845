#pragma once

#include <functional>
#include <map>
#include <vector>

#include "stardeform/gauss.hpp"
#include "stardeform/scalar.hpp"

namespace sd {

using RealFn = std::function<Complex(double)>;

// (pi tau)^{-1/2} exp(-(a + w)^2 / tau). Requires Re tau > 0.
GaussPoly delta_tau(Complex a, Complex tau);

enum class Side { Plus, Minus };

// Sided star-powers (a + w)^{-m}_{*+-}: for m = 1
//   plus  =  i int_{-inf}^0 e^{-t^2 tau/4} e^{it(a+w)} dt
//   minus = -i int_0^{inf}  e^{-t^2 tau/4} e^{it(a+w)} dt
// and for m > 1 the (m-1)-fold a-derivative times (-1)^{m-1}/(m-1)!, i.e.
// the same half-line integrals weighted by t^{m-1}. `derivative` selects
// d^k/dw^k of that function (k = 0, 1, 2).
Complex sided_power(unsigned m, Complex a, Side side, Complex tau, Complex w, unsigned derivative = 0);
std::vector<Complex> sided_inverse(Complex a, Side side, Complex tau, const std::vector<Complex>& grid);

// max over grid of |(a + w) f + (tau/2) f' - 1|, the star-inverse defect in
// tau-expression.
double sided_inverse_defect(Complex a, Side side, Complex tau, const std::vector<Complex>& grid);

// (2 pi)^{-1/2} int fhat(t) e^{-t^2 tau/4} e^{-itw} dt, split at t = 0.
// fhat is the inverse Fourier transform (2 pi)^{-1/2} int f(x) e^{itx} dx.
// t_max overrides the Gaussian-tail cutoff when fhat grows.
std::vector<Complex> tempered_transform(const RealFn& fhat, Complex tau,
                                        const std::vector<Complex>& grid, double t_max = 0.0);

// int f(x) delta_*(x - w) dx over the real line, with optional breakpoints
// where f is not smooth. f must grow slower than the Gaussian kernel decays.
Complex x_transform(const RealFn& f, Complex tau, Complex w, const std::vector<double>& breakpoints = {});

// Heaviside and sign star-functions.
struct HeavisideSgn {
  std::vector<Complex> y;        // Y_*(w)
  std::vector<Complex> y_minus;  // Y_*(-w)
  std::vector<Complex> sgn;      // Y_*(w) - Y_*(-w)
};
HeavisideSgn heaviside_sgn(Complex tau, const std::vector<Complex>& grid);

// Residuals of the Y/sgn calculus, each product computed by multiplying the
// underlying distributions and transforming back.
struct HeavisideReport {
  double sum = 0;       // Y(w) + Y(-w) - 1
  double yy = 0;        // Y * Y - Y
  double y_ym = 0;      // Y(w) * Y(-w)
  double sgn_sgn = 0;   // sgn * sgn - 1
};
HeavisideReport heaviside_identities(Complex tau, const std::vector<Complex>& grid);

// max over grid of |f_*(w) * delta_*(a - w) - f(a) delta_*(a - w)|. The
// product is realised as int f(x) delta(x - a) delta_*(x - w) dx with a
// nascent delta of width eps, Richardson-extrapolated to eps -> 0. a real.
double eval_pairing(const RealFn& f, double a, Complex tau, const std::vector<Complex>& grid);

// v.p. 1/x (m = 1) and Pf x^{-m}: (i/2) int sgn(t) (it)^{m-1}/(m-1)! e^{-t^2 tau/4} e^{-itw} dt.
std::vector<Complex> principal_value_inverse(unsigned m, Complex tau, const std::vector<Complex>& grid);

// max over grid of |sum_{|n|<=N} delta_*(a + 2 pi n + w) - (1/2pi) sum_{|n|<=N} e_*^{in(a+w)}|.
double periodic_comb_residual(Complex a, Complex tau, int n_terms, const std::vector<Complex>& grid);

// Triangle wave |x| on [-pi, pi], periodically extended: transported
// Fourier series sum a_n e_*^{inw} against the x-side transform.
double fourier_transport_residual(Complex tau, int n_terms, const std::vector<Complex>& grid);

// Constant-variation inverse of a + w:
// g(w) = (2/tau) int_0^1 e^{((a + wt)^2 - (a + w)^2)/tau} w dt + C e^{-(a+w)^2/tau}.
Complex constant_variation_inverse(Complex a, Complex c, Complex tau, Complex w, bool derivative = false);
double constant_variation_defect(Complex a, Complex c, Complex tau, const std::vector<Complex>& grid);

// F = ((a+w)^{-1} - (b+w)^{-1}) / (b - a) on one side; returns the defect of
// (a + w) * ((b + w) * F) = 1 over the grid.
double product_of_inverses_defect(Complex a, Complex b, Side side, Complex tau,
                                  const std::vector<Complex>& grid);

// Transform of delta_eps(x + a) delta_eps(x + b): the product of the
// 2 pi i-scaled deltas at distinct real points; tends to 0 with eps.
double delta_product_magnitude(double a, double b, Complex tau, const std::vector<Complex>& grid,
                               double eps = 1e-3);

// Finite sum sum_k c_k e_*^{ikw}. Star products follow the exponential law
// exactly; the tau-expression of e_*^{ikw} is e^{-k^2 tau/4} e^{ikw}.
class ExpSeries {
 public:
  ExpSeries() = default;
  static ExpSeries term(int k, Complex c = 1.0);

  const std::map<int, Complex>& terms() const { return c_; }
  Complex operator()(Complex w, Complex tau) const;

  ExpSeries& operator+=(const ExpSeries& o);
  friend ExpSeries operator+(ExpSeries a, const ExpSeries& b) { return a += b; }
  friend ExpSeries operator-(ExpSeries a, const ExpSeries& b);
  friend ExpSeries operator*(Complex s, ExpSeries a);
  // Star product.
  friend ExpSeries star(const ExpSeries& a, const ExpSeries& b);

  // Drops terms whose tau-expression magnitude bound |c| e^{-k^2 Re tau/4}
  // is below tol; this is the limit step that makes one-sided series converge.
  ExpSeries pruned(Complex tau, double tol) const;

 private:
  std::map<int, Complex> c_;
};

// One-sided inverses of 1 - e_*^{2iw}, truncated at n_terms.
ExpSeries geometric_inverse_plus(int n_terms);   //  sum_{n=0}^{N} e_*^{2niw}
ExpSeries geometric_inverse_minus(int n_terms);  // -sum_{n=1}^{N} e_*^{-2niw}
// (cos_* w)^{-1}_{*+-} = 2 e_*^{+-iw} * sum_{n>=0} (-1)^n e_*^{+-2niw}
ExpSeries cos_inverse(Side side, int n_terms);

struct AssociativityGap {
  double gap;            // max |((A*B)*C - A*(B*C))|
  double theta_mismatch; // max |gap function - theta3|
};
// A, C the two inverses of B = 1 - e_*^{2iw}; each inner product is pruned
// at tol before the outer one, modelling the limit N -> infinity.
AssociativityGap associativity_gap(Complex tau, int n_terms, const std::vector<Complex>& grid);

}  // namespace sd
