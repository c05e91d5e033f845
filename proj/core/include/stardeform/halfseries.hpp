#pragma once

#include <vector>

#include "stardeform/poly.hpp"
#include "stardeform/scalar.hpp"

namespace sd {

// e_*^{l i w} * sum_{n=0}^{K} a_n e_*^{n i w} with exact coefficients. Since
// e_*^{miw} * e_*^{niw} = e_*^{(m+n)iw}, the algebra is that of truncated
// Laurent series in q = e_*^{iw}. Stored normalised: a_0 != 0 unless the
// series is zero.
class HalfSeries {
 public:
  static constexpr unsigned kDefaultOrder = 24;

  explicit HalfSeries(unsigned order = kDefaultOrder);
  HalfSeries(std::vector<QComplex> coeffs, int base_deg = 0, unsigned order = kDefaultOrder);

  static HalfSeries one(unsigned order = kDefaultOrder);
  // sum_{n <= K} c^n / n! q^n, the expansion of e_*^{c e_*^{iw}}.
  static HalfSeries exp_of_q(const QComplex& c, unsigned order = kDefaultOrder);

  int base_deg() const { return base_; }
  unsigned order() const { return order_; }
  bool is_zero() const { return a_.empty(); }
  // Coefficient of q^{base_deg + n}; zero beyond the stored terms.
  QComplex coeff(unsigned n) const;
  // Coefficient of q^m in absolute degree.
  QComplex at_degree(int m) const;
  const std::vector<QComplex>& coeffs() const { return a_; }

  friend HalfSeries operator+(const HalfSeries& f, const HalfSeries& g);
  friend HalfSeries operator-(const HalfSeries& f, const HalfSeries& g);
  friend HalfSeries operator*(const QComplex& c, const HalfSeries& f);
  // Star product: Cauchy product of coefficients, base degrees add.
  friend HalfSeries operator*(const HalfSeries& f, const HalfSeries& g);
  friend bool operator==(const HalfSeries& f, const HalfSeries& g);

 private:
  void normalize();

  int base_ = 0;
  unsigned order_;
  std::vector<QComplex> a_;
};

HalfSeries hs_mul(const HalfSeries& f, const HalfSeries& g);
// Inverse by indeterminate coefficients. NonUnit for the zero series.
HalfSeries hs_inverse(const HalfSeries& f);

// sum_n a_n e^{-(l+n)^2 tau/4} e^{i(l+n)w} on the grid. Re tau > 0.
std::vector<Complex> hs_to_tau_expression(const HalfSeries& f, Complex tau, const std::vector<Complex>& grid);

// Recovers a_0..a_K from the tau-expression sampled at K+1 equispaced points
// of one period by a dense linear solve; the zero function gives zeros.
std::vector<Complex> injectivity_probe(const HalfSeries& f, Complex tau);

// Which series the Euler inversion uses for 1 + e^{2z}: the full exponential
// (k >= 0, so the constant term is 2) or only its k >= 1 tail.
enum class EulerReading { FullExponential, TailOnly };

// e_*^{e_*^{iw}} * (1 + sum 2^k q^k/k!)^{-1} + e_*^{-e_*^{iw}} * (1 + sum (-2)^k q^k/k!)^{-1}
HalfSeries euler_series(unsigned order = HalfSeries::kDefaultOrder,
                        EulerReading reading = EulerReading::FullExponential);
// E_0..E_{2N} read off as (2n)! times the q^{2n} coefficients.
std::vector<mpq_class> euler_numbers(unsigned n, EulerReading reading = EulerReading::FullExponential);

// (1/2)(sum q^n/(n+1)!)^{-1} + (1/2)(sum (-q)^n/(n+1)!)^{-1}
HalfSeries bernoulli_series(unsigned order = HalfSeries::kDefaultOrder);
// B_0..B_{2N}; odd entries are zero (B_1 cancels in the symmetrisation).
std::vector<mpq_class> bernoulli_numbers(unsigned n);

// The same inversions carried out in the basis (iw)_*^k realised as exact
// tau-expressions: products are star products of polynomials, coefficients
// are recovered by peeling the triangular basis. Returns coefficients of
// (iw)_*^k for k <= order.
struct FormalBasis {
  QComplex tau;
  unsigned order;

  RationalPoly element(unsigned k) const;  // tau-expression of (iw)_*^k
  RationalPoly realise(const std::vector<QComplex>& coeffs) const;
  std::vector<QComplex> decompose(const RationalPoly& p) const;
  std::vector<QComplex> multiply(const std::vector<QComplex>& f, const std::vector<QComplex>& g) const;
  std::vector<QComplex> inverse(const std::vector<QComplex>& f) const;
};
std::vector<QComplex> euler_series_formal(const FormalBasis& basis);
std::vector<QComplex> bernoulli_series_formal(const FormalBasis& basis);

}  // namespace sd
