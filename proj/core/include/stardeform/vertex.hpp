#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>

#include "stardeform/scalar.hpp"

namespace sd {

// Exact polynomials in tau^{-1}, nu, w^2 times integer powers of a formal
// unit gamma = e^{nu/tau} (-tau)^{-1/2} e^{-w^2/tau}. A monomial key is
// {gamma power, tau^{-1} power, nu power, w^2 power}.
class CoeffRing {
 public:
  using Mono = std::array<int, 4>;

  CoeffRing() = default;
  static CoeffRing constant(const mpq_class& c);
  // Laurent coefficient a_j (j odd) with the w^2 degree capped at `cap`:
  //   gamma sum_l (-1)^l / ((l+k)! l!) nu^{l+k} tau^{-2l} (w^2)^l, j = 2k - 1.
  // Even j gives zero.
  static CoeffRing laurent(int j, unsigned cap);

  const std::map<Mono, mpq_class>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  CoeffRing& operator+=(const CoeffRing& o);
  CoeffRing& operator-=(const CoeffRing& o);
  friend CoeffRing operator+(CoeffRing a, const CoeffRing& b) { return a += b; }
  friend CoeffRing operator-(CoeffRing a, const CoeffRing& b) { return a -= b; }
  friend CoeffRing operator*(const CoeffRing& a, const CoeffRing& b);
  friend CoeffRing operator*(const mpq_class& c, CoeffRing a);
  friend bool operator==(const CoeffRing& a, const CoeffRing& b) { return a.t_ == b.t_; }

  // Drops monomials whose w^2 degree exceeds d.
  CoeffRing truncate_degree(unsigned d) const;
  Complex evaluate(Complex tau, Complex nu, Complex w) const;
  std::string to_string() const;

 private:
  void add(const Mono& m, const mpq_class& c);
  std::map<Mono, mpq_class> t_;
};

// Finite combinations of :x_m * u^k:, u = w_*^2 + nu, with u-grade k.
struct VertexElem {
  std::map<std::pair<int, unsigned>, CoeffRing> terms;

  static VertexElem x(int m);
  void add(int m, unsigned k, const CoeffRing& c);
  VertexElem& operator+=(const VertexElem& o);
  VertexElem& operator-=(const VertexElem& o);
  friend VertexElem operator+(VertexElem a, const VertexElem& b) { return a += b; }
  friend VertexElem operator-(VertexElem a, const VertexElem& b) { return a -= b; }
  friend VertexElem operator*(const mpq_class& c, const VertexElem& e);
  friend bool operator==(const VertexElem& a, const VertexElem& b) { return a.terms == b.terms; }

  bool is_zero() const { return terms.empty(); }
  // Terms of grade <= k only.
  VertexElem up_to_grade(unsigned k) const;
};

// [L_n, :x_m * u^k:] = m :x_{n+m} * u^k: + 2 :x_{n+m+2} * u^{k+1}:, extended
// linearly. Terms above grade K are dropped; with strict set they raise
// TruncationOverflow instead. `overflowed` reports whether anything was dropped.
VertexElem L_action(int n, const VertexElem& e, unsigned K, bool strict = false, bool* overflowed = nullptr);

// Central series sum_k c_k u^k, keyed by grade.
using CentralSeries = std::map<unsigned, CoeffRing>;

// [x_m u^k, x_n u^l] = (m - n) a_{m+n-1} u^{k+l}, extended bilinearly, grades
// above K dropped, Laurent coefficients capped at w^2 degree `cap`.
CentralSeries bracket(const VertexElem& a, const VertexElem& b, unsigned K, unsigned cap);
CoeffRing bracket_xx(int m, int n, unsigned cap);

// Structure constant convention for [[L_n, L_l], x] := [L_n, [L_l, x]] - [L_l, [L_n, x]].
// The generator rule gives (l - n) L_{n+l}; the other sign holds only for n = l.
enum class WittSign { LMinusN, NMinusL };
bool witt_identity_check(int n, int ell, int m, unsigned K, WittSign sign = WittSign::LMinusN);
// [L_l, [L_n, x_m]] in closed form:
//   m(n+m) x_{N} + 2(2m+n+2) x_{N+2} u + 4 x_{N+4} u^2,  N = n+m+l.
VertexElem nested_action_closed(int ell, int n, int m);

// Normalised generators. Corrected: sum_k (-1)^k/k! x_{m+2k} u^k, which
// satisfies [L_0, y_m] = m y_m. Literal: sum_k (-2)^k/k! x_{m+k} u^k.
enum class YForm { Corrected, Literal };
VertexElem y_generator(int m, unsigned K, YForm form = YForm::Corrected);
// [L_n, y_m] - m y_{n+m} vanishes through grade K.
bool y_eigen_check(int n, int m, unsigned K, YForm form = YForm::Corrected);

struct CentralReport {
  bool y0_central = true;         // C_{0,m} = 0 for |m| <= range
  bool off_diagonal_zero = true;  // C_{l,m} = 0 for l + m != 0
  bool diagonal_law = true;       // C_{m,-m} = m c_1
  bool c1_matches_display = true; // c_1 = -2 sum (-4)^n/n! a_{n-1} u^n
  CentralSeries c1;               // C_{-1,1}
  std::pair<int, int> first_off_diagonal{0, 0};
  bool passed() const { return y0_central && off_diagonal_zero && diagonal_law; }
};
CentralReport central_constraint_check(unsigned K, YForm form = YForm::Corrected, int range = 3);

// K_{m,n} = [L_m, L_n] - (n - m) L_{m+n} applied to y_l, |l| <= range: zero through grade K.
bool k_centrality_check(int m, int n, unsigned K, YForm form = YForm::Corrected, int range = 3);

// Raising K_lo to K_hi leaves every grade <= K_lo coefficient of C_{l,m}
// unchanged once the w^2 degree is capped at K_lo as well.
bool truncation_stable(unsigned k_lo, unsigned k_hi, YForm form = YForm::Corrected, int range = 3);

// gamma = e^{nu/tau} (-tau)^{-1/2} e^{-w^2/tau}
Complex gamma_value(Complex tau, Complex nu, Complex w);

}  // namespace sd
