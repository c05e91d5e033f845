#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "stardeform/scalar.hpp"

namespace sd {

// Dense univariate polynomial in w. Coefficients are stored lowest degree
// first with trailing exact zeros stripped, so degree() of the zero
// polynomial is -1.
template <class T>
class BasicPoly {
 public:
  using value_type = T;

  BasicPoly() = default;
  explicit BasicPoly(std::vector<T> c) : c_(std::move(c)) { trim(); }
  BasicPoly(std::initializer_list<T> c) : c_(c) { trim(); }

  static BasicPoly constant(const T& c) { return BasicPoly(std::vector<T>{c}); }
  static BasicPoly monomial(const T& c, unsigned k) {
    std::vector<T> v(k + 1, T(0L));
    v[k] = c;
    return BasicPoly(std::move(v));
  }
  static BasicPoly w() { return monomial(T(1L), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(unsigned k) const { return k < c_.size() ? c_[k] : T(0L); }
  T leading() const { return c_.empty() ? T(0L) : c_.back(); }

  void set_coeff(unsigned k, const T& v) {
    if (k >= c_.size()) c_.resize(k + 1, T(0L));
    c_[k] = v;
    trim();
  }

  BasicPoly derivative(unsigned times = 1) const {
    if (static_cast<int>(times) > degree()) return {};
    std::vector<T> out(c_.size() - times, T(0L));
    for (std::size_t k = times; k < c_.size(); ++k) {
      T f(1L);
      for (unsigned j = 0; j < times; ++j) f *= T(static_cast<long>(k - j));
      out[k - times] = c_[k] * f;
    }
    return BasicPoly(std::move(out));
  }

  template <class U>
  U eval(const U& w) const {
    U acc(0L);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * w + U(*it);
    return acc;
  }
  T operator()(const T& w) const { return eval<T>(w); }

  // p(w + s)
  BasicPoly shift(const T& s) const {
    std::vector<T> out(c_.begin(), c_.end());
    const std::size_t n = out.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t k = n - 1; k > i; --k) out[k - 1] += s * out[k];
    }
    return BasicPoly(std::move(out));
  }

  // p(a w + b)
  BasicPoly compose_linear(const T& a, const T& b) const {
    BasicPoly lin{b, a};
    BasicPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
    return acc;
  }

  // Drops terms above the given degree.
  BasicPoly truncated(unsigned max_degree) const {
    if (static_cast<int>(max_degree) >= degree()) return *this;
    return BasicPoly(std::vector<T>(c_.begin(), c_.begin() + max_degree + 1));
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0L));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0L));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  BasicPoly& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator-(BasicPoly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend BasicPoly operator*(BasicPoly a, const T& s) { return a *= s; }
  friend BasicPoly operator*(const T& s, BasicPoly a) { return a *= s; }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0L));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (::sd::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return BasicPoly(std::move(out));
  }
  friend bool operator==(const BasicPoly& a, const BasicPoly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && ::sd::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

using Poly = BasicPoly<Complex>;
using RationalPoly = BasicPoly<QComplex>;

Poly to_numeric(const RationalPoly& p);
RationalPoly to_rational(const Poly& p);

// Largest coefficient-wise absolute difference.
double max_coeff_diff(const Poly& a, const Poly& b);

// Human-readable form, e.g. "w^4 + 2w^2 + 0.5".
std::string to_string(const Poly& p);
std::string to_string(const RationalPoly& p);

// f * g at parameter tau: sum_k tau^k / (2^k k!) f^(k) g^(k). The sum is
// finite, so the result is exact in the coefficient type.
template <class T>
BasicPoly<T> star_product(const BasicPoly<T>& f, const BasicPoly<T>& g, const T& tau) {
  if (f.is_zero() || g.is_zero()) return {};
  const int kmax = std::min(f.degree(), g.degree());
  BasicPoly<T> acc = f * g;
  BasicPoly<T> df = f;
  BasicPoly<T> dg = g;
  T c(1L);
  for (int k = 1; k <= kmax; ++k) {
    df = df.derivative();
    dg = dg.derivative();
    c = c * tau / T(2L * k);
    acc += (df * dg) * c;
  }
  return acc;
}

// exp(theta d^2/dw^2) f, a finite sum on polynomials.
template <class T>
BasicPoly<T> heat(const BasicPoly<T>& f, const T& theta) {
  BasicPoly<T> acc = f;
  BasicPoly<T> d = f;
  T c(1L);
  for (int k = 1; 2 * k <= f.degree(); ++k) {
    d = d.derivative(2);
    c = c * theta / T(static_cast<long>(k));
    acc += d * c;
  }
  return acc;
}

// Transports a tau-expression to a tau'-expression.
template <class T>
BasicPoly<T> intertwine(const BasicPoly<T>& f, const T& tau_from, const T& tau_to) {
  return heat(f, (tau_to - tau_from) / T(4L));
}

// tau-expression of the n-th star power of w, via P_{n+1} = w P_n + (tau/2) P_n'.
template <class T>
BasicPoly<T> w_star_power(unsigned n, const T& tau) {
  BasicPoly<T> p = BasicPoly<T>::constant(T(1L));
  const T half_tau = tau / T(2L);
  for (unsigned k = 0; k < n; ++k) {
    p = BasicPoly<T>::w() * p + p.derivative() * half_tau;
  }
  return p;
}

// d/dtau of the intertwiner at the identity: f''/4.
template <class T>
BasicPoly<T> infinitesimal_intertwiner(const BasicPoly<T>& f) {
  return f.derivative(2) * (T(1L) / T(4L));
}

}  // namespace sd
