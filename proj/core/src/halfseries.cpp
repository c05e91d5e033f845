#include "stardeform/halfseries.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace sd {

HalfSeries::HalfSeries(unsigned order) : order_(order) {}

HalfSeries::HalfSeries(std::vector<QComplex> coeffs, int base_deg, unsigned order)
    : base_(base_deg), order_(order), a_(std::move(coeffs)) {
  if (a_.size() > order_ + 1) a_.resize(order_ + 1);
  normalize();
}

HalfSeries HalfSeries::one(unsigned order) { return HalfSeries({QComplex(1L)}, 0, order); }

HalfSeries HalfSeries::exp_of_q(const QComplex& c, unsigned order) {
  std::vector<QComplex> a(order + 1);
  QComplex term(1L);
  for (unsigned n = 0; n <= order; ++n) {
    if (n > 0) term = term * c / QComplex(long(n));
    a[n] = term;
  }
  return HalfSeries(std::move(a), 0, order);
}

void HalfSeries::normalize() {
  auto first = std::find_if(a_.begin(), a_.end(), [](const QComplex& x) { return !x.is_zero(); });
  if (first == a_.end()) {
    a_.clear();
    base_ = 0;
    return;
  }
  base_ += static_cast<int>(first - a_.begin());
  a_.erase(a_.begin(), first);
  a_.resize(order_ + 1, QComplex(0L));
}

QComplex HalfSeries::coeff(unsigned n) const { return n < a_.size() ? a_[n] : QComplex(0L); }

QComplex HalfSeries::at_degree(int m) const {
  if (is_zero() || m < base_) return QComplex(0L);
  return coeff(static_cast<unsigned>(m - base_));
}

namespace {

// Aligned combination over the degree range known for both operands.
HalfSeries combine(const HalfSeries& f, const HalfSeries& g, bool subtract) {
  const unsigned order = std::min(f.order(), g.order());
  if (f.is_zero() && g.is_zero()) return HalfSeries(order);
  int base;
  if (f.is_zero()) base = g.base_deg();
  else if (g.is_zero()) base = f.base_deg();
  else base = std::min(f.base_deg(), g.base_deg());
  // The top known degree is limited by whichever operand is known less far.
  int top = base + static_cast<int>(order);
  if (!f.is_zero()) top = std::min(top, f.base_deg() + static_cast<int>(f.order()));
  if (!g.is_zero()) top = std::min(top, g.base_deg() + static_cast<int>(g.order()));
  std::vector<QComplex> a;
  for (int m = base; m <= top; ++m) {
    a.push_back(subtract ? f.at_degree(m) - g.at_degree(m) : f.at_degree(m) + g.at_degree(m));
  }
  return HalfSeries(std::move(a), base, order);
}

}  // namespace

HalfSeries operator+(const HalfSeries& f, const HalfSeries& g) { return combine(f, g, false); }
HalfSeries operator-(const HalfSeries& f, const HalfSeries& g) { return combine(f, g, true); }

HalfSeries operator*(const QComplex& c, const HalfSeries& f) {
  std::vector<QComplex> a = f.a_;
  for (auto& x : a) x = c * x;
  return HalfSeries(std::move(a), f.base_, f.order_);
}

HalfSeries operator*(const HalfSeries& f, const HalfSeries& g) {
  const unsigned order = std::min(f.order_, g.order_);
  if (f.is_zero() || g.is_zero()) return HalfSeries(order);
  std::vector<QComplex> a(order + 1, QComplex(0L));
  for (unsigned n = 0; n <= order; ++n) {
    QComplex s(0L);
    for (unsigned j = 0; j <= n; ++j) s += f.coeff(j) * g.coeff(n - j);
    a[n] = s;
  }
  return HalfSeries(std::move(a), f.base_ + g.base_, order);
}

bool operator==(const HalfSeries& f, const HalfSeries& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() == g.is_zero();
  if (f.base_ != g.base_) return false;
  const std::size_t n = std::max(f.a_.size(), g.a_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (!(f.coeff(static_cast<unsigned>(k)) == g.coeff(static_cast<unsigned>(k)))) return false;
  }
  return true;
}

HalfSeries hs_mul(const HalfSeries& f, const HalfSeries& g) { return f * g; }

HalfSeries hs_inverse(const HalfSeries& f) {
  if (f.is_zero()) throw NonUnit("the zero series has no inverse");
  const unsigned order = f.order();
  const QComplex inv0 = QComplex(1L) / f.coeff(0);
  std::vector<QComplex> b(order + 1, QComplex(0L));
  b[0] = inv0;
  for (unsigned n = 1; n <= order; ++n) {
    QComplex s(0L);
    for (unsigned j = 1; j <= n; ++j) s += f.coeff(j) * b[n - j];
    b[n] = -(s * inv0);
  }
  return HalfSeries(std::move(b), -f.base_deg(), order);
}

std::vector<Complex> hs_to_tau_expression(const HalfSeries& f, Complex tau, const std::vector<Complex>& grid) {
  if (!(tau.real() > 0)) throw DomainError("tau-expressions of half-series need Re tau > 0");
  std::vector<Complex> out(grid.size(), 0.0);
  for (unsigned n = 0; n < f.coeffs().size(); ++n) {
    const double m = f.base_deg() + static_cast<int>(n);
    const Complex c = f.coeff(n).to_complex() * std::exp(-m * m * tau / 4.0);
    if (c == Complex(0.0)) continue;
    for (std::size_t j = 0; j < grid.size(); ++j) out[j] += c * std::exp(kI * m * grid[j]);
  }
  return out;
}

std::vector<Complex> injectivity_probe(const HalfSeries& f, Complex tau) {
  const unsigned k = f.order();
  const int base = f.base_deg();
  std::vector<Complex> grid;
  for (unsigned j = 0; j <= k; ++j) grid.emplace_back(2.0 * kPi * j / (k + 1), 0.0);
  const std::vector<Complex> values = hs_to_tau_expression(f, tau, grid);

  Eigen::MatrixXcd m(k + 1, k + 1);
  Eigen::VectorXcd rhs(k + 1);
  for (unsigned j = 0; j <= k; ++j) {
    rhs(j) = values[j];
    for (unsigned n = 0; n <= k; ++n) {
      const double deg = base + static_cast<int>(n);
      m(j, n) = std::exp(-deg * deg * tau / 4.0 + kI * deg * grid[j]);
    }
  }
  const Eigen::VectorXcd sol = m.partialPivLu().solve(rhs);
  return std::vector<Complex>(sol.data(), sol.data() + sol.size());
}

HalfSeries euler_series(unsigned order, EulerReading reading) {
  const HalfSeries one = HalfSeries::one(order);
  auto denominator = [&](long sign) {
    const HalfSeries e = HalfSeries::exp_of_q(QComplex(2 * sign), order);
    return reading == EulerReading::FullExponential ? one + e : e;
  };
  return HalfSeries::exp_of_q(QComplex(1L), order) * hs_inverse(denominator(1)) +
         HalfSeries::exp_of_q(QComplex(-1L), order) * hs_inverse(denominator(-1));
}

namespace {

std::vector<mpq_class> even_numbers(const HalfSeries& s, unsigned n) {
  std::vector<mpq_class> out(2 * n + 1, mpq_class(0));
  for (unsigned m = 0; m <= 2 * n; m += 2) {
    const QComplex c = s.at_degree(static_cast<int>(m));
    if (!c.is_real()) throw DomainError("non-real generating-function coefficient");
    out[m] = c.re() * factorial_q(m);
  }
  return out;
}

unsigned order_for(unsigned n) { return std::max<unsigned>(HalfSeries::kDefaultOrder, 2 * n); }

}  // namespace

std::vector<mpq_class> euler_numbers(unsigned n, EulerReading reading) {
  return even_numbers(euler_series(order_for(n), reading), n);
}

HalfSeries bernoulli_series(unsigned order) {
  std::vector<QComplex> plus(order + 1), minus(order + 1);
  for (unsigned k = 0; k <= order; ++k) {
    const QComplex c(mpq_class(1) / factorial_q(k + 1));
    plus[k] = c;
    minus[k] = (k % 2 == 0) ? c : -c;
  }
  const QComplex half(mpq_class(1, 2));
  return half * hs_inverse(HalfSeries(plus, 0, order)) + half * hs_inverse(HalfSeries(minus, 0, order));
}

std::vector<mpq_class> bernoulli_numbers(unsigned n) { return even_numbers(bernoulli_series(order_for(n)), n); }

// ---------------------------------------------------------------- formal basis

RationalPoly FormalBasis::element(unsigned k) const {
  return w_star_power<QComplex>(k, tau) * pow(QComplex::i(), k);
}

RationalPoly FormalBasis::realise(const std::vector<QComplex>& coeffs) const {
  RationalPoly p;
  for (unsigned k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) p += element(k) * coeffs[k];
  }
  return p;
}

std::vector<QComplex> FormalBasis::decompose(const RationalPoly& p) const {
  const int deg = p.degree();
  std::vector<QComplex> c(std::max<int>(deg + 1, static_cast<int>(order) + 1), QComplex(0L));
  RationalPoly rest = p;
  for (int d = deg; d >= 0; --d) {
    const QComplex lead = rest.coeff(static_cast<unsigned>(d));
    if (lead.is_zero()) continue;
    c[d] = lead / pow(QComplex::i(), static_cast<unsigned>(d));
    rest -= element(static_cast<unsigned>(d)) * c[d];
  }
  c.resize(order + 1);
  return c;
}

std::vector<QComplex> FormalBasis::multiply(const std::vector<QComplex>& f, const std::vector<QComplex>& g) const {
  return decompose(star_product(realise(f), realise(g), tau));
}

std::vector<QComplex> FormalBasis::inverse(const std::vector<QComplex>& f) const {
  if (f.empty() || f[0].is_zero()) throw NonUnit("formal series with zero constant term");
  const QComplex inv0 = QComplex(1L) / f[0];
  std::vector<QComplex> g(order + 1, QComplex(0L));
  g[0] = inv0;
  for (unsigned n = 1; n <= order; ++n) {
    // Coefficient n of f * (g_0 .. g_{n-1}, 0) fixes g_n.
    std::vector<QComplex> fn(f.begin(), f.begin() + std::min<std::size_t>(f.size(), n + 1));
    std::vector<QComplex> gn(g.begin(), g.begin() + n);
    g[n] = -(multiply(fn, gn)[n] * inv0);
  }
  return g;
}

namespace {

std::vector<QComplex> add(std::vector<QComplex> a, const std::vector<QComplex>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

std::vector<QComplex> scaled_exp(const QComplex& c, unsigned order) {
  return HalfSeries::exp_of_q(c, order).coeffs();
}

}  // namespace

std::vector<QComplex> euler_series_formal(const FormalBasis& basis) {
  const unsigned k = basis.order;
  auto half = [&](long sign) {
    std::vector<QComplex> den = scaled_exp(QComplex(2 * sign), k);
    den[0] += QComplex(1L);
    return basis.multiply(scaled_exp(QComplex(sign), k), basis.inverse(den));
  };
  return add(half(1), half(-1));
}

std::vector<QComplex> bernoulli_series_formal(const FormalBasis& basis) {
  const unsigned k = basis.order;
  std::vector<QComplex> plus(k + 1), minus(k + 1);
  for (unsigned n = 0; n <= k; ++n) {
    const QComplex c(mpq_class(1) / factorial_q(n + 1));
    plus[n] = c;
    minus[n] = (n % 2 == 0) ? c : -c;
  }
  std::vector<QComplex> sum = add(basis.inverse(plus), basis.inverse(minus));
  for (auto& x : sum) x = x * QComplex(mpq_class(1, 2));
  return sum;
}

}  // namespace sd
