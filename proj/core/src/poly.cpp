#include "stardeform/poly.hpp"

#include <cmath>

namespace sd {

Poly to_numeric(const RationalPoly& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const auto& q : p.coeffs()) c.push_back(q.to_complex());
  return Poly(std::move(c));
}

RationalPoly to_rational(const Poly& p) {
  std::vector<QComplex> c;
  c.reserve(p.coeffs().size());
  for (const auto& z : p.coeffs()) c.push_back(QComplex::from_complex(z));
  return RationalPoly(std::move(c));
}

double max_coeff_diff(const Poly& a, const Poly& b) {
  const int n = std::max(a.degree(), b.degree());
  double m = 0.0;
  for (int k = 0; k <= n; ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
  return m;
}

namespace {

// Sign and magnitude split so terms join as "a - b" instead of "a + -b".
struct Term {
  bool negative;
  std::string magnitude;  // empty means unit coefficient
  bool parenthesized;
};

Term split(const Complex& z) {
  if (z.imag() == 0.0) {
    double m = std::abs(z.real());
    return {z.real() < 0, m == 1.0 ? "" : format_double(m), false};
  }
  if (z.real() == 0.0) {
    double m = std::abs(z.imag());
    return {z.imag() < 0, (m == 1.0 ? "" : format_double(m)) + "i", false};
  }
  return {false, "(" + format_complex(z) + ")", true};
}

Term split(const QComplex& q) {
  if (q.is_real()) {
    mpq_class m = abs(q.re());
    return {sgn(q.re()) < 0, m == 1 ? "" : m.get_str(), false};
  }
  if (sgn(q.re()) == 0) {
    mpq_class m = abs(q.im());
    return {sgn(q.im()) < 0, (m == 1 ? "" : m.get_str()) + "i", false};
  }
  return {false, q.to_string(), true};
}

template <class T>
std::string render(const BasicPoly<T>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const T& c = p.coeffs()[k];
    if (is_zero(c)) continue;
    Term t = split(c);
    std::string body = t.magnitude;
    if (k > 0) {
      if (!body.empty() && body.back() == 'i') body += "*";
      body += (k == 1 ? "w" : "w^" + std::to_string(k));
    } else if (body.empty()) {
      body = "1";
    }
    if (out.empty()) {
      out = (t.negative ? "-" : "") + body;
    } else {
      out += (t.negative ? " - " : " + ") + body;
    }
  }
  return out;
}

}  // namespace

std::string to_string(const Poly& p) { return render(p); }
std::string to_string(const RationalPoly& p) { return render(p); }

}  // namespace sd
