#include "stardeform/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace sd {

QComplex QComplex::from_complex(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("cannot represent a non-finite value exactly");
  }
  return {mpq_class(z.real()), mpq_class(z.imag())};
}

QComplex& QComplex::operator+=(const QComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

QComplex& QComplex::operator-=(const QComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

QComplex& QComplex::operator*=(const QComplex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

QComplex& QComplex::operator/=(const QComplex& o) {
  if (o.is_zero()) throw DomainError("division by exact zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class den = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / den;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string QComplex::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag = im_ == 1 ? "" : (im_ == -1 ? "-" : im_.get_str());
  if (sgn(re_) == 0) return imag + "i";
  std::string sep = sgn(im_) > 0 ? "+" : "";
  return "(" + re_.get_str() + sep + imag + "i)";
}

QComplex pow(const QComplex& z, unsigned n) {
  QComplex result(1);
  QComplex base = z;
  while (n != 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n != 0) base *= base;
  }
  return result;
}

mpq_class factorial_q(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return mpq_class(f);
}

mpq_class binomial_q(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return mpq_class(b);
}

Precision Precision::from_env() {
  const char* env = std::getenv("STARDEFORM_PRECISION");
  if (env == nullptr || *env == '\0') return {};
  unsigned digits = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), digits);
  if (ec != std::errc() || *ptr != '\0') {
    throw DomainError(std::string("STARDEFORM_PRECISION must be a digit count, got '") + env +
                      "'");
  }
  if (digits <= 16) return {};
  return extended(digits);
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string im = format_double(z.imag()) + "i";
  if (z.real() == 0.0) return im;
  return format_double(z.real()) + (z.imag() > 0 ? "+" : "") + im;
}

}  // namespace sd
