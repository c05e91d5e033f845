#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace sd {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Every failure raised by the library derives from Error so callers can
// distinguish numerical trouble from programming mistakes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside the region where the requested quantity exists
// (for example Re tau <= 0 for theta functions).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation at a branch point or pole, such as t = 1/tau.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

// The closed-form product has a vanishing determinant.
class SingularProduct : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// A truncated series did not reach the requested tolerance.
class TruncationFailure : public Error {
 public:
  using Error::Error;
};

class NonUnit : public Error {
 public:
  using Error::Error;
};

class DegenerateBoundary : public Error {
 public:
  using Error::Error;
};

class NodeCountError : public Error {
 public:
  using Error::Error;
};

// Strict-mode formal computation produced terms above the grade cap.
class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

// Exact Gaussian rational a + b i.
class QComplex {
 public:
  QComplex() = default;
  QComplex(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  QComplex(const mpq_class& re) : re_(re), im_(0) {}  // NOLINT
  QComplex(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  // Exact conversion of a binary double pair.
  static QComplex from_complex(Complex z);
  static QComplex i() { return QComplex(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }
  QComplex conj() const { return {re_, -im_}; }

  QComplex& operator+=(const QComplex& o);
  QComplex& operator-=(const QComplex& o);
  QComplex& operator*=(const QComplex& o);
  QComplex& operator/=(const QComplex& o);

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // "3/2", "-1/2i", "(1/2+3i)"
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

// Integer power of an exact scalar, n >= 0.
QComplex pow(const QComplex& z, unsigned n);
mpq_class factorial_q(unsigned n);
mpq_class binomial_q(unsigned n, unsigned k);

inline bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
inline bool is_zero(const QComplex& z) { return z.is_zero(); }

// Working precision. Extended mode routes the theta kernels and the Jacobi
// relation through MPFR; everything else stays in double.
struct Precision {
  enum class Mode { Double, Extended };
  Mode mode = Mode::Double;
  unsigned digits = 16;

  // Reads STARDEFORM_PRECISION (decimal digits). Unset or <= 16 means double.
  static Precision from_env();
  static Precision extended(unsigned digits) { return {Mode::Extended, digits}; }
  bool is_extended() const { return mode == Mode::Extended; }
};

// Shortest round-trip decimal for a double.
std::string format_double(double x);
// "1.5", "-2i", "0.5+1.25i"
std::string format_complex(Complex z);

}  // namespace sd
