#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace gg {

/// Error hierarchy used across the library.  Every failure the library can
/// diagnose is thrown as a subclass of Error with a human-readable message.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& msg) : Error(msg) {}
};

class DegreeBoundError : public Error {
 public:
  explicit DegreeBoundError(const std::string& msg) : Error(msg) {}
};

/// Exact Gaussian rational a + b*i with arbitrary-precision rational a, b.
///
/// All algebra in the library runs over this field; floating point enters
/// only when spectra are requested in floating mode.
class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}  // NOLINT: implicit by design
  Scalar(long num, long den) : re_(num, den), im_(0) { re_.canonicalize(); }
  explicit Scalar(mpq_class re) : re_(std::move(re)), im_(0) {}
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  /// Parses "n", "n/d" (rational) — no imaginary part.
  static Scalar from_string(const std::string& s);
  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar conj() const { return Scalar(re_, -im_); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Multiplicative inverse; throws on zero.
  Scalar inverse() const;

  /// Exact square root of a nonnegative rational (imaginary part must be
  /// zero, value must be a perfect square); throws otherwise.
  Scalar sqrt_exact() const;

  double re_double() const { return re_.get_d(); }
  double im_double() const { return im_.get_d(); }

  /// Canonical text form: "0", "3", "-5/2", "i", "-i", "2i", "1/3i",
  /// "3+2i", "3-1/2i".
  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  mpq_class re_;
  mpq_class im_;
};

}  // namespace gg
