#include "gg/scalar.hpp"

#include <ostream>

namespace gg {

Scalar Scalar::from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw Error("invalid rational literal: '" + s + "'");
  }
  q.canonicalize();
  return Scalar(q);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error("division by zero scalar");
  // (a+bi)/(c+di) = (a+bi)(c-di)/(c^2+d^2)
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / norm;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("inverse of zero scalar");
  return Scalar(1) / *this;
}

namespace {

// Exact integer square root if n is a perfect square.
bool perfect_sqrt(const mpz_class& n, mpz_class* root) {
  if (n < 0) return false;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (r * r == n) {
    *root = r;
    return true;
  }
  return false;
}

}  // namespace

Scalar Scalar::sqrt_exact() const {
  if (im_ != 0) throw Error("sqrt_exact: value has nonzero imaginary part");
  if (re_ < 0) throw Error("sqrt_exact: value is negative");
  mpz_class num_root, den_root;
  if (!perfect_sqrt(re_.get_num(), &num_root) ||
      !perfect_sqrt(re_.get_den(), &den_root)) {
    throw Error("sqrt_exact: " + re_.get_str() +
                " is not a perfect rational square");
  }
  return Scalar(mpq_class(num_root, den_root));
}

std::string Scalar::str() const {
  auto rat = [](const mpq_class& q) { return q.get_str(); };
  if (im_ == 0) return rat(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rat(im_) + "*i";
  }
  if (re_ == 0) return imag;
  if (im_ > 0 && im_ != 1) return rat(re_) + "+" + imag;
  if (im_ == 1) return rat(re_) + "+i";
  return rat(re_) + imag;  // negative imaginary carries its own sign
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

}  // namespace gg
