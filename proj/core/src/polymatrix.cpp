#include "gg/polymatrix.hpp"

#include <sstream>

namespace gg {

PolyMatrix::PolyMatrix(const PolyContext* ctx, std::size_t rows,
                       std::size_t cols)
    : ctx_(ctx), rows_(rows), cols_(cols), e_(rows * cols, Poly(ctx)) {}

PolyMatrix PolyMatrix::identity(const PolyContext* ctx, std::size_t n) {
  PolyMatrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = Poly::constant(ctx, Scalar(1));
  return m;
}

PolyMatrix PolyMatrix::from_constant(const PolyContext* ctx, const Mat& m) {
  PolyMatrix out(ctx, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out(i, j) = Poly::constant(ctx, m(i, j));
  return out;
}

Poly& PolyMatrix::operator()(std::size_t i, std::size_t j) {
  return e_[i * cols_ + j];
}

const Poly& PolyMatrix::operator()(std::size_t i, std::size_t j) const {
  return e_[i * cols_ + j];
}

bool PolyMatrix::is_zero() const {
  for (const Poly& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

Mat PolyMatrix::constant_part() const {
  Mat m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(i, j) = (*this)(i, j).constant_term();
  return m;
}

std::size_t PolyMatrix::x_degree() const {
  std::size_t d = 0;
  for (const Poly& p : e_) d = std::max(d, p.x_degree());
  return d;
}

PolyMatrix PolyMatrix::homogeneous_x_part(std::size_t d) const {
  PolyMatrix out(ctx_, rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k)
    out.e_[k] = e_[k].homogeneous_x_part(d);
  return out;
}

PolyMatrix PolyMatrix::partial(std::size_t v) const {
  PolyMatrix out(ctx_, rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k].partial(v);
  return out;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix out(ctx_, rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = -e_[k];
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error("matrix shape mismatch");
  PolyMatrix out(a.ctx_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = a.e_[k] + b.e_[k];
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error("matrix shape mismatch");
  PolyMatrix out(a.ctx_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = a.e_[k] - b.e_[k];
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix shape mismatch");
  PolyMatrix out(a.ctx_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j).is_zero()) continue;
        out(i, j) = out(i, j) + a(i, k) * b(k, j);
      }
    }
  return out;
}

PolyMatrix operator*(const Scalar& c, const PolyMatrix& a) {
  PolyMatrix out(a.ctx_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = c * a.e_[k];
  return out;
}

PolyMatrix operator*(const Poly& p, const PolyMatrix& a) {
  PolyMatrix out(a.ctx_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = p * a.e_[k];
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

std::string PolyMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      os << (*this)(i, j).str();
      if (j + 1 < cols_) os << ", ";
    }
    os << "]";
    if (i + 1 < rows_) os << ", ";
  }
  os << "]";
  return os.str();
}

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b) {
  return a * b - b * a;
}

PolyMatrix apply(const Derivation& d, const PolyMatrix& m) {
  PolyMatrix out(m.context(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = d.apply(m(i, j));
  return out;
}

PolyMatrix inverse(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of non-square matrix");
  const PolyContext* ctx = m.context();
  const std::size_t n = m.rows();
  Mat c = m.constant_part();
  Mat cinv = inverse(c);  // SingularMatrixError when degenerate

  PolyMatrix cinv_p = PolyMatrix::from_constant(ctx, cinv);
  PolyMatrix nil = cinv_p * m - PolyMatrix::identity(ctx, n);
  PolyMatrix series = PolyMatrix::identity(ctx, n);
  PolyMatrix power = nil;
  Scalar sign(-1);
  std::size_t k = 0;
  while (!power.is_zero()) {
    if (++k > ctx->max_degree() + 1)
      throw DegreeBoundError(
          "matrix inverse: geometric series did not terminate");
    series = series + sign * power;
    power = power * nil;
    sign = -sign;
  }
  return series * cinv_p;
}

}  // namespace gg
