#include "gg/linalg.hpp"

#include <cstddef>
#include <utility>

namespace gg {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Mat Mat::diag(const std::vector<Scalar>& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

bool Mat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Mat operator+(const Mat& a, const Mat& b) {
  Mat r(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    r.data_[k] = a.data_[k] + b.data_[k];
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  Mat r(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    r.data_[k] = a.data_[k] - b.data_[k];
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
  Mat r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Mat operator*(const Scalar& c, const Mat& a) {
  Mat r(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = c * a.data_[k];
  return r;
}

Scalar Mat::trace() const {
  Scalar t;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

namespace {

// Row-reduces `m` in place; returns (rank, pivot columns).  When `det_out`
// is non-null accumulates the determinant scaling of the row operations.
std::pair<std::size_t, std::vector<std::size_t>> row_reduce(Mat& m,
                                                            Scalar* det_out) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  Scalar d(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      d = -d;
    }
    Scalar inv = m(r, c).inverse();
    d = d * m(r, c);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) = inv * m(r, j);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  if (det_out) *det_out = (r == rows && rows == cols) ? d : Scalar(0);
  return {r, pivots};
}

}  // namespace

Scalar det(const Mat& a) {
  if (a.rows() != a.cols()) throw Error("det of non-square matrix");
  Mat m = a;
  Scalar d;
  row_reduce(m, &d);
  return d;
}

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw Error("inverse of non-square matrix");
  std::size_t n = a.rows();
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Scalar(1);
  }
  auto [rk, pivots] = row_reduce(aug, nullptr);
  // The identity block keeps the augmented matrix at full row rank, so
  // singularity of `a` shows up as a pivot escaping into the right block.
  if (rk < n || pivots[n - 1] >= n)
    throw SingularMatrixError("matrix is singular");
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

bool solve(const Mat& a, const std::vector<Scalar>& b,
           std::vector<Scalar>* x) {
  std::size_t rows = a.rows(), cols = a.cols();
  Mat aug(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = a(i, j);
    aug(i, cols) = b[i];
  }
  auto [rk, pivots] = row_reduce(aug, nullptr);
  // Inconsistent when a pivot lands in the augmented column.
  if (!pivots.empty() && pivots.back() == cols) return false;
  std::vector<Scalar> sol(cols, Scalar(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) sol[pivots[r]] = aug(r, cols);
  *x = std::move(sol);
  return true;
}

std::size_t rank(const Mat& a) {
  Mat m = a;
  return row_reduce(m, nullptr).first;
}

std::vector<std::vector<Scalar>> nullspace(const Mat& a) {
  Mat m = a;
  auto [rk, pivots] = row_reduce(m, nullptr);
  std::size_t cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, Scalar(0));
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Scalar> char_poly(const Mat& a) {
  if (a.rows() != a.cols()) throw Error("char_poly of non-square matrix");
  std::size_t n = a.rows();
  // Faddeev–LeVerrier: M_0 = I, c_n = 1;
  //   M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k)/k.
  std::vector<Scalar> c(n + 1);
  c[n] = Scalar(1);
  Mat m = Mat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      Mat shift = c[n - k + 1] * Mat::identity(n);
      m = a * m + shift;
    }
    Scalar tr = (a * m).trace();
    c[n - k] = -(tr / Scalar(static_cast<long>(k)));
  }
  return c;
}

}  // namespace gg
