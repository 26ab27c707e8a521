#pragma once

#include <cstddef>
#include <vector>

#include "gg/scalar.hpp"

namespace gg {

/// Dense matrix over the exact scalar field.  Small sizes only (the largest
/// matrix in the library is 28x28), so plain Gaussian elimination over
/// rationals is entirely adequate.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Mat identity(std::size_t n);
  static Mat diag(const std::vector<Scalar>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Mat transpose() const;
  bool is_zero() const;
  bool is_symmetric() const;

  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(const Scalar& c, const Mat& a);
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  Scalar trace() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

/// Exact determinant (Gaussian elimination with exact pivoting).
Scalar det(const Mat& a);

/// Exact inverse; throws SingularMatrixError when not invertible.
Mat inverse(const Mat& a);

/// Solves A x = b for a single right-hand side.  Returns false (and leaves
/// *x untouched) when the system is inconsistent; free variables are set to
/// zero when the solution is not unique.
bool solve(const Mat& a, const std::vector<Scalar>& b, std::vector<Scalar>* x);

/// Rank via exact elimination.
std::size_t rank(const Mat& a);

/// Basis of the (right) null space of A, one vector per column of the result.
std::vector<std::vector<Scalar>> nullspace(const Mat& a);

/// Coefficients of the characteristic polynomial det(t*I - A), returned as
/// c[0] + c[1] t + ... + c[n] t^n with c[n] = 1 (Faddeev–LeVerrier).
std::vector<Scalar> char_poly(const Mat& a);

}  // namespace gg
