#pragma once

#include "gg/derivation.hpp"
#include "gg/linalg.hpp"
#include "gg/poly.hpp"

namespace gg {

/// Matrix with polynomial entries over a fixed PolyContext.
class PolyMatrix {
 public:
  PolyMatrix(const PolyContext* ctx, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(const PolyContext* ctx, std::size_t n);
  static PolyMatrix from_constant(const PolyContext* ctx, const Mat& m);

  const PolyContext* context() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Poly& operator()(std::size_t i, std::size_t j);
  const Poly& operator()(std::size_t i, std::size_t j) const;

  bool is_zero() const;
  /// Matrix of the constant terms.
  Mat constant_part() const;
  std::size_t x_degree() const;
  PolyMatrix homogeneous_x_part(std::size_t d) const;
  /// Entrywise partial derivative with respect to one context variable.
  PolyMatrix partial(std::size_t v) const;

  PolyMatrix operator-() const;
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Scalar& c, const PolyMatrix& a);
  friend PolyMatrix operator*(const Poly& p, const PolyMatrix& a);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) {
    return !(a == b);
  }

  std::string str() const;

 private:
  const PolyContext* ctx_;
  std::size_t rows_, cols_;
  std::vector<Poly> e_;
};

/// a b - b a.
PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b);

/// Entrywise application of a derivation.
PolyMatrix apply(const Derivation& d, const PolyMatrix& m);

/// Inverse of a square polynomial matrix whose constant part is invertible
/// and whose remainder is nilpotent (the geometric series must terminate;
/// when it runs past the context degree bound a DegreeBoundError escapes).
/// Throws SingularMatrixError when the constant part is singular.
PolyMatrix inverse(const PolyMatrix& m);

}  // namespace gg
