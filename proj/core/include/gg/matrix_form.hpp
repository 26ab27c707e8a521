#pragma once

#include "gg/form.hpp"
#include "gg/polymatrix.hpp"

namespace gg {

/// Exterior form on the coordinate space of a PolyContext with square
/// polynomial-matrix coefficients.  Index tuples run over the coordinate
/// variables only (0 .. num_x - 1); the harmonic variables never appear as
/// form indices.  Stored sparsely on strictly increasing tuples.
class MatrixForm {
 public:
  MatrixForm(const PolyContext* ctx, std::size_t rank, std::size_t degree);

  const PolyContext* context() const { return ctx_; }
  std::size_t rank() const { return rank_; }
  std::size_t degree() const { return degree_; }
  /// Number of form directions: the coordinate count of the context.
  std::size_t dim() const { return ctx_->num_x(); }

  /// Adds coeff * dx^{I}; I may be unsorted (the permutation sign is picked
  /// up), tuples with a repeated index contribute zero.
  void add_term(IndexTuple idx, const PolyMatrix& coeff);

  /// Coefficient at a strictly increasing tuple (zero matrix when absent).
  PolyMatrix coeff(const IndexTuple& idx) const;

  const std::map<IndexTuple, PolyMatrix>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  MatrixForm operator-() const;
  friend MatrixForm operator+(const MatrixForm& a, const MatrixForm& b);
  friend MatrixForm operator-(const MatrixForm& a, const MatrixForm& b);
  friend MatrixForm operator*(const Scalar& c, const MatrixForm& a);
  friend bool operator==(const MatrixForm& a, const MatrixForm& b);
  friend bool operator!=(const MatrixForm& a, const MatrixForm& b) {
    return !(a == b);
  }

  std::string str() const;

 private:
  const PolyContext* ctx_;
  std::size_t rank_;
  std::size_t degree_;
  std::map<IndexTuple, PolyMatrix> terms_;  // zero coefficients are erased
};

/// Exterior product; matrix coefficients multiply in the given order.
MatrixForm wedge(const MatrixForm& a, const MatrixForm& b);

/// Exterior derivative  d w = sum_v dx^v ^ (d/dx_v w)  over the coordinate
/// variables.
MatrixForm exterior_derivative(const MatrixForm& w);

/// Hodge star on the form indices, with a constant metric whose dimension
/// equals the coordinate count.  Matrix coefficients ride along.
MatrixForm star(const MetricSpace& ms, const MatrixForm& w);

}  // namespace gg
