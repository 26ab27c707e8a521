#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gg/linalg.hpp"
#include "gg/scalar.hpp"

namespace gg {

/// Strictly increasing tuple of 0-based basis indices.
using IndexTuple = std::vector<std::uint8_t>;

/// Finite-dimensional space with a fixed frame, a nondegenerate symmetric
/// bilinear form (the Gram matrix of the frame) and an orientation.
///
/// The volume form is vol = vol_coeff * e^{1...n}.  For real metrics the
/// coefficient is the exact square root of |det g|; for other exact metrics
/// whose determinant is not a perfect rational square the caller must supply
/// the coefficient explicitly (it is fixed once per space).
class MetricSpace {
 public:
  explicit MetricSpace(Mat gram,
                       std::optional<Scalar> vol_coeff = std::nullopt);

  static MetricSpace euclidean(std::size_t n);
  /// diag(+1,...,+1,-1): signature (n-1,1).
  static MetricSpace lorentz(std::size_t n);
  static MetricSpace from_diag(const std::vector<Scalar>& d);

  std::size_t dim() const { return gram_.rows(); }
  const Mat& gram() const { return gram_; }
  const Mat& gram_inv() const { return gram_inv_; }
  const Scalar& det_gram() const { return det_; }
  const Scalar& vol_coeff() const { return vol_coeff_; }

 private:
  Mat gram_;
  Mat gram_inv_;
  Scalar det_;
  Scalar vol_coeff_;
};

/// Exterior form of fixed degree with exact coefficients, stored sparsely on
/// the basis of strictly increasing index tuples.
class Form {
 public:
  Form(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {}

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }

  /// Adds c * e^{I} where I may be any tuple of distinct indices (it is
  /// sorted internally, picking up the permutation sign).  Tuples with a
  /// repeated index contribute zero.
  void add_term(IndexTuple idx, const Scalar& c);

  /// Coefficient at a strictly increasing tuple (zero when absent).
  Scalar coeff(const IndexTuple& idx) const;

  const std::map<IndexTuple, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Form operator-() const;
  friend Form operator+(const Form& a, const Form& b);
  friend Form operator-(const Form& a, const Form& b);
  friend Form operator*(const Scalar& c, const Form& a);
  friend bool operator==(const Form& a, const Form& b);
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  std::string str() const;

 private:
  std::size_t dim_;
  std::size_t degree_;
  std::map<IndexTuple, Scalar> terms_;  // zero coefficients are erased
};

/// Exterior product.
Form wedge(const Form& a, const Form& b);

/// Inner product on forms induced by the metric:
/// <e^I, e^J> = det(g^{I_a J_b}) extended bilinearly.
Scalar inner(const MetricSpace& ms, const Form& a, const Form& b);

/// Hodge star defined by  alpha ^ star(beta) = <alpha, beta> vol.
Form star(const MetricSpace& ms, const Form& b);

/// Pullback of a form under the linear map with matrix L mapping the source
/// frame to the target frame:  (pullback f)(v_1,..,v_k) = f(L v_1,..,L v_k).
/// L has f.dim() rows and source_dim columns.
Form pullback(const Form& f, const Mat& l);

/// Enumerates all strictly increasing k-tuples from {0,..,n-1}.
std::vector<IndexTuple> increasing_tuples(std::size_t n, std::size_t k);

/// Sign of the permutation sorting `idx`; 0 when an index repeats.
int sort_sign(IndexTuple& idx);

}  // namespace gg
