#include "gg/matrix_form.hpp"

#include <sstream>

namespace gg {

MatrixForm::MatrixForm(const PolyContext* ctx, std::size_t rank,
                       std::size_t degree)
    : ctx_(ctx), rank_(rank), degree_(degree) {
  if (degree > ctx->num_x()) {
    throw Error("form degree exceeds the coordinate count");
  }
}

void MatrixForm::add_term(IndexTuple idx, const PolyMatrix& coeff) {
  if (idx.size() != degree_) throw Error("index tuple has the wrong length");
  if (coeff.rows() != rank_ || coeff.cols() != rank_) {
    throw Error("coefficient matrix has the wrong shape");
  }
  for (auto i : idx) {
    if (i >= ctx_->num_x()) throw Error("form index is not a coordinate");
  }
  const int sign = sort_sign(idx);
  if (sign == 0 || coeff.is_zero()) return;
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    it = terms_.emplace(std::move(idx), PolyMatrix(ctx_, rank_, rank_)).first;
  }
  it->second = sign > 0 ? it->second + coeff : it->second - coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

PolyMatrix MatrixForm::coeff(const IndexTuple& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? PolyMatrix(ctx_, rank_, rank_) : it->second;
}

MatrixForm MatrixForm::operator-() const {
  MatrixForm out(ctx_, rank_, degree_);
  for (const auto& [idx, m] : terms_) out.terms_.emplace(idx, -m);
  return out;
}

MatrixForm operator+(const MatrixForm& a, const MatrixForm& b) {
  if (a.degree_ != b.degree_ || a.rank_ != b.rank_) {
    throw Error("form mismatch in +");
  }
  MatrixForm out = a;
  for (const auto& [idx, m] : b.terms_) out.add_term(idx, m);
  return out;
}

MatrixForm operator-(const MatrixForm& a, const MatrixForm& b) {
  return a + (-b);
}

MatrixForm operator*(const Scalar& c, const MatrixForm& a) {
  MatrixForm out(a.ctx_, a.rank_, a.degree_);
  if (c == Scalar(0)) return out;
  for (const auto& [idx, m] : a.terms_) out.terms_.emplace(idx, c * m);
  return out;
}

bool operator==(const MatrixForm& a, const MatrixForm& b) {
  return a.degree_ == b.degree_ && a.rank_ == b.rank_ &&
         a.terms_ == b.terms_;
}

std::string MatrixForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, m] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "dx";
    for (auto i : idx) os << "_" << static_cast<int>(i);
    os << " (" << m.str() << ")";
  }
  return os.str();
}

MatrixForm wedge(const MatrixForm& a, const MatrixForm& b) {
  if (a.context() != b.context() || a.rank() != b.rank()) {
    throw Error("form mismatch in wedge");
  }
  MatrixForm out(a.context(), a.rank(), a.degree() + b.degree());
  for (const auto& [ia, ma] : a.terms()) {
    for (const auto& [ib, mb] : b.terms()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_term(std::move(idx), ma * mb);
    }
  }
  return out;
}

MatrixForm exterior_derivative(const MatrixForm& w) {
  MatrixForm out(w.context(), w.rank(), w.degree() + 1);
  for (const auto& [idx, m] : w.terms()) {
    for (std::size_t v = 0; v < w.context()->num_x(); ++v) {
      PolyMatrix dm = m.partial(v);
      if (dm.is_zero()) continue;
      IndexTuple ext;
      ext.reserve(idx.size() + 1);
      ext.push_back(static_cast<std::uint8_t>(v));
      ext.insert(ext.end(), idx.begin(), idx.end());
      out.add_term(std::move(ext), dm);
    }
  }
  return out;
}

MatrixForm star(const MetricSpace& ms, const MatrixForm& w) {
  if (ms.dim() != w.context()->num_x()) {
    throw Error("metric dimension does not match the coordinate count");
  }
  MatrixForm out(w.context(), w.rank(), ms.dim() - w.degree());
  for (const auto& [idx, m] : w.terms()) {
    // Star of the scalar basis form dx^{idx}, matrix coefficient rides
    // along; this keeps the two Hodge implementations in lockstep.
    Form basis(ms.dim(), w.degree());
    basis.add_term(idx, Scalar(1));
    const Form starred = star(ms, basis);
    for (const auto& [jdx, c] : starred.terms()) {
      out.add_term(jdx, c * m);
    }
  }
  return out;
}

}  // namespace gg
