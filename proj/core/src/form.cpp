#include "gg/form.hpp"

#include <algorithm>
#include <sstream>

namespace gg {

MetricSpace::MetricSpace(Mat gram, std::optional<Scalar> vol_coeff)
    : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols())
    throw Error("metric Gram matrix must be square");
  if (!gram_.is_symmetric()) throw Error("metric Gram matrix must be symmetric");
  det_ = det(gram_);
  if (det_.is_zero()) throw SingularMatrixError("metric is degenerate");
  gram_inv_ = inverse(gram_);
  if (vol_coeff.has_value()) {
    vol_coeff_ = *vol_coeff;
    Scalar sq = vol_coeff_ * vol_coeff_;
    if (sq != det_ && sq != -det_)
      throw Error("volume coefficient squared must equal +-det(g)");
  } else {
    if (!det_.is_real())
      throw Error(
          "metric determinant is not real; supply a volume coefficient");
    Scalar abs_det = det_.re() < 0 ? -det_ : det_;
    vol_coeff_ = abs_det.sqrt_exact();
  }
}

MetricSpace MetricSpace::euclidean(std::size_t n) {
  return MetricSpace(Mat::identity(n));
}

MetricSpace MetricSpace::lorentz(std::size_t n) {
  Mat g = Mat::identity(n);
  g(n - 1, n - 1) = Scalar(-1);
  return MetricSpace(std::move(g));
}

MetricSpace MetricSpace::from_diag(const std::vector<Scalar>& d) {
  return MetricSpace(Mat::diag(d));
}

int sort_sign(IndexTuple& idx) {
  int sign = 1;
  // Insertion sort; adequate for tuples of length <= 8.
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

void Form::add_term(IndexTuple idx, const Scalar& c) {
  if (idx.size() != degree_) throw Error("form term has wrong degree");
  if (c.is_zero()) return;
  int sign = sort_sign(idx);
  if (sign == 0) return;
  Scalar& slot = terms_[idx];
  slot += sign < 0 ? -c : c;
  if (slot.is_zero()) terms_.erase(idx);
}

Scalar Form::coeff(const IndexTuple& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Form Form::operator-() const {
  Form r(dim_, degree_);
  for (const auto& [idx, c] : terms_) r.terms_[idx] = -c;
  return r;
}

Form operator+(const Form& a, const Form& b) {
  if (a.dim_ != b.dim_ || a.degree_ != b.degree_)
    throw Error("form sum shape mismatch");
  Form r = a;
  for (const auto& [idx, c] : b.terms_) {
    Scalar& slot = r.terms_[idx];
    slot += c;
    if (slot.is_zero()) r.terms_.erase(idx);
  }
  return r;
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form operator*(const Scalar& c, const Form& a) {
  Form r(a.dim_, a.degree_);
  if (c.is_zero()) return r;
  for (const auto& [idx, v] : a.terms_) r.terms_[idx] = c * v;
  return r;
}

bool operator==(const Form& a, const Form& b) {
  return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

std::string Form::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*e";
    for (auto i : idx) os << "_" << int(i) + 1;
  }
  return os.str();
}

Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw Error("wedge of forms on different spaces");
  Form r(a.dim(), a.degree() + b.degree());
  if (a.degree() + b.degree() > a.dim()) return r;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      IndexTuple merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      r.add_term(std::move(merged), ca * cb);
    }
  }
  return r;
}

std::vector<IndexTuple> increasing_tuples(std::size_t n, std::size_t k) {
  std::vector<IndexTuple> out;
  if (k > n) return out;
  IndexTuple cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<std::uint8_t>(i);
  while (true) {
    out.push_back(cur);
    // Advance to the next increasing tuple.
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (cur[i] < n - k + i) {
        ++cur[i];
        for (std::size_t j = i + 1; j < k; ++j)
          cur[j] = static_cast<std::uint8_t>(cur[j - 1] + 1);
        break;
      }
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

Scalar inner(const MetricSpace& ms, const Form& a, const Form& b) {
  if (a.dim() != ms.dim() || b.dim() != ms.dim() || a.degree() != b.degree())
    throw Error("inner product shape mismatch");
  const Mat& gi = ms.gram_inv();
  Scalar total;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      // det of the minor g^{-1}[ia, ib]
      std::size_t k = ia.size();
      Mat minor(k, k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) minor(r, c) = gi(ia[r], ib[c]);
      total += ca * cb * det(minor);
    }
  }
  return total;
}

Form star(const MetricSpace& ms, const Form& b) {
  if (b.dim() != ms.dim()) throw Error("star: form does not live on the space");
  std::size_t n = ms.dim(), p = b.degree();
  Form result(n, n - p);
  // alpha ^ star(beta) = <alpha,beta> vol, tested against alpha = e^I.
  for (const auto& idx : increasing_tuples(n, p)) {
    Form ei(n, p);
    ei.add_term(idx, Scalar(1));
    Scalar ip = inner(ms, ei, b);
    if (ip.is_zero()) continue;
    // Complement of idx and the sign of (idx, complement) as a permutation.
    IndexTuple comp;
    std::vector<bool> used(n, false);
    for (auto i : idx) used[i] = true;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i]) comp.push_back(static_cast<std::uint8_t>(i));
    IndexTuple whole = idx;
    whole.insert(whole.end(), comp.begin(), comp.end());
    int sigma = sort_sign(whole);
    result.add_term(comp, Scalar(sigma) * ms.vol_coeff() * ip);
  }
  return result;
}

Form pullback(const Form& f, const Mat& l) {
  if (l.rows() != f.dim()) throw Error("pullback: map shape mismatch");
  std::size_t src = l.cols(), k = f.degree();
  Form r(src, k);
  // (pullback f) coefficients: sum over target tuples of f-coefficient times
  // the minor determinant of L.
  for (const auto& srcidx : increasing_tuples(src, k)) {
    Scalar c;
    for (const auto& [tgtidx, v] : f.terms()) {
      Mat minor(k, k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < k; ++s)
          minor(r, s) = l(tgtidx[r], srcidx[s]);
      c += v * det(minor);
    }
    if (!c.is_zero()) r.add_term(srcidx, c);
  }
  return r;
}

}  // namespace gg
