#include "gg/b_omega.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

namespace gg {

Form b_omega_def(const MetricSpace& ms, const Form& omega4, const Form& w) {
  return star(ms, wedge(star(ms, omega4), w));
}

Form b_omega_contract(const MetricSpace& ms, const Form& omega4,
                      const Form& w) {
  if (omega4.degree() != 4 || w.degree() != 2)
    throw Error("b_omega_contract expects a 4-form and a 2-form");
  std::size_t n = ms.dim();
  const Mat& gi = ms.gram_inv();
  Form result(n, 2);

  // All 24 slot assignments of a stored 4-tuple to (i,j,k,l).
  static const std::array<std::array<int, 4>, 24> perms = [] {
    std::array<std::array<int, 4>, 24> p{};
    std::array<int, 4> v{0, 1, 2, 3};
    int t = 0;
    do {
      p[t++] = v;
    } while (std::next_permutation(v.begin(), v.end()));
    return p;
  }();
  auto perm_sign = [](const std::array<int, 4>& p) {
    int s = 1;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (p[a] > p[b]) s = -s;
    return s;
  };

  const Scalar quarter_factorial_inv(1, 24);
  const Scalar half(1, 2);
  // The double Hodge star in the defining expression contributes a factor of
  // vol_coeff^2 = |det g|, while the raw index contraction below produces
  // det g.  Their ratio (+1 for definite metrics, -1 for e.g. Lorentz
  // signature) keeps this closed formula equal to b_omega_def for every
  // admissible metric.
  const Scalar factor =
      Scalar(12) * ms.vol_coeff() * ms.vol_coeff() * ms.det_gram().inverse();

  for (const auto& [oi, oc] : omega4.terms()) {
    // Fully antisymmetric component at the permuted tuple: sign * oc / 24.
    for (const auto& p : perms) {
      int sign = perm_sign(p);
      std::uint8_t i = oi[p[0]], j = oi[p[1]], k = oi[p[2]], l = oi[p[3]];
      Scalar omega_comp = Scalar(sign) * oc * quarter_factorial_inv;
      // sum over the 2-form: w_{i'j'} = +-wc/2 at the two orderings
      Scalar contracted;
      for (const auto& [wi, wc] : w.terms()) {
        std::uint8_t i1 = wi[0], j1 = wi[1];
        Scalar comp = wc * half;
        contracted += comp * (gi(i, i1) * gi(j, j1) - gi(i, j1) * gi(j, i1));
      }
      if (contracted.is_zero()) continue;
      result.add_term(IndexTuple{k, l}, factor * omega_comp * contracted);
    }
  }
  return result;
}

Mat b_omega_matrix(const MetricSpace& ms, const Form& omega4) {
  std::size_t n = ms.dim();
  auto pairs = increasing_tuples(n, 2);
  Mat b(pairs.size(), pairs.size());
  for (std::size_t col = 0; col < pairs.size(); ++col) {
    Form e(n, 2);
    e.add_term(pairs[col], Scalar(1));
    Form img = b_omega_contract(ms, omega4, e);
    for (std::size_t row = 0; row < pairs.size(); ++row)
      b(row, col) = img.coeff(pairs[row]);
  }
  return b;
}

Mat lambda2_gram(const MetricSpace& ms) {
  std::size_t n = ms.dim();
  auto pairs = increasing_tuples(n, 2);
  Mat g(pairs.size(), pairs.size());
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    Form ea(n, 2);
    ea.add_term(pairs[a], Scalar(1));
    for (std::size_t b = a; b < pairs.size(); ++b) {
      Form eb(n, 2);
      eb.add_term(pairs[b], Scalar(1));
      Scalar ip = inner(ms, ea, eb);
      g(a, b) = ip;
      g(b, a) = ip;
    }
  }
  return g;
}

namespace {

// Minimal polynomial of b via Krylov iteration on matrix powers; returned as
// monic coefficient vector c[0] + c[1] t + ... + t^d.
std::vector<Scalar> minimal_poly(const Mat& b, std::size_t max_degree) {
  std::size_t n = b.rows();
  std::vector<Mat> powers;
  powers.push_back(Mat::identity(n));
  for (std::size_t d = 1; d <= max_degree; ++d) {
    powers.push_back(b * powers.back());
    // Try to express powers[d] as a combination of lower powers: build the
    // n^2 x d system.
    Mat sys(n * n, d);
    std::vector<Scalar> rhs(n * n);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          sys(r * n + c, k) = powers[k](r, c);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) rhs[r * n + c] = powers[d](r, c);
    std::vector<Scalar> x;
    if (solve(sys, rhs, &x)) {
      // Verify (solve() zero-fills free variables; recheck exactly).
      Mat acc(n, n);
      for (std::size_t k = 0; k < d; ++k) acc = acc + x[k] * powers[k];
      if (acc == powers[d]) {
        std::vector<Scalar> mp(d + 1);
        for (std::size_t k = 0; k < d; ++k) mp[k] = -x[k];
        mp[d] = Scalar(1);
        return mp;
      }
    }
  }
  return {};
}

// All rational roots of a polynomial with rational real coefficients,
// found by the rational root theorem after clearing denominators.  Returns
// nullopt if, after removing the rational roots, a nonconstant factor
// remains.
std::optional<std::vector<Scalar>> rational_roots(std::vector<Scalar> poly) {
  // Only real rational coefficients are handled.
  for (const auto& c : poly)
    if (!c.is_real()) return std::nullopt;
  std::vector<Scalar> roots;
  // Divide out factors of t while the constant term is zero.
  while (poly.size() > 1 && poly.front().is_zero()) {
    roots.push_back(Scalar(0));
    poly.erase(poly.begin());
  }
  while (poly.size() > 1) {
    // Clear denominators to get integer coefficients.
    mpz_class lcm_den = 1;
    for (const auto& c : poly)
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
              c.re().get_den().get_mpz_t());
    std::vector<mpz_class> ic;
    ic.reserve(poly.size());
    for (const auto& c : poly) {
      mpq_class scaled = c.re() * mpq_class(lcm_den);
      scaled.canonicalize();
      ic.push_back(scaled.get_num());
    }
    mpz_class a0 = ic.front(), an = ic.back();
    // Enumerate divisors of |a0| and |an|; the candidates are +-p/q.  For
    // the matrices in this library the trailing/leading coefficients stay
    // small, so naive divisor enumeration is fine — bail out when not.
    auto divisors = [](mpz_class v) -> std::optional<std::vector<mpz_class>> {
      v = abs(v);
      if (v > 100000000) return std::nullopt;
      std::vector<mpz_class> ds;
      for (mpz_class d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
          ds.push_back(d);
          ds.push_back(v / d);
        }
      }
      return ds;
    };
    auto dp = divisors(a0), dq = divisors(an);
    if (!dp || !dq) return std::nullopt;
    bool found = false;
    for (const auto& p : *dp) {
      for (const auto& q : *dq) {
        for (int sign : {1, -1}) {
          mpq_class cand(sign * p, q);
          cand.canonicalize();
          // Horner evaluation.
          mpq_class acc = 0;
          for (std::size_t k = poly.size(); k-- > 0;)
            acc = acc * cand + poly[k].re();
          if (acc == 0) {
            roots.push_back(Scalar(mpq_class(cand)));
            // Deflate: poly / (t - cand).
            std::vector<Scalar> quot(poly.size() - 1);
            Scalar carry = poly.back();
            for (std::size_t k = poly.size() - 1; k-- > 0;) {
              quot[k] = carry;
              carry = poly[k] + Scalar(mpq_class(cand)) * carry;
            }
            poly = std::move(quot);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
  return roots;
}

}  // namespace

std::optional<Spectrum> exact_spectrum(const Mat& b) {
  std::vector<Scalar> mp = minimal_poly(b, std::min<std::size_t>(b.rows(), 8));
  if (mp.empty()) return std::nullopt;
  auto roots = rational_roots(mp);
  if (!roots) return std::nullopt;
  // Distinct rational roots of the minimal polynomial: if their count equals
  // deg(mp), B is diagonalizable with exactly these eigenvalues.
  std::vector<Scalar> distinct;
  for (const auto& r : *roots)
    if (std::find(distinct.begin(), distinct.end(), r) == distinct.end())
      distinct.push_back(r);
  if (distinct.size() != mp.size() - 1) return std::nullopt;
  std::sort(distinct.begin(), distinct.end(),
            [](const Scalar& a, const Scalar& b) { return a.re() > b.re(); });
  Spectrum sp;
  sp.exact = true;
  std::size_t total = 0;
  for (const auto& lam : distinct) {
    Mat shifted = b - lam * Mat::identity(b.rows());
    EigenCluster cl;
    cl.value = lam;
    cl.value_f = lam.re_double();
    cl.eigenbasis = nullspace(shifted);
    cl.multiplicity = cl.eigenbasis.size();
    total += cl.multiplicity;
    if (!lam.is_zero() && lam.is_real()) sp.appropriate = true;
    sp.clusters.push_back(std::move(cl));
  }
  if (total != b.rows()) return std::nullopt;
  return sp;
}

Spectrum float_spectrum(const Mat& b, const Mat* g2, double tol) {
  std::size_t n = b.rows();
  Eigen::MatrixXd bd(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& v = b(i, j);
      if (!v.is_real())
        throw Error("float_spectrum: matrix has nonreal entries");
      bd(i, j) = v.re_double();
    }
  Eigen::VectorXd evals;
  if (g2) {
    Eigen::MatrixXd gd(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gd(i, j) = (*g2)(i, j).re_double();
    Eigen::LLT<Eigen::MatrixXd> llt(gd);
    if (llt.info() != Eigen::Success)
      throw Error("float_spectrum: 2-form Gram matrix is not positive definite");
    Eigen::MatrixXd l = llt.matrixL();
    // S = L^T B L^{-T} is symmetric and similar to B.
    Eigen::MatrixXd s =
        l.transpose() * bd * l.transpose().inverse();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        0.5 * (s + s.transpose()));
    evals = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 *
                                                      (bd + bd.transpose()));
    evals = es.eigenvalues();
  }
  std::vector<double> v(evals.data(), evals.data() + evals.size());
  std::sort(v.begin(), v.end(), std::greater<double>());
  double scale = 0;
  for (double x : v) scale = std::max(scale, std::fabs(x));
  if (scale == 0) scale = 1;
  Spectrum sp;
  sp.exact = false;
  for (double x : v) {
    if (!sp.clusters.empty() &&
        std::fabs(sp.clusters.back().value_f - x) < tol * scale) {
      sp.clusters.back().multiplicity++;
      continue;
    }
    EigenCluster cl;
    cl.value_f = x;
    cl.multiplicity = 1;
    sp.clusters.push_back(cl);
  }
  for (const auto& cl : sp.clusters)
    if (std::fabs(cl.value_f) > tol * scale) sp.appropriate = true;
  return sp;
}

bool selfduality_check(const MetricSpace& ms, const Form& omega4,
                       const Form& f, const Scalar& lambda) {
  return b_omega_contract(ms, omega4, f) == lambda * f;
}

bool selfduality_check_tol(const MetricSpace& ms, const Form& omega4,
                           const Form& f, double lambda, double tol) {
  Form bf = b_omega_contract(ms, omega4, f);
  double max_f = 0, max_err = 0;
  auto pairs = increasing_tuples(ms.dim(), 2);
  for (const auto& idx : pairs) {
    double fv = f.coeff(idx).re_double();
    double bv = bf.coeff(idx).re_double();
    max_f = std::max(max_f, std::fabs(fv));
    max_err = std::max(max_err, std::fabs(bv - lambda * fv));
  }
  if (max_f == 0) return true;
  return max_err <= tol * std::max(1.0, max_f);
}

}  // namespace gg
