#include "gg/canonical_forms.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace gg {
namespace {

// Quaternion unit products: q_a q_b = qsign(a,b) * q_{qidx(a,b)} on the
// basis (1, i, j, k).
struct QuatTable {
  int sign[4][4];
  std::size_t idx[4][4];
  QuatTable() {
    // 1 is the unit.
    for (std::size_t a = 0; a < 4; ++a) {
      sign[0][a] = sign[a][0] = 1;
      idx[0][a] = idx[a][0] = a;
    }
    for (std::size_t a = 1; a < 4; ++a) {
      sign[a][a] = -1;
      idx[a][a] = 0;
    }
    auto put = [&](std::size_t a, std::size_t b, std::size_t c) {
      sign[a][b] = 1;
      idx[a][b] = c;
      sign[b][a] = -1;
      idx[b][a] = c;
    };
    put(1, 2, 3);  // i j = k
    put(2, 3, 1);  // j k = i
    put(3, 1, 2);  // k i = j
  }
};

const QuatTable& quat_table() {
  static const QuatTable t;
  return t;
}

int quat_conj_sign(std::size_t a) { return a == 0 ? 1 : -1; }

Scalar eps12(int a, int b) {
  // epsilon_{12} = 1 on 1-based labels.
  if (a == 1 && b == 2) return Scalar(1);
  if (a == 2 && b == 1) return Scalar(-1);
  return Scalar(0);
}

void require(bool ok, const char* msg) {
  if (!ok) throw Error(msg);
}

}  // namespace

OctonionAlgebra::OctonionAlgebra() {
  const QuatTable& q = quat_table();
  // Units are pairs of quaternion units: a < 4 is (q_a, 0), a >= 4 is
  // (0, q_{a-4}).  The doubling formula applied to such pairs:
  //   (q_p, 0)(q_r, 0) = (q_p q_r, 0)
  //   (q_p, 0)(0, q_s) = (0, q_s q_p)
  //   (0, q_q)(q_r, 0) = (0, q_q conj(q_r))
  //   (0, q_q)(0, q_s) = (-conj(q_s) q_q, 0)
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      const bool a2 = a >= 4, b2 = b >= 4;
      const std::size_t p = a2 ? a - 4 : a, r = b2 ? b - 4 : b;
      int s;
      std::size_t i;
      if (!a2 && !b2) {
        s = q.sign[p][r];
        i = q.idx[p][r];
      } else if (!a2 && b2) {
        s = q.sign[r][p];
        i = q.idx[r][p] + 4;
      } else if (a2 && !b2) {
        s = quat_conj_sign(r) * q.sign[p][r];
        i = q.idx[p][r] + 4;
      } else {
        s = -quat_conj_sign(r) * q.sign[r][p];
        i = q.idx[r][p];
      }
      sign_[a][b] = s;
      index_[a][b] = i;
    }
  }
  // Structural checks: two-sided unit, squares of imaginary units,
  // anticommutation of distinct imaginary units with imaginary product.
  for (std::size_t a = 0; a < 8; ++a) {
    require(sign_[0][a] == 1 && index_[0][a] == a, "octonion unit broken");
    require(sign_[a][0] == 1 && index_[a][0] == a, "octonion unit broken");
  }
  for (std::size_t a = 1; a < 8; ++a) {
    require(sign_[a][a] == -1 && index_[a][a] == 0,
            "octonion unit square broken");
    for (std::size_t b = 1; b < 8; ++b) {
      if (a == b) continue;
      require(index_[a][b] == index_[b][a] && sign_[a][b] == -sign_[b][a],
              "octonion anticommutation broken");
      require(index_[a][b] != 0, "octonion product of distinct units broken");
    }
  }
}

OctonionAlgebra::Element OctonionAlgebra::unit(std::size_t a) {
  Element e{};
  e[a] = Scalar(1);
  return e;
}

OctonionAlgebra::Element OctonionAlgebra::conjugate(const Element& x) {
  Element r = x;
  for (std::size_t a = 1; a < 8; ++a) r[a] = -r[a];
  return r;
}

Scalar OctonionAlgebra::inner(const Element& x, const Element& y) {
  Scalar s(0);
  for (std::size_t a = 0; a < 8; ++a) s = s + x[a] * y[a];
  return s;
}

OctonionAlgebra::Element OctonionAlgebra::multiply(const Element& x,
                                                   const Element& y) const {
  Element r{};
  for (std::size_t a = 0; a < 8; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < 8; ++b) {
      if (y[b].is_zero()) continue;
      Scalar c = x[a] * y[b];
      if (sign_[a][b] < 0) c = -c;
      r[index_[a][b]] = r[index_[a][b]] + c;
    }
  }
  return r;
}

OctonionAlgebra::Element OctonionAlgebra::commutator(const Element& x,
                                                     const Element& y) const {
  Element xy = multiply(x, y), yx = multiply(y, x);
  for (std::size_t a = 0; a < 8; ++a) xy[a] = xy[a] - yx[a];
  return xy;
}

OctonionAlgebra::Element OctonionAlgebra::associator(const Element& x,
                                                     const Element& y,
                                                     const Element& z) const {
  Element l = multiply(multiply(x, y), z);
  Element r = multiply(x, multiply(y, z));
  for (std::size_t a = 0; a < 8; ++a) l[a] = l[a] - r[a];
  return l;
}

G2Forms g2_forms() {
  OctonionAlgebra oct;
  Form phi(7, 3);
  for (std::size_t i = 1; i <= 7; ++i) {
    for (std::size_t j = i + 1; j <= 7; ++j) {
      for (std::size_t k = j + 1; k <= 7; ++k) {
        // phi(e_i, e_j, e_k) = <e_i e_j, e_k>
        if (oct.table_index(i, j) == k) {
          phi.add_term({static_cast<std::uint8_t>(i - 1),
                        static_cast<std::uint8_t>(j - 1),
                        static_cast<std::uint8_t>(k - 1)},
                       Scalar(oct.table_sign(i, j)));
        }
      }
    }
  }
  Form psi(7, 4);
  const Scalar half(1, 2);
  for (std::size_t i = 1; i <= 7; ++i) {
    for (std::size_t j = i + 1; j <= 7; ++j) {
      for (std::size_t k = j + 1; k <= 7; ++k) {
        OctonionAlgebra::Element assoc = oct.associator(
            OctonionAlgebra::unit(i), OctonionAlgebra::unit(j),
            OctonionAlgebra::unit(k));
        for (std::size_t l = k + 1; l <= 7; ++l) {
          Scalar c = half * assoc[l];
          if (!c.is_zero()) {
            psi.add_term({static_cast<std::uint8_t>(i - 1),
                          static_cast<std::uint8_t>(j - 1),
                          static_cast<std::uint8_t>(k - 1),
                          static_cast<std::uint8_t>(l - 1)},
                         c);
          }
        }
      }
    }
  }
  // The doubling order of the imaginary units is a negatively oriented
  // frame for the orientation in which psi == star(phi); fix the volume
  // form accordingly.
  MetricSpace space(Mat::identity(7), Scalar(-1));
  return G2Forms{space, phi, psi};
}

MetricSpace spin7_space() {
  // Unit direction followed by the seven imaginary units; orientation
  // matches g2_forms().
  return MetricSpace(Mat::identity(8), Scalar(-1));
}

Form spin7_form() {
  G2Forms g2 = g2_forms();
  Form omega(8, 4);
  for (const auto& [idx, c] : g2.phi.terms()) {
    omega.add_term({0, static_cast<std::uint8_t>(idx[0] + 1),
                    static_cast<std::uint8_t>(idx[1] + 1),
                    static_cast<std::uint8_t>(idx[2] + 1)},
                   c);
  }
  for (const auto& [idx, c] : g2.psi.terms()) {
    omega.add_term({static_cast<std::uint8_t>(idx[0] + 1),
                    static_cast<std::uint8_t>(idx[1] + 1),
                    static_cast<std::uint8_t>(idx[2] + 1),
                    static_cast<std::uint8_t>(idx[3] + 1)},
                   c);
  }
  return omega;
}

namespace {

// Right multiplication by the quaternion unit q_u on the basis (1, i, j, k):
// column a holds the coordinates of q_a q_u.
Mat right_mult_block(std::size_t u) {
  const QuatTable& q = quat_table();
  Mat r(4, 4);
  for (std::size_t a = 0; a < 4; ++a) {
    r(q.idx[a][u], a) = Scalar(q.sign[a][u]);
  }
  return r;
}

Mat block_diag(const Mat& block, std::size_t copies) {
  const std::size_t n = block.rows();
  Mat r(n * copies, n * copies);
  for (std::size_t c = 0; c < copies; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        r(c * n + i, c * n + j) = block(i, j);
      }
    }
  }
  return r;
}

}  // namespace

QuaternionTriple quaternion_triple(std::size_t m) {
  require(m >= 1, "quaternion_triple needs m >= 1");
  QuaternionTriple t;
  t.j1 = block_diag(right_mult_block(1), m);
  t.j2 = block_diag(right_mult_block(2), m);
  t.j3 = t.j1 * t.j2;
  const Mat id = Mat::identity(4 * m);
  const Scalar minus1(-1);
  require(t.j1 * t.j1 == minus1 * id && t.j2 * t.j2 == minus1 * id &&
              t.j3 * t.j3 == minus1 * id,
          "complex structures do not square to -1");
  require(t.j2 * t.j1 == minus1 * t.j3, "triple does not anticommute");
  require(t.j1.transpose() == minus1 * t.j1 &&
              t.j2.transpose() == minus1 * t.j2,
          "complex structures are not skew");
  return t;
}

Form two_form_of(const Mat& j) {
  const std::size_t n = j.rows();
  require(j.cols() == n, "two_form_of needs a square matrix");
  Form w(n, 2);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      // w(e_a, e_b) = <J e_a, e_b> = J_{ba}
      const Scalar& c = j(b, a);
      if (!c.is_zero()) {
        w.add_term(
            {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)}, c);
      }
    }
  }
  return w;
}

Form quaternionic_form(const QuaternionTriple& triple) {
  Form w1 = two_form_of(triple.j1);
  Form w2 = two_form_of(triple.j2);
  Form w3 = two_form_of(triple.j3);
  return wedge(w1, w1) + wedge(w2, w2) + wedge(w3, w3);
}

Form quaternionic_form(std::size_t m) {
  return quaternionic_form(quaternion_triple(m));
}

Form kaehler_form(std::size_t m) {
  require(m >= 1, "kaehler_form needs m >= 1");
  Form w(2 * m, 2);
  for (std::size_t i = 0; i < m; ++i) {
    w.add_term({static_cast<std::uint8_t>(2 * i),
                static_cast<std::uint8_t>(2 * i + 1)},
               Scalar(1));
  }
  return w;
}

Form kaehler_form_sq(std::size_t m) {
  require(m >= 2, "kaehler_form_sq needs m >= 2");
  Form w = kaehler_form(m);
  return wedge(w, w);
}

std::vector<Mat> so_n_basis(std::size_t n) {
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Mat l(n, n);
      l(i, j) = Scalar(1);
      l(j, i) = Scalar(-1);
      basis.push_back(l);
    }
  }
  return basis;
}

std::vector<Mat> u2_so4_basis() {
  // Realifications of i*I, i*sigma_1, i*sigma_2, i*sigma_3 on
  // z_1 = x_1 + i x_2, z_2 = x_3 + i x_4.
  auto from_rows = [](std::initializer_list<std::initializer_list<int>> rows) {
    Mat m(4, 4);
    std::size_t i = 0;
    for (const auto& row : rows) {
      std::size_t j = 0;
      for (int v : row) m(i, j++) = Scalar(v);
      ++i;
    }
    return m;
  };
  std::vector<Mat> basis;
  basis.push_back(from_rows({{0, -1, 0, 0},
                             {1, 0, 0, 0},
                             {0, 0, 0, -1},
                             {0, 0, 1, 0}}));  // i I (the complex structure)
  basis.push_back(from_rows({{0, 0, 0, -1},
                             {0, 0, 1, 0},
                             {0, -1, 0, 0},
                             {1, 0, 0, 0}}));  // i sigma_1
  basis.push_back(from_rows({{0, 0, 1, 0},
                             {0, 0, 0, 1},
                             {-1, 0, 0, 0},
                             {0, -1, 0, 0}}));  // i sigma_2
  basis.push_back(from_rows({{0, -1, 0, 0},
                             {1, 0, 0, 0},
                             {0, 0, 0, 1},
                             {0, 0, -1, 0}}));  // i sigma_3
  return basis;
}

Mat trace_form(const std::vector<Mat>& basis) {
  const std::size_t k = basis.size();
  Mat b(k, k);
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = 0; t < k; ++t) {
      b(s, t) = (basis[s] * basis[t]).trace();
    }
  }
  return b;
}

Form kostant_form(const std::vector<Mat>& lie_basis, const Mat& b) {
  require(!lie_basis.empty(), "empty Lie algebra basis");
  const std::size_t n = lie_basis.front().rows();
  const std::size_t k = lie_basis.size();
  for (const Mat& l : lie_basis) {
    require(l.rows() == n && l.cols() == n, "basis matrices must match");
    require(l.transpose() == Scalar(-1) * l,
            "basis matrices must be antisymmetric");
  }
  require(b.rows() == k && b.cols() == k && b.is_symmetric(),
          "bilinear form must be symmetric of matching size");
  Mat binv = inverse(b);  // throws SingularMatrixError when degenerate

  // Closure under the commutator: [L_s, L_t] must lie in the span.
  Mat span(n * n, k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        span(i * n + j, r) = lie_basis[r](i, j);
      }
    }
  }
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = s + 1; t < k; ++t) {
      Mat com = lie_basis[s] * lie_basis[t] - lie_basis[t] * lie_basis[s];
      std::vector<Scalar> rhs(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rhs[i * n + j] = com(i, j);
      }
      std::vector<Scalar> coeffs;
      if (!solve(span, rhs, &coeffs)) {
        throw Error("basis is not closed under the commutator");
      }
    }
  }

  std::vector<Form> omegas;
  omegas.reserve(k);
  for (const Mat& l : lie_basis) omegas.push_back(two_form_of(l));
  Form result(n, 4);
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = 0; t < k; ++t) {
      if (binv(s, t).is_zero()) continue;
      result = result + binv(s, t) * wedge(omegas[s], omegas[t]);
    }
  }
  return result;
}

std::vector<std::vector<int>> sym_multi_indices(std::size_t m) {
  std::vector<std::vector<int>> all;
  for (std::size_t twos = 0; twos <= m; ++twos) {
    std::vector<int> idx(m, 1);
    for (std::size_t i = m - twos; i < m; ++i) idx[i] = 2;
    all.push_back(idx);
  }
  return all;
}

std::size_t multi_index_multiplicity(const std::vector<int>& idx) {
  const std::size_t m = idx.size();
  std::size_t twos = 0;
  for (int v : idx) {
    if (v == 2) ++twos;
  }
  // binomial(m, twos)
  std::size_t r = 1;
  for (std::size_t i = 1; i <= twos; ++i) r = r * (m - twos + i) / i;
  return r;
}

Mat omega_h_power(std::size_t m) {
  require(m >= 1, "omega_h_power needs m >= 1");
  const auto basis = sym_multi_indices(m);
  Scalar inv_fact(1);
  for (std::size_t i = 2; i <= m; ++i) inv_fact = inv_fact / Scalar(long(i));
  Mat w(m + 1, m + 1);
  std::vector<std::size_t> perm(m);
  for (std::size_t a = 0; a <= m; ++a) {
    for (std::size_t b = 0; b <= m; ++b) {
      std::iota(perm.begin(), perm.end(), 0);
      Scalar sum(0);
      do {
        Scalar prod(1);
        for (std::size_t i = 0; i < m && !prod.is_zero(); ++i) {
          prod = prod * eps12(basis[a][i], basis[b][perm[i]]);
        }
        sum = sum + prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
      w(a, b) = inv_fact * sum;
    }
  }
  return w;
}

Scalar omega_h_contraction(std::size_t m) {
  Mat w = omega_h_power(m);
  Mat winv = inverse(w);
  Scalar c(0);
  for (std::size_t a = 0; a <= m; ++a) {
    for (std::size_t b = 0; b <= m; ++b) c = c + winv(a, b) * w(a, b);
  }
  return c;
}

Mat standard_omega_e(std::size_t n) {
  require(n >= 2 && n % 2 == 0, "standard_omega_e needs even rank");
  Mat w(n, n);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    w(i, i + 1) = Scalar(1);
    w(i + 1, i) = Scalar(-1);
  }
  return w;
}

namespace {

void check_omega_e(const Mat& w) {
  require(w.rows() == w.cols() && w.rows() >= 2,
          "omega_e must be square of rank >= 2");
  require(w.transpose() == Scalar(-1) * w, "omega_e must be antisymmetric");
  inverse(w);  // throws when degenerate
}

Form spin_form_impl(std::size_t m, const Mat& we) {
  const std::size_t p = we.rows();
  const Mat wh = omega_h_power(m);
  const std::size_t k = m + 1;
  const std::size_t dim = p * k;
  require(dim <= 255, "model dimension too large");
  Form omega(dim, 4);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      if (we(a, b).is_zero()) continue;
      for (std::size_t c = 0; c < p; ++c) {
        for (std::size_t d = 0; d < p; ++d) {
          if (we(c, d).is_zero()) continue;
          const Scalar wee = we(a, b) * we(c, d);
          for (std::size_t A = 0; A < k; ++A) {
            for (std::size_t C = 0; C < k; ++C) {
              if (wh(A, C).is_zero()) continue;
              for (std::size_t B = 0; B < k; ++B) {
                for (std::size_t D = 0; D < k; ++D) {
                  if (wh(B, D).is_zero()) continue;
                  Scalar coeff = wee * wh(A, C) * wh(B, D);
                  omega.add_term({static_cast<std::uint8_t>(a * k + A),
                                  static_cast<std::uint8_t>(b * k + B),
                                  static_cast<std::uint8_t>(c * k + C),
                                  static_cast<std::uint8_t>(d * k + D)},
                                 coeff);
                }
              }
            }
          }
        }
      }
    }
  }
  return omega;
}

}  // namespace

Form spin_m_form(std::size_t m, const Mat& omega_e) {
  require(m % 2 == 1, "spin_m_form needs odd m");
  check_omega_e(omega_e);
  return spin_form_impl(m, omega_e);
}

Form spin_m_form_even(std::size_t m, const Mat& gamma_e) {
  require(m >= 2 && m % 2 == 0, "spin_m_form_even needs even m");
  require(gamma_e.rows() == gamma_e.cols() && gamma_e.is_symmetric(),
          "gamma_e must be symmetric");
  inverse(gamma_e);  // throws when degenerate
  return spin_form_impl(m, gamma_e);
}

MetricSpace spin_m_space(std::size_t m, const Mat& omega_e) {
  require(m % 2 == 1, "spin_m_space needs odd m");
  check_omega_e(omega_e);
  const Mat wh = omega_h_power(m);
  const std::size_t p = omega_e.rows();
  const std::size_t k = m + 1;
  Mat g(p * k, p * k);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      for (std::size_t A = 0; A < k; ++A) {
        for (std::size_t B = 0; B < k; ++B) {
          g(a * k + A, b * k + B) = omega_e(a, b) * wh(A, B);
        }
      }
    }
  }
  return MetricSpace(std::move(g));
}

Form sym_omega_two_form(std::size_t m, const Mat& s) {
  require(m % 2 == 1, "sym_omega_two_form needs odd m");
  require(s.rows() == s.cols() && s.is_symmetric(), "s must be symmetric");
  const Mat wh = omega_h_power(m);
  const std::size_t p = s.rows();
  const std::size_t k = m + 1;
  Form f(p * k, 2);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t A = 0; A < k; ++A) {
      const std::size_t i = a * k + A;
      for (std::size_t b = 0; b < p; ++b) {
        for (std::size_t B = 0; B < k; ++B) {
          const std::size_t j = b * k + B;
          if (j <= i) continue;
          Scalar c = s(a, b) * wh(A, B);
          if (!c.is_zero()) {
            f.add_term(
                {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)},
                c);
          }
        }
      }
    }
  }
  return f;
}

TorsionTensor::TorsionTensor(std::size_t rank_e)
    : p_(rank_e), v_(rank_e * 2 * rank_e * 2 * rank_e * 2) {
  require(rank_e >= 1, "torsion tensor needs rank >= 1");
}

std::size_t TorsionTensor::idx(std::size_t c, std::size_t gamma,
                               std::size_t a, std::size_t alpha,
                               std::size_t b, std::size_t beta) const {
  return ((((c * 2 + gamma) * p_ + a) * 2 + alpha) * p_ + b) * 2 + beta;
}

Scalar TorsionTensor::get(std::size_t c, std::size_t gamma, std::size_t a,
                          std::size_t alpha, std::size_t b,
                          std::size_t beta) const {
  return v_[idx(c, gamma, a, alpha, b, beta)];
}

void TorsionTensor::set(std::size_t c, std::size_t gamma, std::size_t a,
                        std::size_t alpha, std::size_t b, std::size_t beta,
                        const Scalar& v) {
  if (a == b && alpha == beta) {
    require(v.is_zero(), "diagonal torsion entry must vanish");
  }
  v_[idx(c, gamma, a, alpha, b, beta)] = v;
  v_[idx(c, gamma, b, beta, a, alpha)] = -v;
}

void TorsionTensor::add(std::size_t c, std::size_t gamma, std::size_t a,
                        std::size_t alpha, std::size_t b, std::size_t beta,
                        const Scalar& v) {
  set(c, gamma, a, alpha, b, beta, get(c, gamma, a, alpha, b, beta) + v);
}

bool TorsionTensor::is_zero() const {
  for (const Scalar& s : v_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

bool operator==(const TorsionTensor& s, const TorsionTensor& t) {
  return s.p_ == t.p_ && s.v_ == t.v_;
}

TorsionTensor admissibility_projection(const TorsionTensor& t) {
  const std::size_t p = t.rank_e();
  // eps and its inverse for lowering/raising the upper H index:
  // lowered_g' = sum_g v^g eps(g, g'), raised^g = sum_g' v_g' epsinv(g', g).
  const Scalar eps[2][2] = {{Scalar(0), Scalar(1)}, {Scalar(-1), Scalar(0)}};
  const Scalar epsinv[2][2] = {{Scalar(0), Scalar(-1)},
                               {Scalar(1), Scalar(0)}};
  const Scalar half(1, 2), sixth(1, 6);

  TorsionTensor out(p);
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = 0; b < p; ++b) {
        // H-symmetric part of the lower pairs, upper index lowered:
        // low[g'][al][be].
        Scalar low[2][2][2];
        for (std::size_t gp = 0; gp < 2; ++gp) {
          for (std::size_t al = 0; al < 2; ++al) {
            for (std::size_t be = 0; be < 2; ++be) {
              Scalar v(0);
              for (std::size_t g = 0; g < 2; ++g) {
                if (eps[g][gp].is_zero()) continue;
                Scalar sym = half * (t.get(c, g, a, al, b, be) +
                                     t.get(c, g, a, be, b, al));
                v = v + sym * eps[g][gp];
              }
              low[gp][al][be] = v;
            }
          }
        }
        // Fully symmetrize the three H indices.
        Scalar symm[2][2][2];
        for (std::size_t g = 0; g < 2; ++g) {
          for (std::size_t al = 0; al < 2; ++al) {
            for (std::size_t be = 0; be < 2; ++be) {
              symm[g][al][be] =
                  sixth * (low[g][al][be] + low[g][be][al] + low[al][g][be] +
                           low[al][be][g] + low[be][g][al] + low[be][al][g]);
            }
          }
        }
        // Raise the first H index again and write the upper triangle of
        // the pair index; the result is pair-antisymmetric by construction
        // (E-antisymmetric, H-symmetric), so the mirror write of set()
        // fills the rest consistently.
        for (std::size_t g = 0; g < 2; ++g) {
          for (std::size_t al = 0; al < 2; ++al) {
            for (std::size_t be = 0; be < 2; ++be) {
              if (a * 2 + al >= b * 2 + be) continue;
              Scalar v(0);
              for (std::size_t gp = 0; gp < 2; ++gp) {
                if (epsinv[gp][g].is_zero()) continue;
                v = v + symm[gp][al][be] * epsinv[gp][g];
              }
              out.set(c, g, a, al, b, be, v);
            }
          }
        }
      }
    }
  }
  return out;
}

bool is_admissible(const TorsionTensor& t) {
  return admissibility_projection(t).is_zero();
}

TorsionTensor torsion_from_e_symmetric(
    const std::vector<std::array<Mat, 2>>& s) {
  const std::size_t p = s.size();
  require(p >= 1, "torsion needs rank >= 1");
  for (const auto& pair : s) {
    for (const Mat& m : pair) {
      require(m.rows() == p && m.cols() == p && m.is_symmetric(),
              "E-symmetric torsion needs symmetric blocks");
    }
  }
  const Scalar eps[2][2] = {{Scalar(0), Scalar(1)}, {Scalar(-1), Scalar(0)}};
  TorsionTensor t(p);
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t g = 0; g < 2; ++g) {
      for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t al = 0; al < 2; ++al) {
          for (std::size_t b = 0; b < p; ++b) {
            for (std::size_t be = 0; be < 2; ++be) {
              if (a * 2 + al >= b * 2 + be) continue;
              Scalar v = s[c][g](a, b) * eps[al][be];
              if (!v.is_zero()) t.set(c, g, a, al, b, be, v);
            }
          }
        }
      }
    }
  }
  return t;
}

TorsionTensor torsion_from_h_symmetric(const std::vector<Mat>& b,
                                       const std::array<Scalar, 4>& s) {
  const std::size_t p = b.size();
  require(p >= 1, "torsion needs rank >= 1");
  for (const Mat& m : b) {
    require(m.rows() == p && m.cols() == p &&
                m.transpose() == Scalar(-1) * m,
            "H-symmetric torsion needs antisymmetric E blocks");
  }
  // Fully symmetric 3-tensor on H from its four independent components
  // (index values 0/1; component = s[number of 1s]).
  auto sym3 = [&s](std::size_t x, std::size_t y, std::size_t z) {
    return s[x + y + z];
  };
  const Scalar epsinv[2][2] = {{Scalar(0), Scalar(-1)},
                               {Scalar(1), Scalar(0)}};
  TorsionTensor t(p);
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t g = 0; g < 2; ++g) {
      for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t al = 0; al < 2; ++al) {
          for (std::size_t bb = 0; bb < p; ++bb) {
            for (std::size_t be = 0; be < 2; ++be) {
              if (a * 2 + al >= bb * 2 + be) continue;
              Scalar up(0);
              for (std::size_t gp = 0; gp < 2; ++gp) {
                if (epsinv[gp][g].is_zero()) continue;
                up = up + sym3(gp, al, be) * epsinv[gp][g];
              }
              Scalar v = b[c](a, bb) * up;
              if (!v.is_zero()) t.set(c, g, a, al, bb, be, v);
            }
          }
        }
      }
    }
  }
  return t;
}

}  // namespace gg
