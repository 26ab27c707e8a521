#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "gg/b_omega.hpp"
#include "gg/form.hpp"
#include "gg/linalg.hpp"

namespace gg {

/// The octonion algebra in the orthonormal basis (1, i1, ..., i7) obtained
/// by doubling the quaternions: pairs (q1, q2) multiply as
///   (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)),
/// with units 1=(1,0), i1=(i,0), i2=(j,0), i3=(k,0), i4=(0,1), i5=(0,i),
/// i6=(0,j), i7=(0,k).  The product of two basis units is always a signed
/// basis unit; the full table is built once at construction and verified
/// (two-sided unit, unit squares, anticommutation of distinct imaginary
/// units).
class OctonionAlgebra {
 public:
  using Element = std::array<Scalar, 8>;

  OctonionAlgebra();

  /// e_a * e_b = sign * e_index for 0-based unit labels (0 is the unit 1).
  int table_sign(std::size_t a, std::size_t b) const { return sign_[a][b]; }
  std::size_t table_index(std::size_t a, std::size_t b) const {
    return index_[a][b];
  }

  static Element unit(std::size_t a);
  static Element conjugate(const Element& x);
  /// Euclidean inner product in which the basis is orthonormal.
  static Scalar inner(const Element& x, const Element& y);

  Element multiply(const Element& x, const Element& y) const;
  Element commutator(const Element& x, const Element& y) const;
  /// (xy)z - x(yz); alternating in its three arguments.
  Element associator(const Element& x, const Element& y,
                     const Element& z) const;

 private:
  int sign_[8][8];
  std::size_t index_[8][8];
};

/// The exceptional 3-form phi(x,y,z) = <x y, z> on the seven imaginary
/// units together with the 4-form psi(x,y,z,w) = 1/2 <[x,y,z], w> built
/// from the associator, and the oriented Euclidean 7-space on which
/// psi == star(phi) holds exactly.  (In the doubling order of the units the
/// frame is negatively oriented for that identity, so the space carries
/// vol = -e^{1..7}.)
struct G2Forms {
  MetricSpace space;
  Form phi;  // degree 3
  Form psi;  // degree 4
};
G2Forms g2_forms();

/// Euclidean R^8 in the basis (unit direction, seven imaginary units),
/// oriented compatibly with g2_forms().
MetricSpace spin7_space();

/// The 4-form e^0 ^ phi + psi on spin7_space().
Form spin7_form();

/// Three anticommuting orthogonal complex structures on R^{4m}: blockwise
/// right multiplication by the quaternion units i and j, and j3 = j1 j2.
/// Coordinates are grouped (1, i, j, k) per quaternionic block.
struct QuaternionTriple {
  Mat j1, j2, j3;
};
QuaternionTriple quaternion_triple(std::size_t m);

/// omega(X, Y) = <J X, Y> as a 2-form (J skew with respect to the
/// Euclidean metric).
Form two_form_of(const Mat& j);

/// Omega = sum_alpha omega_alpha ^ omega_alpha.
Form quaternionic_form(const QuaternionTriple& triple);
Form quaternionic_form(std::size_t m);

/// Kaehler form sum_i e^{2i-1} ^ e^{2i} on R^{2m}, and its square (m >= 2).
Form kaehler_form(std::size_t m);
Form kaehler_form_sq(std::size_t m);

/// Basis {E_ij - E_ji : i < j} of the antisymmetric n x n matrices.
std::vector<Mat> so_n_basis(std::size_t n);

/// Realification of the anti-Hermitian 2x2 matrices i*I, i*sigma_1,
/// i*sigma_2, i*sigma_3 acting on C^2 = R^4 with z_k = x_{2k-1} + i x_{2k}.
/// The first element is the complex structure of kaehler_form(2).
std::vector<Mat> u2_so4_basis();

/// B_{st} = tr(L_s L_t).
Mat trace_form(const std::vector<Mat>& basis);

/// The alternation sum_{s,t} (B^{-1})_{st} omega_{L_s} ^ omega_{L_t} of an
/// invariant bilinear form B on a Lie algebra of antisymmetric matrices,
/// where omega_L(X,Y) = <L X, Y>.  Throws Error when the basis is empty or
/// not closed under commutators, or when B is not symmetric/invertible.
Form kostant_form(const std::vector<Mat>& lie_basis, const Mat& b);

/// Sorted multi-indices over {1,2} of length m, ascending
/// (m=2: 11, 12, 22), indexing the basis h_A of the m-th symmetric power.
std::vector<std::vector<int>> sym_multi_indices(std::size_t m);

/// Number of distinct orderings of a sorted multi-index.
std::size_t multi_index_multiplicity(const std::vector<int>& idx);

/// Gram matrix of the bilinear form induced on the m-th symmetric power of
/// the rank-2 symplectic space (epsilon_{12} = 1), normalized so that m=1
/// returns epsilon itself:
///   w(h_A, h_B) = (1/m!) sum_{tau in S_m} prod_i eps(alpha_i, beta_tau(i)).
/// Antisymmetric for odd m, symmetric for even m.
Mat omega_h_power(std::size_t m);

/// Full contraction w^{AB} w_{AB} with w^{AB} the matrix inverse of
/// omega_h_power(m) in the h_A basis.  Evaluates to -(m+1) for odd m and
/// +(m+1) for even m (the inverse of a symmetric form can never contract
/// to a negative multiple of the dimension).
Scalar omega_h_contraction(std::size_t m);

/// Standard symplectic form on even rank n: consecutive 2x2 epsilon blocks.
Mat standard_omega_e(std::size_t n);

/// The invariant 4-form
///   Omega = sum w_ab w_cd w_AC w_BD e^{aA} ^ e^{bB} ^ e^{cC} ^ e^{dD}
/// on the model space of dimension rank(omega_e) * (m+1), m odd, with
/// w_AB = omega_h_power(m).  Basis index of the pair (a, A) is
/// a*(m+1) + A (0-based, grouped by the first factor).
Form spin_m_form(std::size_t m, const Mat& omega_e);

/// Even-m variant with a symmetric invertible gamma_e in place of omega_e.
Form spin_m_form_even(std::size_t m, const Mat& gamma_e);

/// The metric omega_e (x) omega_h_power(m) on the model space; symmetric
/// for odd m.
MetricSpace spin_m_space(std::size_t m, const Mat& omega_e);

/// The 2-form with components S_ab w_AB on the model space (S symmetric,
/// m odd); these span the eigenspace appearing in the contraction identity
/// B_Omega(S w) = lambda * (S w).
Form sym_omega_two_form(std::size_t m, const Mat& s);

/// Torsion-type tensor T^{c gamma}_{(a alpha)(b beta)} on a model E (x) H
/// with rank(E) = p and rank(H) = 2, antisymmetric under exchange of the
/// two lower index pairs.  All indices 0-based; gamma, alpha, beta < 2.
class TorsionTensor {
 public:
  explicit TorsionTensor(std::size_t rank_e);

  std::size_t rank_e() const { return p_; }

  Scalar get(std::size_t c, std::size_t gamma, std::size_t a,
             std::size_t alpha, std::size_t b, std::size_t beta) const;
  /// Sets the entry and its pair-exchange mirror (with opposite sign).
  void set(std::size_t c, std::size_t gamma, std::size_t a, std::size_t alpha,
           std::size_t b, std::size_t beta, const Scalar& v);
  /// Adds to the entry and subtracts from the mirror.
  void add(std::size_t c, std::size_t gamma, std::size_t a, std::size_t alpha,
           std::size_t b, std::size_t beta, const Scalar& v);

  bool is_zero() const;
  friend bool operator==(const TorsionTensor& s, const TorsionTensor& t);
  friend bool operator!=(const TorsionTensor& s, const TorsionTensor& t) {
    return !(s == t);
  }

 private:
  std::size_t idx(std::size_t c, std::size_t gamma, std::size_t a,
                  std::size_t alpha, std::size_t b, std::size_t beta) const;
  std::size_t p_;
  std::vector<Scalar> v_;
};

/// Component of T in the E-antisymmetric, fully H-symmetric summand:
/// take the H-symmetric part of the lower pairs (automatically
/// E-antisymmetric), lower the upper H index with epsilon, symmetrize the
/// three H indices (this removes the H-trace part), and embed back.
/// Idempotent; kernel contains every E-symmetric torsion.
TorsionTensor admissibility_projection(const TorsionTensor& t);

/// True iff admissibility_projection(t) vanishes.
bool is_admissible(const TorsionTensor& t);

/// T^{c gamma}_{(a alpha)(b beta)} = s[c][gamma](a, b) * eps(alpha, beta)
/// with each s[c][gamma] symmetric: an E-symmetric torsion (always
/// admissible).
TorsionTensor torsion_from_e_symmetric(
    const std::vector<std::array<Mat, 2>>& s);

/// T^{c gamma}_{(a alpha)(b beta)} = b[c](a, b) * s^gamma_{alpha beta} with
/// each b[c] antisymmetric and s the fully symmetric H 3-tensor given by its
/// four components (s_111, s_112, s_122, s_222), the upper index raised with
/// epsilon.  Lies in the image of admissibility_projection.
TorsionTensor torsion_from_h_symmetric(const std::vector<Mat>& b,
                                       const std::array<Scalar, 4>& s);

}  // namespace gg
