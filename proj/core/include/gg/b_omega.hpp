#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gg/form.hpp"

namespace gg {

/// The endomorphism of 2-forms attached to a 4-form Omega,
///   B_Omega(w) = star(star(Omega) ^ w),
/// computed literally from the definition.
Form b_omega_def(const MetricSpace& ms, const Form& omega4, const Form& w);

/// The same endomorphism computed by index contraction,
///   B_Omega(w) = 12 g^{ii'} g^{jj'} Omega_{ijkl} w_{i'j'} e^k ^ e^l,
/// where Omega_{ijkl} and w_{ij} are the fully antisymmetric components
/// (a stored coefficient at an increasing tuple is 4! resp. 2! times the
/// component).  Agrees with b_omega_def for every metric signature.
Form b_omega_contract(const MetricSpace& ms, const Form& omega4,
                      const Form& w);

/// Matrix of B_Omega on the basis of increasing pairs (lexicographic).
Mat b_omega_matrix(const MetricSpace& ms, const Form& omega4);

/// One eigenvalue cluster of a B_Omega matrix.
struct EigenCluster {
  Scalar value;                                  // exact mode
  double value_f = 0.0;                          // floating mode
  std::size_t multiplicity = 0;
  std::vector<std::vector<Scalar>> eigenbasis;   // exact mode only
};

struct Spectrum {
  bool exact = false;
  std::vector<EigenCluster> clusters;  // sorted by descending real value
  /// True when some eigenvalue is nonzero and real (the 4-form is usable
  /// for the generalized self-duality condition).
  bool appropriate = false;
};

/// Exact spectrum via the minimal polynomial (Krylov linear algebra) and
/// rational root extraction.  Returns nullopt when the minimal polynomial
/// does not split into distinct rational linear factors.
std::optional<Spectrum> exact_spectrum(const Mat& b);

/// Floating spectrum.  When `lambda2_gram` is supplied and positive
/// definite the operator is symmetrized with respect to it (B_Omega is
/// self-adjoint for the induced inner product on 2-forms); eigenvalues are
/// clustered at relative tolerance `tol`.
Spectrum float_spectrum(const Mat& b, const Mat* lambda2_gram,
                        double tol = 1e-9);

/// Gram matrix of the induced inner product on 2-forms in the increasing
/// pair basis.
Mat lambda2_gram(const MetricSpace& ms);

/// Exact check of B_Omega(f) == lambda * f.
bool selfduality_check(const MetricSpace& ms, const Form& omega4,
                       const Form& f, const Scalar& lambda);

/// Tolerance variant for floating eigenvalues: max |B f - lambda f| over all
/// coefficients must stay below `tol` relative to the largest coefficient.
bool selfduality_check_tol(const MetricSpace& ms, const Form& omega4,
                           const Form& f, double lambda, double tol = 1e-9);

}  // namespace gg
