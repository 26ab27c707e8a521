#pragma once

#include <vector>

#include "gg/derivation.hpp"
#include "gg/polymatrix.hpp"

namespace gg {

/// The flat model space for one odd spin value: coordinates x[a, A] with a
/// below rank_e and A a sorted degree-`spin` multi-index, together with the
/// harmonic variables.  The model owns its PolyContext and provides
///
///   * the sl2 triple of harmonic derivations (charge, raising, lowering),
///   * the coordinate vector fields X[e, k] carrying k lowered harmonic
///     slots (k = 0 is the fully raised field),
///   * the plain coordinate partials,
///   * the analytic coordinates xan[a, k] obtained by contracting all
///     spin indices with harmonics (k of them lowered).
///
/// The operator algebra is verified at construction time:
///   [charge, X_k] = (spin - 2k) X_k,
///   [raising, X_k] = k X_{k-1},        [lowering, X_k] = (spin - k) X_{k+1},
///   [X, X'] = 0,
///   raising(xan_k) = k xan_{k-1},      lowering(xan_k) = (spin - k) xan_{k+1},
///   X[e, k](xan[a, j]) = delta_{ea} (-1)^k / C(spin, k) when k + j = spin
///   and zero otherwise; in particular the raised half of the fields
///   annihilates the raised half of the coordinates, which is what makes
///   polynomials in xan[., j < (spin+1)/2] analytic.
class HarmonicModel {
 public:
  HarmonicModel(std::size_t spin, std::size_t rank_e);
  HarmonicModel(std::size_t spin, std::size_t rank_e, std::size_t max_degree);
  HarmonicModel(const HarmonicModel&) = delete;
  HarmonicModel& operator=(const HarmonicModel&) = delete;

  const PolyContext* context() const { return &ctx_; }
  std::size_t spin() const { return ctx_.spin(); }
  std::size_t rank_e() const { return ctx_.rank_e(); }

  const Derivation& charge_op() const { return charge_; }
  const Derivation& raising() const { return raising_; }
  const Derivation& lowering() const { return lowering_; }

  /// X[e, minus_count]: 0 <= e < rank_e, 0 <= minus_count <= spin.
  const Derivation& x_field(std::size_t e, std::size_t minus_count) const;
  /// d/dx[e, A].
  const Derivation& coordinate_partial(std::size_t e, std::size_t big_a) const;
  /// xan[a, minus_count].
  const Poly& analytic_coord(std::size_t a, std::size_t minus_count) const;

  /// True when every X[e, k] with k < (spin + 1) / 2 annihilates f; these
  /// are exactly the fields annihilating all polynomials in the
  /// positive-charge analytic coordinates.
  bool is_analytic(const Poly& f) const;
  bool is_analytic(const PolyMatrix& m) const;

 private:
  PolyContext ctx_;
  Derivation charge_, raising_, lowering_;
  std::vector<Derivation> x_fields_;    // index e * (spin+1) + k
  std::vector<Derivation> partials_;    // index e * (spin+1) + A
  std::vector<Poly> analytic_coords_;   // index a * (spin+1) + k

  void build();
  void verify_algebra() const;
};

}  // namespace gg
