#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gg/harmonic.hpp"
#include "gg/matrix_form.hpp"

namespace gg {

/// Validates a candidate prepotential for the half-flatness pipeline.
/// Returns the name of the first failed check, or nullopt when the matrix
/// is usable:
///   "prepotential shape"         not square over the model's context,
///   "prepotential charge"        an entry is not of pure charge +2,
///   "prepotential analyticity"   an entry survives a raised field,
///   "prepotential constant part" nonzero value at x = 0.
/// `analytic_levels` is how many raised field layers X[., k] (k below the
/// value) must annihilate the entries; it defaults to (spin+1)/2, the full
/// analyticity of the model.  Pipelines with weaker flatness targets pass a
/// smaller value.
std::optional<std::string> prepotential_rejection(
    const HarmonicModel& hm, const PolyMatrix& a,
    std::optional<std::size_t> analytic_levels = std::nullopt);

/// Integrates the prepotential: solves (raising + a) phi = 0 with
/// phi = identity at x = 0, degree by degree in x, picking the
/// lowering-exact primitive at every step (which fixes the residual gauge
/// freedom).  Without `order` the series must terminate on its own and the
/// equation is verified exactly afterwards; DegreeBoundError signals a
/// series that is still running at the context degree bound.  With `order`
/// the solution is truncated past that x-degree and only the components up
/// to it are checked.
PolyMatrix solve_bridge(const HarmonicModel& hm, const PolyMatrix& a,
                        std::optional<std::size_t> order = std::nullopt,
                        std::optional<std::size_t> analytic_levels = std::nullopt);

/// Frame change into the gauge where the raised potential vanishes:
/// phi_inv * a_x * phi + phi_inv * x(phi).
PolyMatrix to_central_frame(const PolyMatrix& phi, const PolyMatrix& phi_inv,
                            const Derivation& x, const PolyMatrix& a_x);

/// Splits a matrix linear in the raised harmonics as
/// m = u[+,1] c[0] + u[+,2] c[1] with coordinate-only coefficients; throws
/// Error when any monomial is not of that shape.
std::array<PolyMatrix, 2> split_plus_linear(const PolyMatrix& m);

/// Curvature component F_{vw} = d_v c_w - d_w c_v + [c_v, c_w] of a
/// coordinate connection, given as one matrix per coordinate variable.
PolyMatrix coordinate_curvature(const std::vector<PolyMatrix>& c,
                                std::size_t v, std::size_t w);

/// The connection as a matrix-valued 1-form, sum_v c_v dx^v.
MatrixForm connection_one_form(const std::vector<PolyMatrix>& c);

/// Its curvature 2-form dA + A ^ A; the coefficient at v < w is F_{vw}.
MatrixForm curvature_two_form(const std::vector<PolyMatrix>& c);

/// Yang-Mills residual d(*F) + A ^ *F - *F ^ A for the constant metric
/// `ms`; identically zero exactly when the connection is Yang-Mills.
MatrixForm yang_mills_residual(const std::vector<PolyMatrix>& c,
                               const MetricSpace& ms);

/// Half-flatness of a spin-1 coordinate connection: the curvature must be
/// symmetric under exchanging the coordinate blocks with the H-labels held
/// fixed, F_{(e a)(e' b)} = F_{(e' a)(e b)}.  The surviving part is then
/// automatically antisymmetric in the H-labels, i.e. proportional to the
/// symplectic pairing.
bool spin_one_half_flat(const std::vector<PolyMatrix>& c);

/// The full spin-1 pipeline.  From an analytic charge +2 prepotential it
/// produces, in order: the bridge phi, the lowered potential
/// a_mm = -(lowering phi) phi^{-1}, the mixed potentials on the lowered
/// coordinate fields, the central-frame connection on the raised fields,
/// and its harmonic-free coordinate coefficients.  The resulting coordinate
/// connection is half-flat by construction whenever the audit residuals
/// vanish.
class SpinOneSystem {
 public:
  /// Exact construction; the bridge series must terminate.
  SpinOneSystem(const HarmonicModel& hm, PolyMatrix prepotential);
  /// Truncated construction through the given x-degree.
  SpinOneSystem(const HarmonicModel& hm, PolyMatrix prepotential,
                std::size_t order);

  const HarmonicModel& model() const { return *hm_; }
  std::size_t gauge_rank() const { return rank_; }

  const PolyMatrix& prepotential() const { return a_pp_; }
  const PolyMatrix& bridge() const { return phi_; }
  const PolyMatrix& bridge_inverse() const { return phi_inv_; }
  const PolyMatrix& lowered_potential() const { return a_mm_; }
  /// Potential on the lowered coordinate field X[e, 1].
  const PolyMatrix& mixed_potential(std::size_t e) const;
  /// Central-frame connection on the raised coordinate field X[e, 0];
  /// linear in the raised harmonics.
  const PolyMatrix& frame_connection(std::size_t e) const;
  /// Harmonic-free coefficient: frame_connection(e) =
  /// u[+,1] coefficient(e, 0) + u[+,2] coefficient(e, 1).
  const PolyMatrix& coefficient(std::size_t e, std::size_t alpha) const;
  /// All coefficients, indexed by coordinate variable.
  const std::vector<PolyMatrix>& coordinate_connection() const {
    return coord_conn_;
  }

  PolyMatrix curvature(std::size_t v, std::size_t w) const {
    return coordinate_curvature(coord_conn_, v, w);
  }
  bool half_flat() const { return spin_one_half_flat(coord_conn_); }
  /// The symmetric potential with F_{(e a)(e' b)} = potential * eps_{ab}
  /// (meaningful when half_flat()).
  PolyMatrix invariant_potential(std::size_t e, std::size_t e2) const;

  /// Mixed-direction zero-curvature residuals of the potentials; all four
  /// hold identically for an exact solve.
  struct Audit {
    bool harmonic_pair_flat;   // raising/lowering pair against a_pp, a_mm
    bool raised_mixed_flat;    // raising against each mixed potential
    bool mixed_symmetry;       // X[e,0] applied to mixed potentials commutes
    bool lowered_mixed_flat;   // lowering against each mixed potential
    bool all() const {
      return harmonic_pair_flat && raised_mixed_flat && mixed_symmetry &&
             lowered_mixed_flat;
    }
  };
  Audit audit() const;

 private:
  SpinOneSystem(const HarmonicModel& hm, PolyMatrix prepotential,
                std::optional<std::size_t> order);

  const HarmonicModel* hm_;
  std::size_t rank_;
  PolyMatrix a_pp_, phi_, phi_inv_, a_mm_;
  std::vector<PolyMatrix> mixed_;       // one per coordinate block
  std::vector<PolyMatrix> frame_;       // one per coordinate block
  std::vector<PolyMatrix> coord_conn_;  // one per coordinate variable
};

}  // namespace gg
