#pragma once

#include <vector>

#include "gg/poly.hpp"

namespace gg {

/// Derivation of the polynomial algebra, given by its values on the
/// generators and extended by the Leibniz rule.  Because polynomials live in
/// the quotient by the unit-determinant relation, construction verifies that
/// the relation is annihilated:
///   D(u[+,1]) u[-,2] + u[+,1] D(u[-,2])
///     - D(u[+,2]) u[-,1] - u[+,2] D(u[-,1]) == 0.
class Derivation {
 public:
  /// images[v] = D(variable v); one entry per context variable.
  Derivation(const PolyContext* ctx, std::vector<Poly> images);

  const PolyContext* context() const { return ctx_; }
  const Poly& image(std::size_t v) const { return images_[v]; }

  Poly apply(const Poly& f) const;

  /// The zero derivation.
  static Derivation zero(const PolyContext* ctx);
  /// Charge operator: u[+,a] -> u[+,a], u[-,a] -> -u[-,a].
  static Derivation charge_op(const PolyContext* ctx);
  /// Raising operator: u[-,a] -> u[+,a].
  static Derivation raising(const PolyContext* ctx);
  /// Lowering operator: u[+,a] -> u[-,a].
  static Derivation lowering(const PolyContext* ctx);

 private:
  const PolyContext* ctx_;
  std::vector<Poly> images_;
};

/// Commutator [D1, D2] as a derivation (well defined; its generator images
/// are D1(D2(v)) - D2(D1(v))).
Derivation commutator(const Derivation& d1, const Derivation& d2);

/// Solves  raising(f) == g  for a polynomial g of pure charge +2, selecting
/// the unique solution of the form f = lowering(h).  (Any two solutions
/// differ by an element killed by the raising operator; the lowering-exact
/// choice is the one with no highest-weight admixture.)  Throws Error when g
/// does not have charge +2 or is not in the image.
Poly solve_raising(const Poly& g);

}  // namespace gg
