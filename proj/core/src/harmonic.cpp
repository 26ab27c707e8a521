#include "gg/harmonic.hpp"

#include <string>

namespace gg {
namespace {

// Dispatches spin odd/even once; the model only supports odd spin because
// the analytic coordinate count (spin+1)/2 must cover exactly half the
// ladder for the half-flatness constructions to make sense.
std::size_t checked_odd_spin(std::size_t spin) {
  if (spin % 2 == 0) {
    throw Error("HarmonicModel requires odd spin, got " +
                std::to_string(spin));
  }
  return spin;
}

// u[s, beta] as a length-1 monomial factor appended onto `mono`.
void push_var(Monomial* mono, std::size_t v) { ++(*mono)[v]; }

// The coordinate field X[e, k]: each of the 2^spin index tuples beta
// contributes the harmonic monomial
//   prod_{i < spin-k} u[+,beta_i] * prod_{i >= spin-k} u[-,beta_i]
// against d/dx[e, sorted(beta)].
Derivation make_x_field(const PolyContext* ctx, std::size_t e,
                        std::size_t k) {
  const std::size_t m = ctx->spin();
  std::vector<Poly> images(ctx->num_vars(), Poly(ctx));
  for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
    Monomial mono(ctx->num_vars(), 0);
    std::size_t twos = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const bool is_two = (bits >> i) & 1;
      twos += is_two ? 1 : 0;
      push_var(&mono, ctx->u_index(/*plus=*/i < m - k, is_two ? 1 : 0));
    }
    images[ctx->x_index(e, twos)].add_term(mono, Scalar(1));
  }
  return Derivation(ctx, std::move(images));
}

// The analytic coordinate xan[a, k]: contract x[a, sorted(beta)] with
// index-lowered harmonics, the last k slots lowered to u[-].  Lowering with
// the symplectic form (convention e_{12} = +1) sends the upper components
// (u^1, u^2) to (u_1, u_2) = (u^2, -u^1).  Dividing by the multiplicity of
// sorted(beta) makes the contraction the symmetric-power pairing.
Poly make_analytic_coord(const PolyContext* ctx, std::size_t a,
                         std::size_t k) {
  const std::size_t m = ctx->spin();
  Poly result(ctx);
  // C(m, j) for j = 0..m.
  std::vector<Scalar> binom(m + 1, Scalar(1));
  for (std::size_t j = 1; j <= m; ++j) {
    binom[j] = binom[j - 1] * Scalar(static_cast<long>(m - j + 1)) /
               Scalar(static_cast<long>(j));
  }
  for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
    Monomial mono(ctx->num_vars(), 0);
    std::size_t twos = 0;
    Scalar sign(1);
    for (std::size_t i = 0; i < m; ++i) {
      const bool is_two = (bits >> i) & 1;
      twos += is_two ? 1 : 0;
      const bool plus = i < m - k;
      // Lowered slot component beta_i: u_1 = u^2, u_2 = -u^1.
      push_var(&mono, ctx->u_index(plus, is_two ? 0 : 1));
      if (is_two) sign = -sign;
    }
    push_var(&mono, ctx->x_index(a, twos));
    result.add_term(mono, sign * binom[twos].inverse());
  }
  return result;
}

Derivation make_partial(const PolyContext* ctx, std::size_t v) {
  std::vector<Poly> images(ctx->num_vars(), Poly(ctx));
  images[v] = Poly::constant(ctx, Scalar(1));
  return Derivation(ctx, std::move(images));
}

bool same_on_generators(const Derivation& a, const Derivation& b) {
  for (std::size_t v = 0; v < a.context()->num_vars(); ++v) {
    if (a.image(v) != b.image(v)) return false;
  }
  return true;
}

Derivation scale(const Scalar& c, const Derivation& d) {
  std::vector<Poly> images;
  images.reserve(d.context()->num_vars());
  for (std::size_t v = 0; v < d.context()->num_vars(); ++v) {
    images.push_back(c * d.image(v));
  }
  return Derivation(d.context(), std::move(images));
}

}  // namespace

HarmonicModel::HarmonicModel(std::size_t spin, std::size_t rank_e)
    : ctx_(checked_odd_spin(spin), rank_e),
      charge_(Derivation::charge_op(&ctx_)),
      raising_(Derivation::raising(&ctx_)),
      lowering_(Derivation::lowering(&ctx_)) {
  build();
}

HarmonicModel::HarmonicModel(std::size_t spin, std::size_t rank_e,
                             std::size_t max_degree)
    : ctx_(checked_odd_spin(spin), rank_e, max_degree),
      charge_(Derivation::charge_op(&ctx_)),
      raising_(Derivation::raising(&ctx_)),
      lowering_(Derivation::lowering(&ctx_)) {
  build();
}

void HarmonicModel::build() {
  const std::size_t m = ctx_.spin();
  for (std::size_t e = 0; e < ctx_.rank_e(); ++e) {
    for (std::size_t k = 0; k <= m; ++k) {
      x_fields_.push_back(make_x_field(&ctx_, e, k));
      partials_.push_back(make_partial(&ctx_, ctx_.x_index(e, k)));
      analytic_coords_.push_back(make_analytic_coord(&ctx_, e, k));
    }
  }
  verify_algebra();
}

const Derivation& HarmonicModel::x_field(std::size_t e,
                                         std::size_t minus_count) const {
  if (e >= ctx_.rank_e() || minus_count > ctx_.spin()) {
    throw Error("x_field: index out of range");
  }
  return x_fields_[e * ctx_.h_dim() + minus_count];
}

const Derivation& HarmonicModel::coordinate_partial(std::size_t e,
                                                    std::size_t big_a) const {
  if (e >= ctx_.rank_e() || big_a > ctx_.spin()) {
    throw Error("coordinate_partial: index out of range");
  }
  return partials_[e * ctx_.h_dim() + big_a];
}

const Poly& HarmonicModel::analytic_coord(std::size_t a,
                                          std::size_t minus_count) const {
  if (a >= ctx_.rank_e() || minus_count > ctx_.spin()) {
    throw Error("analytic_coord: index out of range");
  }
  return analytic_coords_[a * ctx_.h_dim() + minus_count];
}

bool HarmonicModel::is_analytic(const Poly& f) const {
  const std::size_t half = (ctx_.spin() + 1) / 2;
  for (std::size_t e = 0; e < ctx_.rank_e(); ++e) {
    for (std::size_t k = 0; k < half; ++k) {
      if (!x_field(e, k).apply(f).is_zero()) return false;
    }
  }
  return true;
}

bool HarmonicModel::is_analytic(const PolyMatrix& m) const {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_analytic(m(i, j))) return false;
    }
  }
  return true;
}

void HarmonicModel::verify_algebra() const {
  const std::size_t m = ctx_.spin();
  const Derivation zero = Derivation::zero(&ctx_);
  for (std::size_t e = 0; e < ctx_.rank_e(); ++e) {
    for (std::size_t k = 0; k <= m; ++k) {
      const Derivation& x = x_field(e, k);
      // Weight:  [charge, X_k] = (spin - 2k) X_k.
      const Scalar weight(static_cast<long>(m) - 2 * static_cast<long>(k));
      if (!same_on_generators(commutator(charge_, x), scale(weight, x))) {
        throw Error("harmonic model: charge grading of X fields failed");
      }
      // Ladder:  [raising, X_k] = k X_{k-1},  [lowering, X_k] = (m-k) X_{k+1}.
      const Derivation up = commutator(raising_, x);
      const Derivation expected_up =
          k == 0 ? zero
                 : scale(Scalar(static_cast<long>(k)), x_field(e, k - 1));
      if (!same_on_generators(up, expected_up)) {
        throw Error("harmonic model: raising ladder of X fields failed");
      }
      const Derivation down = commutator(lowering_, x);
      const Derivation expected_down =
          k == m ? zero
                 : scale(Scalar(static_cast<long>(m - k)), x_field(e, k + 1));
      if (!same_on_generators(down, expected_down)) {
        throw Error("harmonic model: lowering ladder of X fields failed");
      }
      // The fields commute with each other (flat model).
      for (std::size_t e2 = 0; e2 <= e; ++e2) {
        for (std::size_t k2 = 0; k2 <= (e2 == e ? k : m); ++k2) {
          if (!same_on_generators(commutator(x, x_field(e2, k2)), zero)) {
            throw Error("harmonic model: X fields do not commute");
          }
        }
      }
    }
    for (std::size_t k = 0; k <= m; ++k) {
      const Poly& xan = analytic_coord(e, k);
      // Same sl2 module structure on the contracted coordinates.
      const Poly up = raising_.apply(xan);
      const Poly expected_up =
          k == 0 ? Poly(&ctx_)
                 : Scalar(static_cast<long>(k)) * analytic_coord(e, k - 1);
      if (up != expected_up) {
        throw Error("harmonic model: raising ladder of coordinates failed");
      }
      const Poly down = lowering_.apply(xan);
      const Poly expected_down =
          k == m ? Poly(&ctx_)
                 : Scalar(static_cast<long>(m - k)) * analytic_coord(e, k + 1);
      if (down != expected_down) {
        throw Error("harmonic model: lowering ladder of coordinates failed");
      }
      // Pairing: X[e2, k2](xan[e, k]) = delta (-1)^k2 / C(m, k2) exactly
      // when k2 + k = m.  The k2 + k != m cases vanishing is the source of
      // analyticity for polynomials in the raised coordinates.
      for (std::size_t e2 = 0; e2 < ctx_.rank_e(); ++e2) {
        for (std::size_t k2 = 0; k2 <= m; ++k2) {
          Poly expected(&ctx_);
          if (e2 == e && k2 + k == m) {
            Scalar binom(1);
            for (std::size_t j = 1; j <= k2; ++j) {
              binom = binom * Scalar(static_cast<long>(m - j + 1)) /
                      Scalar(static_cast<long>(j));
            }
            expected = Poly::constant(
                &ctx_, (k2 % 2 == 0 ? Scalar(1) : Scalar(-1)) *
                           binom.inverse());
          }
          if (x_field(e2, k2).apply(xan) != expected) {
            throw Error("harmonic model: field/coordinate pairing failed");
          }
        }
      }
    }
  }
}

}  // namespace gg
