#include "gg/gauge.hpp"

namespace gg {

std::optional<std::string> prepotential_rejection(
    const HarmonicModel& hm, const PolyMatrix& a,
    std::optional<std::size_t> analytic_levels) {
  if (a.rows() != a.cols() || a.rows() == 0 ||
      a.context() != hm.context()) {
    return "prepotential shape";
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Poly& p = a(i, j);
      if (!p.is_zero() && p.charge() != std::optional<int>(2)) {
        return "prepotential charge";
      }
    }
  }
  const std::size_t levels = analytic_levels
                                 ? *analytic_levels
                                 : (hm.spin() + 1) / 2;
  for (std::size_t e = 0; e < hm.rank_e(); ++e) {
    for (std::size_t k = 0; k < levels; ++k) {
      if (!apply(hm.x_field(e, k), a).is_zero()) {
        return "prepotential analyticity";
      }
    }
  }
  if (!a.homogeneous_x_part(0).is_zero()) return "prepotential constant part";
  return std::nullopt;
}

PolyMatrix solve_bridge(const HarmonicModel& hm, const PolyMatrix& a,
                        std::optional<std::size_t> order,
                        std::optional<std::size_t> analytic_levels) {
  if (auto why = prepotential_rejection(hm, a, analytic_levels)) {
    throw Error("prepotential rejected: " + *why);
  }
  const PolyContext* ctx = hm.context();
  const std::size_t n = a.rows();
  const std::size_t deg_a = a.x_degree();
  std::vector<PolyMatrix> a_part;
  for (std::size_t j = 0; j <= deg_a; ++j) {
    a_part.push_back(a.homogeneous_x_part(j));
  }

  const std::size_t kmax = order ? *order : ctx->max_degree();
  std::vector<PolyMatrix> p;
  p.push_back(PolyMatrix::identity(ctx, n));
  std::size_t last_nonzero = 0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    // Once a full window of length deg_a is zero, every later right-hand
    // side vanishes too: the series has terminated.
    if (!order && k > last_nonzero + deg_a) break;
    PolyMatrix rhs(ctx, n, n);
    for (std::size_t j = 1; j <= std::min(k, deg_a); ++j) {
      if (a_part[j].is_zero() || p[k - j].is_zero()) continue;
      rhs = rhs - a_part[j] * p[k - j];
    }
    PolyMatrix pk(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!rhs(i, j).is_zero()) pk(i, j) = solve_raising(rhs(i, j));
      }
    }
    if (!pk.is_zero()) last_nonzero = k;
    p.push_back(std::move(pk));
  }

  PolyMatrix phi(ctx, n, n);
  for (const PolyMatrix& pk : p) phi = phi + pk;

  const PolyMatrix residual = apply(hm.raising(), phi) + a * phi;
  if (order) {
    for (std::size_t d = 0; d <= *order; ++d) {
      if (!residual.homogeneous_x_part(d).is_zero()) {
        throw Error("bridge solve is inconsistent below the cutoff");
      }
    }
  } else if (!residual.is_zero()) {
    throw DegreeBoundError(
        "bridge series did not terminate within the degree bound");
  }
  return phi;
}

PolyMatrix to_central_frame(const PolyMatrix& phi, const PolyMatrix& phi_inv,
                            const Derivation& x, const PolyMatrix& a_x) {
  return phi_inv * a_x * phi + phi_inv * apply(x, phi);
}

std::array<PolyMatrix, 2> split_plus_linear(const PolyMatrix& m) {
  const PolyContext* ctx = m.context();
  const std::size_t up[2] = {ctx->u_index(true, 0), ctx->u_index(true, 1)};
  const std::size_t down[2] = {ctx->u_index(false, 0),
                               ctx->u_index(false, 1)};
  std::array<PolyMatrix, 2> out{PolyMatrix(ctx, m.rows(), m.cols()),
                                PolyMatrix(ctx, m.rows(), m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (const auto& [mono, c] : m(i, j).terms()) {
        if (mono[down[0]] != 0 || mono[down[1]] != 0 ||
            mono[up[0]] + mono[up[1]] != 1) {
          throw Error("matrix is not linear in u[+]");
        }
        const std::size_t alpha = mono[up[1]] == 1 ? 1 : 0;
        Monomial stripped = mono;
        stripped[up[alpha]] = 0;
        out[alpha](i, j).add_term(std::move(stripped), c);
      }
    }
  }
  return out;
}

namespace {

const PolyContext* connection_context(const std::vector<PolyMatrix>& c) {
  if (c.empty()) throw Error("empty coordinate connection");
  const PolyContext* ctx = c.front().context();
  if (c.size() != ctx->num_x()) {
    throw Error("coordinate connection needs one matrix per coordinate");
  }
  return ctx;
}

}  // namespace

PolyMatrix coordinate_curvature(const std::vector<PolyMatrix>& c,
                                std::size_t v, std::size_t w) {
  connection_context(c);
  return c[w].partial(v) - c[v].partial(w) + commutator(c[v], c[w]);
}

MatrixForm connection_one_form(const std::vector<PolyMatrix>& c) {
  const PolyContext* ctx = connection_context(c);
  MatrixForm a(ctx, c.front().rows(), 1);
  for (std::size_t v = 0; v < c.size(); ++v) {
    a.add_term({static_cast<std::uint8_t>(v)}, c[v]);
  }
  return a;
}

MatrixForm curvature_two_form(const std::vector<PolyMatrix>& c) {
  const MatrixForm a = connection_one_form(c);
  return exterior_derivative(a) + wedge(a, a);
}

MatrixForm yang_mills_residual(const std::vector<PolyMatrix>& c,
                               const MetricSpace& ms) {
  const MatrixForm a = connection_one_form(c);
  const MatrixForm sf = star(ms, curvature_two_form(c));
  return exterior_derivative(sf) + wedge(a, sf) - wedge(sf, a);
}

bool spin_one_half_flat(const std::vector<PolyMatrix>& c) {
  const PolyContext* ctx = connection_context(c);
  if (ctx->spin() != 1) {
    throw Error("half-flatness test is for spin-1 connections");
  }
  for (std::size_t e = 0; e < ctx->rank_e(); ++e) {
    for (std::size_t e2 = e + 1; e2 < ctx->rank_e(); ++e2) {
      for (std::size_t al = 0; al < 2; ++al) {
        for (std::size_t be = 0; be < 2; ++be) {
          const PolyMatrix lhs = coordinate_curvature(
              c, ctx->x_index(e, al), ctx->x_index(e2, be));
          const PolyMatrix rhs = coordinate_curvature(
              c, ctx->x_index(e2, al), ctx->x_index(e, be));
          if (lhs != rhs) return false;
        }
      }
    }
  }
  // Within one block the exchange is trivial except for the diagonal
  // H-labels, where symmetry against antisymmetry forces zero.
  for (std::size_t e = 0; e < ctx->rank_e(); ++e) {
    for (std::size_t al = 0; al < 2; ++al) {
      if (!coordinate_curvature(c, ctx->x_index(e, al), ctx->x_index(e, al))
               .is_zero()) {
        return false;  // cannot happen; kept for shape symmetry
      }
    }
  }
  return true;
}

SpinOneSystem::SpinOneSystem(const HarmonicModel& hm,
                             PolyMatrix prepotential)
    : SpinOneSystem(hm, std::move(prepotential), std::nullopt) {}

SpinOneSystem::SpinOneSystem(const HarmonicModel& hm,
                             PolyMatrix prepotential, std::size_t order)
    : SpinOneSystem(hm, std::move(prepotential),
                    std::optional<std::size_t>(order)) {}

SpinOneSystem::SpinOneSystem(const HarmonicModel& hm,
                             PolyMatrix prepotential,
                             std::optional<std::size_t> order)
    : hm_(&hm),
      rank_(prepotential.rows()),
      a_pp_(std::move(prepotential)),
      phi_(hm.context(), 0, 0),
      phi_inv_(hm.context(), 0, 0),
      a_mm_(hm.context(), 0, 0) {
  if (hm.spin() != 1) throw Error("SpinOneSystem needs a spin-1 model");
  phi_ = solve_bridge(hm, a_pp_, order);
  phi_inv_ = inverse(phi_);
  a_mm_ = -(apply(hm.lowering(), phi_) * phi_inv_);
  const PolyContext* ctx = hm.context();
  for (std::size_t e = 0; e < ctx->rank_e(); ++e) {
    mixed_.push_back(-apply(hm.x_field(e, 0), a_mm_));
    frame_.push_back(to_central_frame(phi_, phi_inv_, hm.x_field(e, 0),
                                      PolyMatrix(ctx, rank_, rank_)));
    // The u[+, al] component is the connection along the coordinate
    // direction x[e, al]; the H-label positions match directly.
    auto parts = split_plus_linear(frame_.back());
    coord_conn_.push_back(std::move(parts[0]));
    coord_conn_.push_back(std::move(parts[1]));
  }
}

const PolyMatrix& SpinOneSystem::mixed_potential(std::size_t e) const {
  if (e >= mixed_.size()) throw Error("mixed_potential: index out of range");
  return mixed_[e];
}

const PolyMatrix& SpinOneSystem::frame_connection(std::size_t e) const {
  if (e >= frame_.size()) throw Error("frame_connection: index out of range");
  return frame_[e];
}

const PolyMatrix& SpinOneSystem::coefficient(std::size_t e,
                                             std::size_t alpha) const {
  if (e >= hm_->rank_e() || alpha >= 2) {
    throw Error("coefficient: index out of range");
  }
  return coord_conn_[2 * e + alpha];
}

PolyMatrix SpinOneSystem::invariant_potential(std::size_t e,
                                              std::size_t e2) const {
  const PolyContext* ctx = hm_->context();
  const PolyMatrix f1 =
      curvature(ctx->x_index(e, 0), ctx->x_index(e2, 1));
  const PolyMatrix f2 =
      curvature(ctx->x_index(e2, 0), ctx->x_index(e, 1));
  return (Scalar(1) / Scalar(2)) * (f1 + f2);
}

SpinOneSystem::Audit SpinOneSystem::audit() const {
  Audit out{};
  out.harmonic_pair_flat = (apply(hm_->raising(), a_mm_) -
                            apply(hm_->lowering(), a_pp_) +
                            commutator(a_pp_, a_mm_))
                               .is_zero();
  out.raised_mixed_flat = true;
  out.lowered_mixed_flat = true;
  out.mixed_symmetry = true;
  for (std::size_t e = 0; e < hm_->rank_e(); ++e) {
    const PolyMatrix& ae = mixed_[e];
    out.raised_mixed_flat =
        out.raised_mixed_flat &&
        (apply(hm_->raising(), ae) - apply(hm_->x_field(e, 1), a_pp_) +
         commutator(a_pp_, ae))
            .is_zero();
    out.lowered_mixed_flat =
        out.lowered_mixed_flat &&
        (apply(hm_->lowering(), ae) - apply(hm_->x_field(e, 1), a_mm_) +
         commutator(a_mm_, ae))
            .is_zero();
    for (std::size_t e2 = e + 1; e2 < hm_->rank_e(); ++e2) {
      out.mixed_symmetry =
          out.mixed_symmetry &&
          apply(hm_->x_field(e, 0), mixed_[e2]) ==
              apply(hm_->x_field(e2, 0), mixed_[e]);
    }
  }
  return out;
}

}  // namespace gg
