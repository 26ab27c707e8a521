#include "gg/derivation.hpp"

#include <array>
#include <map>

#include "gg/linalg.hpp"

namespace gg {

Derivation::Derivation(const PolyContext* ctx, std::vector<Poly> images)
    : ctx_(ctx), images_(std::move(images)) {
  if (images_.size() != ctx_->num_vars())
    throw Error("derivation needs one image per variable");
  for (const Poly& p : images_)
    if (p.context() != ctx_)
      throw Error("derivation image from a different context");

  // The quotient relation u[+,1] u[-,2] - u[+,2] u[-,1] - 1 must be
  // annihilated, otherwise the Leibniz extension is not well defined on
  // canonical forms.
  auto var = [&](bool plus, std::size_t a) {
    return Poly::variable(ctx_, ctx_->u_index(plus, a));
  };
  const Poly& dup1 = images_[ctx_->u_index(true, 0)];
  const Poly& dup2 = images_[ctx_->u_index(true, 1)];
  const Poly& dum1 = images_[ctx_->u_index(false, 0)];
  const Poly& dum2 = images_[ctx_->u_index(false, 1)];
  Poly check = dup1 * var(false, 1) + var(true, 0) * dum2 -
               dup2 * var(false, 0) - var(true, 1) * dum1;
  if (!check.is_zero())
    throw Error("derivation does not respect the determinant relation");
}

Poly Derivation::apply(const Poly& f) const {
  Poly out(ctx_);
  for (std::size_t v = 0; v < ctx_->num_vars(); ++v) {
    if (images_[v].is_zero()) continue;
    out = out + images_[v] * f.partial(v);
  }
  return out;
}

Derivation Derivation::zero(const PolyContext* ctx) {
  return Derivation(ctx, std::vector<Poly>(ctx->num_vars(), Poly(ctx)));
}

Derivation Derivation::charge_op(const PolyContext* ctx) {
  std::vector<Poly> images(ctx->num_vars(), Poly(ctx));
  for (std::size_t a = 0; a < 2; ++a) {
    images[ctx->u_index(true, a)] =
        Poly::variable(ctx, ctx->u_index(true, a));
    images[ctx->u_index(false, a)] =
        -Poly::variable(ctx, ctx->u_index(false, a));
  }
  return Derivation(ctx, std::move(images));
}

Derivation Derivation::raising(const PolyContext* ctx) {
  std::vector<Poly> images(ctx->num_vars(), Poly(ctx));
  for (std::size_t a = 0; a < 2; ++a)
    images[ctx->u_index(false, a)] =
        Poly::variable(ctx, ctx->u_index(true, a));
  return Derivation(ctx, std::move(images));
}

Derivation Derivation::lowering(const PolyContext* ctx) {
  std::vector<Poly> images(ctx->num_vars(), Poly(ctx));
  for (std::size_t a = 0; a < 2; ++a)
    images[ctx->u_index(true, a)] =
        Poly::variable(ctx, ctx->u_index(false, a));
  return Derivation(ctx, std::move(images));
}

Derivation commutator(const Derivation& d1, const Derivation& d2) {
  const PolyContext* ctx = d1.context();
  if (ctx != d2.context())
    throw Error("commutator of derivations from different contexts");
  std::vector<Poly> images;
  images.reserve(ctx->num_vars());
  for (std::size_t v = 0; v < ctx->num_vars(); ++v)
    images.push_back(d1.apply(d2.image(v)) - d2.apply(d1.image(v)));
  return Derivation(ctx, std::move(images));
}

namespace {

// Canonical charge +2 exponent patterns (e+1, e+2, e-1, e-2) of total degree
// at most `max_deg` (canonical: never both u[+,1] and u[-,2]).
std::vector<std::array<std::uint16_t, 4>> charge2_basis(std::size_t max_deg) {
  std::vector<std::array<std::uint16_t, 4>> basis;
  for (std::size_t total = 2; total <= max_deg; ++total) {
    for (std::size_t a = 0; a <= total; ++a) {
      for (std::size_t b = 0; a + b <= total; ++b) {
        for (std::size_t c = 0; a + b + c <= total; ++c) {
          std::size_t d = total - a - b - c;
          if (a > 0 && d > 0) continue;  // not canonical
          if (int(a + b) - int(c + d) != 2) continue;
          basis.push_back({std::uint16_t(a), std::uint16_t(b),
                           std::uint16_t(c), std::uint16_t(d)});
        }
      }
    }
  }
  return basis;
}

}  // namespace

Poly solve_raising(const Poly& g) {
  const PolyContext* ctx = g.context();
  if (g.is_zero()) return Poly(ctx);
  auto q = g.charge();
  if (!q || *q != 2)
    throw Error("solve_raising needs a polynomial of pure charge +2");

  const Derivation up = Derivation::raising(ctx);
  const Derivation down = Derivation::lowering(ctx);
  const std::size_t nx = ctx->num_x();

  // Group the terms by their coordinate part; the harmonic analysis is
  // independent per group.
  std::map<Monomial, std::map<std::array<std::uint16_t, 4>, Scalar>> groups;
  for (const auto& [m, c] : g.terms()) {
    Monomial xpart(m.begin(), m.begin() + nx);
    groups[xpart][{m[nx], m[nx + 1], m[nx + 2], m[nx + 3]}] = c;
  }

  Poly f(ctx);
  for (const auto& [xpart, uterms] : groups) {
    std::size_t max_deg = 0;
    for (const auto& [e, c] : uterms) {
      std::size_t d = std::size_t(e[0]) + e[1] + e[2] + e[3];
      if (d > max_deg) max_deg = d;
    }
    auto basis = charge2_basis(max_deg);
    std::map<std::array<std::uint16_t, 4>, std::size_t> pos;
    for (std::size_t j = 0; j < basis.size(); ++j) pos[basis[j]] = j;

    // Matrix of raising(lowering(.)) on the charge +2 slice.  The operator
    // preserves the degree filtration (reduction only lowers degree), and it
    // is injective there, hence invertible on the slice.
    Mat a(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Poly bj(ctx);
      Monomial m(ctx->num_vars(), 0);
      for (std::size_t k = 0; k < 4; ++k) m[nx + k] = basis[j][k];
      bj.add_term(std::move(m), Scalar(1));
      Poly img = up.apply(down.apply(bj));
      for (const auto& [im, ic] : img.terms()) {
        auto it = pos.find({im[nx], im[nx + 1], im[nx + 2], im[nx + 3]});
        if (it == pos.end())
          throw Error("solve_raising: operator left the basis slice");
        a(it->second, j) = ic;
      }
    }

    std::vector<Scalar> rhs(basis.size());
    for (const auto& [e, c] : uterms) rhs[pos.at(e)] = c;
    std::vector<Scalar> h;
    if (!solve(a, rhs, &h))
      throw Error("solve_raising: right-hand side is not in the image");

    Poly hpoly(ctx);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (h[j].is_zero()) continue;
      Monomial m(xpart);
      m.resize(ctx->num_vars(), 0);
      for (std::size_t k = 0; k < 4; ++k) m[nx + k] = basis[j][k];
      hpoly.add_term(std::move(m), h[j]);
    }
    f = f + down.apply(hpoly);
  }
  return f;
}

}  // namespace gg
