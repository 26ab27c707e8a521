#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gg/polymatrix.hpp>

#include <random>

using gg::Derivation;
using gg::Monomial;
using gg::Poly;
using gg::PolyContext;
using gg::PolyMatrix;
using gg::Scalar;

namespace {

Poly xv(const PolyContext& ctx, std::size_t a, std::size_t big_a) {
  return Poly::variable(&ctx, ctx.x_index(a, big_a));
}
Poly uv(const PolyContext& ctx, bool plus, std::size_t alpha) {
  return Poly::variable(&ctx, ctx.u_index(plus, alpha));
}

// x^{a+} / x^{a-} for spin 1: x^{a1} u^2 - x^{a2} u^1.
Poly xpm(const PolyContext& ctx, std::size_t a, bool plus) {
  return xv(ctx, a, 0) * uv(ctx, plus, 1) - xv(ctx, a, 1) * uv(ctx, plus, 0);
}

Poly random_poly(const PolyContext& ctx, std::mt19937& rng,
                 std::size_t max_exp = 2) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> exp(0, int(max_exp));
  Poly p(&ctx);
  for (int t = 0; t < 6; ++t) {
    Monomial m(ctx.num_vars(), 0);
    for (auto& e : m) e = std::uint16_t(exp(rng));
    p.add_term(std::move(m), Scalar(num(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("unit determinant relation is rewritten away") {
  PolyContext ctx(1, 1);
  Poly det = uv(ctx, true, 0) * uv(ctx, false, 1) -
             uv(ctx, true, 1) * uv(ctx, false, 0);
  CHECK(det == Poly::constant(&ctx, Scalar(1)));

  // no canonical monomial contains both u[+,1] and u[-,2]
  std::mt19937 rng(1);
  Poly sq = det * det * random_poly(ctx, rng);
  for (const auto& [m, c] : sq.terms())
    CHECK(m[ctx.u_index(true, 0)] * m[ctx.u_index(false, 1)] == 0);
}

TEST_CASE("ring laws survive the rewriting") {
  PolyContext ctx(1, 2, 64);  // room for triple products of random data
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    Poly a = random_poly(ctx, rng), b = random_poly(ctx, rng),
         c = random_poly(ctx, rng);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("charge bookkeeping") {
  PolyContext ctx(1, 1);
  CHECK(*xpm(ctx, 0, true).charge() == 1);
  CHECK(*(xpm(ctx, 0, true) * xpm(ctx, 0, false)).charge() == 0);
  CHECK(*uv(ctx, false, 0).charge() == -1);
  // mixed charges have none
  CHECK_FALSE((uv(ctx, true, 0) + xv(ctx, 0, 0)).charge().has_value());
  CHECK_FALSE(Poly(&ctx).charge().has_value());
}

TEST_CASE("coordinate degree: bound, grading, parts") {
  PolyContext small(1, 1, 4);
  Poly x = xv(small, 0, 0);
  Poly p = x * x * x * x;  // degree 4: allowed
  CHECK(p.x_degree() == 4);
  CHECK_THROWS_AS(p * x, gg::DegreeBoundError);

  PolyContext ctx(1, 2);
  std::mt19937 rng(7);
  Poly f = random_poly(ctx, rng);
  Poly sum(&ctx);
  for (std::size_t d = 0; d <= f.x_degree(); ++d)
    sum = sum + f.homogeneous_x_part(d);
  CHECK(sum == f);
}

TEST_CASE("derivations must respect the determinant relation") {
  PolyContext ctx(1, 1);
  // d/du[+,1] alone does not descend to the quotient
  std::vector<Poly> images(ctx.num_vars(), Poly(&ctx));
  images[ctx.u_index(true, 0)] = Poly::constant(&ctx, Scalar(1));
  CHECK_THROWS_AS(Derivation(&ctx, std::move(images)), gg::Error);
}

TEST_CASE("sl2 triple of harmonic derivations") {
  PolyContext ctx(1, 2);
  Derivation d0 = Derivation::charge_op(&ctx);
  Derivation up = Derivation::raising(&ctx);
  Derivation down = Derivation::lowering(&ctx);

  auto same = [&](const Derivation& a, const Derivation& b) {
    for (std::size_t v = 0; v < ctx.num_vars(); ++v)
      if (a.image(v) != b.image(v)) return false;
    return true;
  };
  CHECK(same(commutator(up, down), d0));

  // [d0, up] = 2 up and [d0, down] = -2 down
  Derivation c1 = commutator(d0, up);
  Derivation c2 = commutator(d0, down);
  for (std::size_t v = 0; v < ctx.num_vars(); ++v) {
    CHECK(c1.image(v) == Scalar(2) * up.image(v));
    CHECK(c2.image(v) == Scalar(-2) * down.image(v));
  }

  // the same identities hold acting on polynomials
  std::mt19937 rng(11);
  for (int t = 0; t < 6; ++t) {
    Poly f = random_poly(ctx, rng);
    CHECK(up.apply(down.apply(f)) - down.apply(up.apply(f)) == d0.apply(f));
    // Leibniz on the quotient
    Poly g = random_poly(ctx, rng);
    CHECK(up.apply(f * g) == up.apply(f) * g + f * up.apply(g));
  }

  // raising exchanges the analytic coordinates
  CHECK(up.apply(xpm(ctx, 0, false)) == xpm(ctx, 0, true));
  CHECK(up.apply(xpm(ctx, 0, true)).is_zero());
  CHECK(down.apply(xpm(ctx, 0, true)) == xpm(ctx, 0, false));
}

TEST_CASE("solve_raising picks the lowering-exact solution") {
  PolyContext ctx(1, 2);
  Derivation up = Derivation::raising(&ctx);
  Derivation down = Derivation::lowering(&ctx);

  // pinned example
  Poly g = xpm(ctx, 0, true) * xpm(ctx, 0, true);
  CHECK(gg::solve_raising(g) == xpm(ctx, 0, true) * xpm(ctx, 0, false));

  // round trip: for f0 = lowering(h) the solver must return exactly f0
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> num(-3, 3);
  for (int t = 0; t < 8; ++t) {
    // random charge +2 polynomial h: x-part times u[+,a]^2-type factors
    Poly h(&ctx);
    for (int k = 0; k < 3; ++k) {
      Poly term = Poly::constant(&ctx, Scalar(num(rng)));
      term = term * xv(ctx, std::size_t(k) % 2, 0);
      if (k % 2) term = term * xv(ctx, 0, 1);
      term = term * uv(ctx, true, std::size_t(k) % 2) * uv(ctx, true, 1);
      h = h + term;
    }
    Poly f0 = down.apply(h);
    Poly g2 = up.apply(f0);
    if (g2.is_zero()) continue;
    Poly f = gg::solve_raising(g2);
    CHECK(f == f0);
    CHECK(up.apply(f) == g2);
  }

  // wrong charge is rejected
  CHECK_THROWS_AS(gg::solve_raising(xv(ctx, 0, 0)), gg::Error);
  CHECK_THROWS_AS(gg::solve_raising(uv(ctx, false, 0)), gg::Error);
}

TEST_CASE("polynomial matrices: products and nilpotent-plus-constant inverse") {
  PolyContext ctx(1, 2);
  PolyMatrix n(&ctx, 2, 2);
  n(0, 1) = Poly::constant(&ctx, Scalar(1));

  Poly w = xpm(ctx, 0, true) * xpm(ctx, 0, false);
  PolyMatrix phi = PolyMatrix::identity(&ctx, 2) - w * n;
  PolyMatrix inv = inverse(phi);
  CHECK(phi * inv == PolyMatrix::identity(&ctx, 2));
  CHECK(inv * phi == PolyMatrix::identity(&ctx, 2));
  // with N^2 = 0 the inverse is I + w N
  CHECK(inv == PolyMatrix::identity(&ctx, 2) + w * n);

  // constant parts mix into the inverse too
  gg::Mat c(2, 2);
  c(0, 0) = Scalar(2);
  c(0, 1) = Scalar(1);
  c(1, 1) = Scalar(1, 3);
  PolyMatrix m = PolyMatrix::from_constant(&ctx, c) + w * n;
  PolyMatrix minv = inverse(m);
  CHECK(m * minv == PolyMatrix::identity(&ctx, 2));

  // singular constant part
  PolyMatrix sing(&ctx, 2, 2);
  sing(0, 0) = xv(ctx, 0, 0);
  CHECK_THROWS_AS(inverse(sing), gg::SingularMatrixError);

  // non-nilpotent remainder: series cannot terminate
  PolyContext tiny(1, 1, 6);
  PolyMatrix bad = PolyMatrix::identity(&tiny, 1);
  bad(0, 0) = bad(0, 0) + xv(tiny, 0, 0);
  CHECK_THROWS_AS(inverse(bad), gg::DegreeBoundError);

  // commutator and entrywise derivation
  PolyMatrix a(&ctx, 2, 2), b(&ctx, 2, 2);
  a(0, 1) = xpm(ctx, 0, true);
  b(1, 0) = xpm(ctx, 1, false);
  CHECK(commutator(a, b) == a * b - b * a);
  Derivation up = Derivation::raising(&ctx);
  PolyMatrix da = apply(up, a);
  CHECK(da(0, 1).is_zero());
  PolyMatrix db = apply(up, b);
  CHECK(db(1, 0) == xpm(ctx, 1, true));
}
