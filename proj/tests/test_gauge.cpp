#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gg/canonical_forms.hpp>
#include <gg/gauge.hpp>

#include <random>

using gg::HarmonicModel;
using gg::MatrixForm;
using gg::Mat;
using gg::MetricSpace;
using gg::Poly;
using gg::PolyContext;
using gg::PolyMatrix;
using gg::Scalar;
using gg::SpinOneSystem;

namespace {

PolyMatrix single_nilpotent(const PolyContext* ctx) {
  PolyMatrix n(ctx, 2, 2);
  n(0, 1) = Poly::constant(ctx, Scalar(1));
  return n;
}

// Strictly upper-triangular matrix of random analytic charge +2 entries:
// quadratics in the raised coordinates, optionally times one more raised
// coordinate and one lowered harmonic.
PolyMatrix random_prepotential(const HarmonicModel& hm, std::mt19937& rng,
                               std::size_t r) {
  const PolyContext* ctx = hm.context();
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<std::size_t> block(0, hm.rank_e() - 1);
  std::uniform_int_distribution<int> cubic(0, 1);
  PolyMatrix a(ctx, r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      Poly entry(ctx);
      for (int t = 0; t < 2; ++t) {
        const int c = coef(rng);
        if (c == 0) continue;
        Poly term = Scalar(c) * (hm.analytic_coord(block(rng), 0) *
                                 hm.analytic_coord(block(rng), 0));
        if (cubic(rng)) {
          term = term * hm.analytic_coord(block(rng), 0) *
                 Poly::variable(ctx, ctx->u_index(false, cubic(rng)));
        }
        entry = entry + term;
      }
      a(i, j) = entry;
    }
  }
  return a;
}

}  // namespace

TEST_CASE("nilpotent worked example is reproduced exactly") {
  HarmonicModel hm(1, 2);
  const PolyContext* ctx = hm.context();
  const Poly xp = hm.analytic_coord(0, 0);
  const Poly xm = hm.analytic_coord(0, 1);
  const PolyMatrix n = single_nilpotent(ctx);

  PolyMatrix app(ctx, 2, 2);
  app(0, 1) = xp * xp;
  SpinOneSystem sys(hm, app);

  CHECK(sys.gauge_rank() == 2);
  CHECK(sys.bridge() == PolyMatrix::identity(ctx, 2) - (xp * xm) * n);
  CHECK(sys.bridge_inverse() ==
        PolyMatrix::identity(ctx, 2) + (xp * xm) * n);
  CHECK(sys.lowered_potential() == (xm * xm) * n);
  CHECK(sys.mixed_potential(0) == Scalar(-2) * (xm * n));
  CHECK(sys.mixed_potential(1).is_zero());
  CHECK(sys.frame_connection(0) == Scalar(-1) * (xp * n));
  CHECK(sys.frame_connection(1).is_zero());

  const Poly x11 = Poly::variable(ctx, ctx->x_index(0, 0));
  const Poly x12 = Poly::variable(ctx, ctx->x_index(0, 1));
  CHECK(sys.coefficient(0, 0) == x12 * n);
  CHECK(sys.coefficient(0, 1) == Scalar(-1) * (x11 * n));
  CHECK(sys.coefficient(1, 0).is_zero());
  CHECK(sys.coefficient(1, 1).is_zero());

  // The frame connection recomposes exactly from its coefficients: the
  // split has no remainder.
  const Poly u1 = Poly::variable(ctx, ctx->u_index(true, 0));
  const Poly u2 = Poly::variable(ctx, ctx->u_index(true, 1));
  CHECK(u1 * sys.coefficient(0, 0) + u2 * sys.coefficient(0, 1) ==
        sys.frame_connection(0));

  // Curvature: F_{(1 a)(1 b)} = -2 eps_{ab} N, every other block zero.
  CHECK(sys.curvature(ctx->x_index(0, 0), ctx->x_index(0, 1)) ==
        Scalar(-2) * n);
  CHECK(sys.curvature(ctx->x_index(0, 0), ctx->x_index(1, 1)).is_zero());
  CHECK(sys.curvature(ctx->x_index(1, 0), ctx->x_index(1, 1)).is_zero());
  CHECK(sys.half_flat());
  CHECK(sys.invariant_potential(0, 0) == Scalar(-2) * n);
  CHECK(sys.invariant_potential(0, 1).is_zero());

  const auto audit = sys.audit();
  CHECK(audit.harmonic_pair_flat);
  CHECK(audit.raised_mixed_flat);
  CHECK(audit.mixed_symmetry);
  CHECK(audit.lowered_mixed_flat);
  CHECK(audit.all());

  // Yang-Mills residual vanishes identically for the flat model metric.
  const MetricSpace ms = gg::spin_m_space(1, gg::standard_omega_e(2));
  CHECK(gg::yang_mills_residual(sys.coordinate_connection(), ms).is_zero());
}

TEST_CASE("random nilpotent prepotentials integrate to half-flat "
          "connections") {
  HarmonicModel hm(1, 2);
  std::mt19937 rng(20240921);
  int nontrivial = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t r = trial % 2 == 0 ? 2 : 3;
    const PolyMatrix app = random_prepotential(hm, rng, r);
    REQUIRE(gg::prepotential_rejection(hm, app) == std::nullopt);
    SpinOneSystem sys(hm, app);
    CHECK(sys.audit().all());
    CHECK(sys.half_flat());
    if (!app.is_zero()) ++nontrivial;
    // The truncated solve reproduces the terminating series exactly once
    // the cutoff passes the top degree.
    SpinOneSystem series(hm, app, sys.bridge().x_degree());
    CHECK(series.bridge() == sys.bridge());
    CHECK(series.lowered_potential() == sys.lowered_potential());
    for (std::size_t e = 0; e < hm.rank_e(); ++e) {
      CHECK(series.frame_connection(e) == sys.frame_connection(e));
    }
    // A shorter truncation agrees degree by degree below its cutoff.
    SpinOneSystem low(hm, app, 1);
    for (std::size_t d = 0; d <= 1; ++d) {
      CHECK(low.bridge().homogeneous_x_part(d) ==
            sys.bridge().homogeneous_x_part(d));
    }
  }
  CHECK(nontrivial >= 20);
}

TEST_CASE("constant gauge transformations conjugate the pipeline") {
  HarmonicModel hm(1, 2);
  const PolyContext* ctx = hm.context();
  const Poly xp = hm.analytic_coord(0, 0);
  const Poly yp = hm.analytic_coord(1, 0);

  PolyMatrix app(ctx, 2, 2);
  app(0, 1) = xp * yp + Scalar(2) * (xp * xp);

  Mat u(2, 2);
  u(0, 0) = Scalar(1);
  u(0, 1) = Scalar(3);
  u(1, 1) = Scalar(1);
  const PolyMatrix pu = PolyMatrix::from_constant(ctx, u);
  const PolyMatrix pu_inv = gg::inverse(pu);

  SpinOneSystem sys(hm, app);
  SpinOneSystem conj(hm, pu_inv * app * pu);
  CHECK(conj.bridge() == pu_inv * sys.bridge() * pu);
  CHECK(conj.lowered_potential() ==
        pu_inv * sys.lowered_potential() * pu);
  for (std::size_t e = 0; e < 2; ++e) {
    for (std::size_t al = 0; al < 2; ++al) {
      CHECK(conj.coefficient(e, al) ==
            pu_inv * sys.coefficient(e, al) * pu);
    }
  }
  CHECK(conj.curvature(0, 1) == pu_inv * sys.curvature(0, 1) * pu);
  CHECK(conj.half_flat());
}

TEST_CASE("prepotential validation names the failed check") {
  HarmonicModel hm(1, 2);
  const PolyContext* ctx = hm.context();
  const Poly xp = hm.analytic_coord(0, 0);
  const Poly xm = hm.analytic_coord(0, 1);
  const Poly up = Poly::variable(ctx, ctx->u_index(true, 0));

  PolyMatrix rect(ctx, 2, 3);
  CHECK(gg::prepotential_rejection(hm, rect) == "prepotential shape");

  PolyMatrix charge1(ctx, 2, 2);
  charge1(0, 1) = xp;
  CHECK(gg::prepotential_rejection(hm, charge1) == "prepotential charge");

  PolyMatrix mixed(ctx, 2, 2);
  mixed(0, 1) = xp * xp + xp;
  CHECK(gg::prepotential_rejection(hm, mixed) == "prepotential charge");

  PolyMatrix lowered(ctx, 2, 2);
  lowered(0, 1) = xp * xm * up * up;
  CHECK(gg::prepotential_rejection(hm, lowered) ==
        "prepotential analyticity");

  PolyMatrix constant(ctx, 2, 2);
  constant(0, 1) = up * up;
  CHECK(gg::prepotential_rejection(hm, constant) ==
        "prepotential constant part");

  PolyMatrix good(ctx, 2, 2);
  good(0, 1) = xp * xp;
  CHECK(gg::prepotential_rejection(hm, good) == std::nullopt);

  CHECK_THROWS_WITH_AS((SpinOneSystem(hm, charge1)),
                       "prepotential rejected: prepotential charge",
                       gg::Error);
  // The pipeline class needs the right spin.
  HarmonicModel hm3(3, 1);
  PolyMatrix zero3(hm3.context(), 2, 2);
  CHECK_THROWS_AS((SpinOneSystem(hm3, zero3)), gg::Error);
}

TEST_CASE("hand-built connection with asymmetric curvature fails the "
          "verdict") {
  HarmonicModel hm(1, 2);
  const PolyContext* ctx = hm.context();
  std::vector<PolyMatrix> c(ctx->num_x(), PolyMatrix(ctx, 2, 2));
  // Connection along x[1,1] depending on x[2,2]: the mixed-block curvature
  // is antisymmetric under the block exchange instead of symmetric, and it
  // lives in a plane whose star is the complementary plane, so the
  // Yang-Mills residual survives as well.
  const Poly x22 = Poly::variable(ctx, ctx->x_index(1, 1));
  c[ctx->x_index(0, 0)] = (x22 * x22) * single_nilpotent(ctx);
  CHECK_FALSE(gg::spin_one_half_flat(c));
  const MetricSpace ms = gg::spin_m_space(1, gg::standard_omega_e(2));
  CHECK_FALSE(gg::yang_mills_residual(c, ms).is_zero());
}

TEST_CASE("matrix-valued exterior algebra") {
  HarmonicModel hm(1, 2);
  const PolyContext* ctx = hm.context();
  const Poly x0 = Poly::variable(ctx, 0);
  const Poly x1 = Poly::variable(ctx, 1);
  PolyMatrix m1(ctx, 2, 2), m2(ctx, 2, 2);
  m1(0, 1) = x0 * x1;
  m1(1, 0) = Poly::constant(ctx, Scalar(2));
  m2(0, 0) = x1;
  m2(1, 1) = x0 * x0;

  MatrixForm a(ctx, 2, 1), b(ctx, 2, 1);
  a.add_term({0}, m1);
  a.add_term({2}, m2);
  b.add_term({1}, m2);

  SUBCASE("wedge keeps matrix order and picks up signs") {
    MatrixForm ab = wedge(a, b);
    CHECK(ab.coeff({0, 1}) == m1 * m2);
    CHECK(ab.coeff({1, 2}) == -(m2 * m2));
    MatrixForm ba = wedge(b, a);
    CHECK(ba.coeff({0, 1}) == -(m2 * m1));
  }

  SUBCASE("exterior derivative squares to zero") {
    CHECK(exterior_derivative(exterior_derivative(a)).is_zero());
    MatrixForm two = wedge(a, b);
    CHECK(exterior_derivative(exterior_derivative(two)).is_zero());
  }

  SUBCASE("Leibniz rule for the exterior derivative") {
    // d(a ^ b) = da ^ b - a ^ db for 1-forms.
    CHECK(exterior_derivative(wedge(a, b)) ==
          wedge(exterior_derivative(a), b) -
              wedge(a, exterior_derivative(b)));
    // And with a 2-form on the right: d(ab ^ a) = d(ab) ^ a + ab ^ da.
    MatrixForm ab = wedge(a, b);
    CHECK(exterior_derivative(wedge(ab, a)) ==
          wedge(exterior_derivative(ab), a) +
              wedge(ab, exterior_derivative(a)));
  }

  SUBCASE("repeated index cancels, antisymmetry reorders") {
    MatrixForm f(ctx, 2, 2);
    f.add_term({1, 1}, m1);
    CHECK(f.is_zero());
    f.add_term({1, 0}, m1);
    CHECK(f.coeff({0, 1}) == -m1);
  }

  SUBCASE("double star has the flat-metric sign") {
    const MetricSpace ms = gg::spin_m_space(1, gg::standard_omega_e(2));
    // The model metric is split but has determinant +1, so
    // ** = (-1)^{k(4-k)}: +1 on 2-forms, -1 on 1- and 3-forms.
    MatrixForm two = wedge(a, b);
    CHECK(star(ms, star(ms, two)) == two);
    CHECK(star(ms, star(ms, a)) == -a);
  }
}
