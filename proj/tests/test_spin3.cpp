#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gg/canonical_forms.hpp>
#include <gg/gauge.hpp>
#include <gg/spin3.hpp>

#include <array>
#include <random>

using gg::decompose_curvature;
using gg::factor_table_mismatch;
using gg::harmonic_curvature;
using gg::HarmonicModel;
using gg::Mat;
using gg::MetricSpace;
using gg::Poly;
using gg::PolyContext;
using gg::PolyMatrix;
using gg::Scalar;
using gg::Spin3Curvature;
using gg::Spin3Mode;
using gg::Spin3System;

namespace {

PolyMatrix single_nilpotent(const PolyContext* ctx) {
  PolyMatrix n(ctx, 2, 2);
  n(0, 1) = Poly::constant(ctx, Scalar(1));
  return n;
}

std::vector<PolyMatrix> random_connection(const PolyContext* ctx,
                                          std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<std::size_t> var(0, ctx->num_x() - 1);
  std::vector<PolyMatrix> c(ctx->num_x(), PolyMatrix(ctx, 2, 2));
  for (auto& m : c) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        Poly p = Poly::constant(ctx, Scalar(coef(rng)));
        p = p + Scalar(coef(rng)) * Poly::variable(ctx, var(rng));
        p = p + Scalar(coef(rng)) * Poly::variable(ctx, var(rng)) *
                    Poly::variable(ctx, var(rng));
        m(i, j) = p;
      }
    }
  }
  return c;
}

}  // namespace

TEST_CASE("curvature split is a bijection on random connections") {
  HarmonicModel hm(3, 2);
  const PolyContext* ctx = hm.context();
  std::mt19937 rng(451);
  for (int trial = 0; trial < 3; ++trial) {
    const std::vector<PolyMatrix> c = random_connection(ctx, rng);
    // decompose_curvature re-checks the reassembly identity internally and
    // throws on any mismatch, so constructing the split is itself a test.
    const Spin3Curvature f = decompose_curvature(c);
    // A generic connection hits all four tensors.
    CHECK_FALSE(f.f0_is_zero());
    CHECK_FALSE(f.f1_is_zero());
    CHECK_FALSE(f.f2_is_zero());
    CHECK_FALSE(f.f3_is_zero());
    // Harmonic contractions of the raw components agree with the ones
    // reassembled from the split, for every field pair on one block pair.
    for (std::size_t k = 0; k <= 3; ++k) {
      for (std::size_t k2 = 0; k2 <= 3; ++k2) {
        CHECK(harmonic_curvature(hm, c, 0, k, 1, k2) ==
              harmonic_curvature(hm, f, 0, k, 1, k2));
      }
    }
  }
}

TEST_CASE("contraction factor table against single split tensors") {
  HarmonicModel hm(3, 2);
  const PolyContext* ctx = hm.context();
  PolyMatrix seed(ctx, 1, 1);
  seed(0, 0) = Poly::constant(ctx, Scalar(1)) +
               Scalar(2) * Poly::variable(ctx, ctx->x_index(1, 2));

  const auto cur = [&](const Spin3Curvature& f, std::size_t k,
                       std::size_t k2) {
    return harmonic_curvature(hm, f, 0, k, 1, k2);
  };

  SUBCASE("f1 rows") {
    for (std::size_t h = 0; h <= 4; ++h) {
      Spin3Curvature f(ctx, 1);
      f.f1(0, 1, h) = seed;
      CHECK(cur(f, 0, 1) == Scalar(12) * f.f1_projection(0, 1, 4));
      CHECK(cur(f, 3, 2) == Scalar(-12) * f.f1_projection(0, 1, 0));
      CHECK(cur(f, 0, 2) == Scalar(24) * f.f1_projection(0, 1, 3));
      CHECK(cur(f, 3, 1) == Scalar(-24) * f.f1_projection(0, 1, 1));
      CHECK(cur(f, 0, 3) == Scalar(36) * f.f1_projection(0, 1, 2));
      CHECK(cur(f, 1, 2) == Scalar(12) * f.f1_projection(0, 1, 2));
      CHECK(cur(f, 1, 1).is_zero());
      CHECK(cur(f, 2, 2).is_zero());
    }
  }
  SUBCASE("f2 rows") {
    for (std::size_t h = 0; h <= 2; ++h) {
      Spin3Curvature f(ctx, 1);
      f.f2(0, 1, h) = seed;
      CHECK(cur(f, 1, 1) == Scalar(-8) * f.f2_projection(0, 1, 2));
      CHECK(cur(f, 2, 2) == Scalar(-8) * f.f2_projection(0, 1, 0));
      CHECK(cur(f, 0, 2) == Scalar(12) * f.f2_projection(0, 1, 2));
      CHECK(cur(f, 3, 1) == Scalar(12) * f.f2_projection(0, 1, 0));
      CHECK(cur(f, 0, 3) == Scalar(36) * f.f2_projection(0, 1, 1));
      CHECK(cur(f, 1, 2) == Scalar(-4) * f.f2_projection(0, 1, 1));
    }
  }
  SUBCASE("f3 rows") {
    Spin3Curvature f(ctx, 1);
    f.f3(0, 1) = seed;
    CHECK(cur(f, 0, 3) == Scalar(36) * f.f3(0, 1));
    CHECK(cur(f, 1, 2) == Scalar(-12) * f.f3(0, 1));
    CHECK(cur(f, 0, 1).is_zero());
    CHECK(cur(f, 1, 1).is_zero());
    CHECK(cur(f, 0, 2).is_zero());
  }
  SUBCASE("f0 feeds the totally raised contraction with weight 36") {
    Spin3Curvature f(ctx, 1);
    f.f0(0, 1, 3) = seed;
    CHECK(cur(f, 0, 0) == Scalar(36) * f.f0_projection(0, 1, 6));
    // ... and contaminates the table rows, which is why the factor table
    // is only claimed on connections whose f0 vanishes.
    CHECK_FALSE(cur(f, 0, 1).is_zero());
  }
}

TEST_CASE("one-partial pipeline on the nilpotent quadratic prepotential") {
  HarmonicModel hm(3, 2);
  const PolyContext* ctx = hm.context();
  const PolyMatrix n = single_nilpotent(ctx);
  const Poly& xppm = hm.analytic_coord(0, 1);
  Spin3System sys(hm, (xppm * xppm) * n, Spin3Mode::one_partial);

  CHECK(sys.gauge_rank() == 2);
  CHECK(sys.bridge().constant_part() == Mat::identity(2));
  CHECK(sys.bridge() * sys.bridge_inverse() == PolyMatrix::identity(ctx, 2));

  // The coordinate coefficients pair each direction with the coordinate of
  // the opposite H-class, with weights -1/6, 1/18, -1/18, 1/6.
  const std::array<Scalar, 4> w = {Scalar(-1, 6), Scalar(1, 18),
                                   Scalar(-1, 18), Scalar(1, 6)};
  for (std::size_t g = 0; g < 4; ++g) {
    const PolyMatrix expect =
        (w[g] * Poly::variable(ctx, ctx->x_index(0, 3 - g))) * n;
    CHECK(sys.coefficient(0, g) == expect);
    CHECK(sys.coefficient(1, g).is_zero());
  }

  const Spin3System::Audit au = sys.audit();
  CHECK(au.harmonic_pair_flat);
  CHECK(au.lowering_ladder);
  CHECK(au.raising_ladder);
  CHECK(au.charge_weights);

  CHECK(sys.zero_partially_flat());
  CHECK(sys.one_partially_flat());
  CHECK_FALSE(sys.curvature_split().f3_is_zero());

  // The surviving tensor shows up in the opposite-weight contractions with
  // the advertised factors.
  const Spin3Curvature& f = sys.curvature_split();
  CHECK(harmonic_curvature(hm, f, 0, 1, 1, 2) == Scalar(-12) * f.f3(0, 1));
  CHECK(harmonic_curvature(hm, f, 0, 0, 1, 3) == Scalar(36) * f.f3(0, 1));
  CHECK(factor_table_mismatch(hm, sys.coordinate_connection()) ==
        std::nullopt);

  // Yang-Mills on the block-symplectic metric.
  const MetricSpace ms = gg::spin_m_space(3, gg::standard_omega_e(2));
  CHECK(gg::yang_mills_residual(sys.coordinate_connection(), ms).is_zero());

  // The zero-partial pipeline accepts the same input and produces the same
  // connection.
  Spin3System flat(hm, (xppm * xppm) * n, Spin3Mode::zero_partial);
  CHECK(flat.audit().all());
  for (std::size_t v = 0; v < ctx->num_x(); ++v) {
    CHECK(flat.coordinate_connection()[v] == sys.coordinate_connection()[v]);
  }
}

TEST_CASE("one-partial pipeline with interacting entries") {
  HarmonicModel hm(3, 2);
  const PolyContext* ctx = hm.context();
  const MetricSpace ms = gg::spin_m_space(3, gg::standard_omega_e(2));
  const Poly xppm0 = hm.analytic_coord(0, 1);
  const Poly xppm1 = hm.analytic_coord(1, 1);

  const auto run = [&](const PolyMatrix& a) {
    REQUIRE_FALSE((a * a).is_zero());  // quadratic terms genuinely active
    Spin3System sys(hm, a, Spin3Mode::one_partial);
    CHECK(sys.audit().all());
    CHECK(sys.one_partially_flat());
    CHECK_FALSE(sys.curvature_split().f3_is_zero());
    CHECK(
        gg::yang_mills_residual(sys.coordinate_connection(), ms).is_zero());
    CHECK(factor_table_mismatch(hm, sys.coordinate_connection()) ==
          std::nullopt);
    Spin3System flat(hm, a, Spin3Mode::zero_partial);
    for (std::size_t v = 0; v < ctx->num_x(); ++v) {
      CHECK(flat.coordinate_connection()[v] ==
            sys.coordinate_connection()[v]);
    }
  };

  PolyMatrix a(ctx, 3, 3);
  a(0, 1) = xppm0 * xppm0;
  a(1, 2) = xppm0 * xppm0;
  run(a);

  PolyMatrix b(ctx, 3, 3);
  b(0, 1) = xppm0 * xppm1;
  b(1, 2) = -(xppm0 * xppm1);
  run(b);
}

TEST_CASE("zero-partial mode accepts the strictly larger analytic class") {
  HarmonicModel hm(3, 2);
  const PolyContext* ctx = hm.context();
  const PolyMatrix n = single_nilpotent(ctx);

  // Annihilated by the top field layer but not by the second one.
  const PolyMatrix weak =
      (hm.analytic_coord(0, 0) * hm.analytic_coord(0, 2)) * n;
  CHECK(gg::prepotential_rejection(hm, weak, 2) ==
        std::optional<std::string>("prepotential analyticity"));
  CHECK(gg::prepotential_rejection(hm, weak, 1) == std::nullopt);

  Spin3System sys(hm, weak, Spin3Mode::zero_partial);
  CHECK(sys.audit().all());
  CHECK(sys.zero_partially_flat());
  CHECK(factor_table_mismatch(hm, sys.coordinate_connection()) ==
        std::nullopt);

  CHECK_THROWS_WITH_AS((Spin3System(hm, weak, Spin3Mode::one_partial)),
                       "prepotential rejected: prepotential analyticity",
                       gg::Error);
}

TEST_CASE("zero-partial output that is not one-partially flat") {
  HarmonicModel hm(3, 2);
  const PolyContext* ctx = hm.context();
  PolyMatrix a(ctx, 3, 3);
  a(0, 1) = hm.analytic_coord(0, 1) * hm.analytic_coord(1, 1);
  a(1, 2) = Scalar(-2) * (hm.analytic_coord(1, 1) * hm.analytic_coord(1, 1));

  // Passes every surface check for the one-partial class ...
  CHECK(gg::prepotential_rejection(hm, a, 2) == std::nullopt);
  // ... but fails the integrability condition on the lowered potential.
  CHECK_THROWS_WITH_AS((Spin3System(hm, a, Spin3Mode::one_partial)),
                       "prepotential rejected: one-partial integrability",
                       gg::Error);

  // The zero-partial pipeline digests it: the totally symmetric tensor is
  // gone, the finer ones genuinely present.
  Spin3System sys(hm, a, Spin3Mode::zero_partial);
  CHECK(sys.audit().all());
  CHECK(sys.zero_partially_flat());
  CHECK_FALSE(sys.one_partially_flat());
  CHECK_FALSE(sys.curvature_split().f1_is_zero());
  CHECK(factor_table_mismatch(hm, sys.coordinate_connection()) ==
        std::nullopt);
}

TEST_CASE("split and pipeline input validation") {
  HarmonicModel hm(3, 2);
  const PolyContext* ctx = hm.context();

  SUBCASE("connection with harmonic dependence is refused") {
    std::vector<PolyMatrix> c(ctx->num_x(), PolyMatrix(ctx, 1, 1));
    c[0](0, 0) = Poly::variable(ctx, ctx->u_index(true, 0));
    CHECK_THROWS_AS(decompose_curvature(c), gg::Error);
  }
  SUBCASE("component accessors enforce the storage order") {
    Spin3Curvature f(ctx, 1);
    CHECK_THROWS_AS(f.f0(0, 0, 0), gg::Error);
    CHECK_THROWS_AS(f.f0(1, 0, 0), gg::Error);
    CHECK_THROWS_AS(f.f1(1, 0, 0), gg::Error);
    CHECK_THROWS_AS(f.f0(0, 1, 7), gg::Error);
    CHECK_THROWS_AS(f.f1_projection(0, 1, 5), gg::Error);
  }
  SUBCASE("cubic extraction rejects other shapes") {
    PolyMatrix m(ctx, 1, 1);
    m(0, 0) = Poly::variable(ctx, ctx->u_index(true, 0)) *
              Poly::variable(ctx, ctx->u_index(true, 1));
    CHECK_THROWS_WITH_AS(gg::split_plus_cubic(m),
                         "matrix is not cubic in u[+]", gg::Error);
  }
  SUBCASE("the pipeline requires a spin-3 model") {
    HarmonicModel one(1, 2);
    PolyMatrix a(one.context(), 2, 2);
    CHECK_THROWS_AS((Spin3System(one, a, Spin3Mode::zero_partial)),
                    gg::Error);
  }
  SUBCASE("wrong charge is rejected by name") {
    const Poly& xppm = hm.analytic_coord(0, 1);
    CHECK_THROWS_WITH_AS(
        (Spin3System(hm, xppm * single_nilpotent(ctx),
                     Spin3Mode::one_partial)),
        "prepotential rejected: prepotential charge", gg::Error);
  }
}
