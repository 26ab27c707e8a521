#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gg/expr.hpp>

#include <random>
#include <sstream>
#include <string>

using gg::Ast;
using gg::elaborate;
using gg::HarmonicModel;
using gg::parse;
using gg::ParseError;
using gg::Poly;
using gg::PolyContext;
using gg::PolyMatrix;
using gg::Scalar;
using gg::VarTable;

namespace {

VarTable table_for(const HarmonicModel& hm) {
  VarTable t;
  t.model = &hm;
  t.gauge_rank = 2;
  PolyMatrix n(hm.context(), 2, 2);
  n(0, 1) = Poly::constant(hm.context(), Scalar(1));
  t.named.emplace("N", n);
  return t;
}

/// Generates random well-typed expression strings: scalar subexpressions
/// from numbers, i, variables, sums, products and small powers; matrix
/// subexpressions from the named generator, 2x2 literals and the closure
/// of matrix algebra.
class Generator {
 public:
  Generator(std::mt19937& rng, std::size_t spin, std::size_t rank_e)
      : rng_(rng), spin_(spin), rank_e_(rank_e) {}

  std::string scalar(int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 3);
    switch (pick(rng_)) {
      case 0: return number();
      case 1: return "i";
      case 2: return variable();
      case 3: return analytic();
      case 4: return "(" + scalar(depth - 1) + " + " + scalar(depth - 1) + ")";
      case 5: return "(" + scalar(depth - 1) + " - " + scalar(depth - 1) + ")";
      case 6: return scalar(depth - 1) + " * " + scalar(depth - 1);
      default:
        return "(" + scalar(depth - 1) + ")^" + std::to_string(exp_(rng_));
    }
  }

  std::string matrix(int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 1);
    switch (pick(rng_)) {
      case 0: return "N";
      case 1:
        return "[[" + scalar(1) + ", " + scalar(1) + "], [" + scalar(1) +
               ", " + scalar(1) + "]]";
      case 2: return scalar(depth - 1) + " * " + matrix(depth - 1);
      case 3:
        return "(" + matrix(depth - 1) + " + " + matrix(depth - 1) + ")";
      case 4: return matrix(depth - 1) + " * " + matrix(depth - 1);
      default: return "(-" + matrix(depth - 1) + ")";
    }
  }

 private:
  std::string number() {
    std::ostringstream os;
    os << num_(rng_);
    if (flip_(rng_)) os << "/" << den_(rng_);
    return os.str();
  }

  std::string block() { return std::to_string(1 + idx_(rng_) % rank_e_); }

  std::string variable() {
    if (flip_(rng_)) {
      std::string multi;
      for (std::size_t p = 0; p < spin_; ++p) multi += '1';
      std::size_t twos = idx_(rng_) % (spin_ + 1);
      for (std::size_t p = 0; p < twos; ++p) multi[spin_ - 1 - p] = '2';
      return "x[" + block() + "," + multi + "]";
    }
    return std::string("u[") + (flip_(rng_) ? "+" : "-") + "," +
           std::to_string(1 + idx_(rng_) % 2) + "]";
  }

  std::string analytic() {
    if (spin_ == 1) {
      return std::string(flip_(rng_) ? "xplus" : "xminus") + "[" + block() +
             "]";
    }
    static const char* names[] = {"xppp", "xppm", "xpmm", "xmmm"};
    return std::string(names[idx_(rng_) % 4]) + "[" + block() + "]";
  }

  std::mt19937& rng_;
  std::size_t spin_;
  std::size_t rank_e_;
  std::uniform_int_distribution<int> num_{0, 9};
  std::uniform_int_distribution<int> den_{1, 7};
  std::uniform_int_distribution<int> exp_{0, 2};
  std::uniform_int_distribution<int> idx_{0, 1 << 20};
  std::bernoulli_distribution flip_{0.5};
};

}  // namespace

TEST_CASE("worked-example prepotential elaborates to the hand-built value") {
  HarmonicModel hm(1, 2);
  const VarTable t = table_for(hm);
  const PolyMatrix a = elaborate(parse("xplus[1]^2 * N"), t);
  const PolyMatrix hand =
      (hm.analytic_coord(0, 0) * hm.analytic_coord(0, 0)) * t.named.at("N");
  CHECK(a == hand);
  CHECK(elaborate(parse(a.str()), t) == a);
}

TEST_CASE("scalars promote to multiples of the identity") {
  HarmonicModel hm(1, 2);
  const VarTable t = table_for(hm);
  const PolyMatrix zero = elaborate(parse("0"), t);
  CHECK(zero.is_zero());
  CHECK(zero.rows() == 2);
  CHECK(elaborate(parse("3/2"), t) ==
        Scalar(3, 2) * PolyMatrix::identity(hm.context(), 2));
  // the imaginary unit really squares to -1
  CHECK(elaborate(parse("i*i + 1"), t).is_zero());
}

TEST_CASE("named variables map onto the model layout") {
  HarmonicModel hm3(3, 2);
  VarTable t;
  t.model = &hm3;
  const PolyContext* ctx = hm3.context();
  CHECK(elaborate(parse("x[2,112]"), t)(0, 0) ==
        Poly::variable(ctx, ctx->x_index(1, 1)));
  CHECK(elaborate(parse("x[2,122]"), t)(0, 0) ==
        Poly::variable(ctx, ctx->x_index(1, 2)));
  CHECK(elaborate(parse("u[-,2]"), t)(0, 0) ==
        Poly::variable(ctx, ctx->u_index(false, 1)));
  CHECK(elaborate(parse("xpmm[2]"), t)(0, 0) == hm3.analytic_coord(1, 2));

  HarmonicModel hm1(1, 2);
  VarTable t1;
  t1.model = &hm1;
  CHECK(elaborate(parse("xminus[1]"), t1)(0, 0) == hm1.analytic_coord(0, 1));
}

TEST_CASE("parse errors report line and column") {
  HarmonicModel hm(1, 2);
  const VarTable t = table_for(hm);

  CHECK_THROWS_WITH_AS(parse("xplus[1"), "unexpected end of input at 1:8",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse(""), "unexpected end of input at 1:1",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse("x[1,1] $ 2"), "unexpected character '$' at 1:8",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse("(x[1,1)"), "expected ']', found token ')' at 1:7",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse("3 ^ x[1,1]"),
                       "expected an exponent, found token 'x' at 1:5",
                       ParseError);
  CHECK_THROWS_WITH_AS(parse("1 ^ 1/2"),
                       "exponent must be a small nonnegative integer at 1:5",
                       ParseError);

  // positions survive newlines
  try {
    parse("x[1,1] +\n  @");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 2);
    CHECK(e.pos().column == 3);
  }
}

TEST_CASE("elaboration errors report line and column") {
  HarmonicModel hm(1, 2);
  const VarTable t = table_for(hm);
  const auto bad = [&](const std::string& src, const char* msg) {
    CHECK_THROWS_WITH_AS(elaborate(parse(src), t), msg, ParseError);
  };
  bad("M", "undeclared identifier 'M' at 1:1");
  bad("xppm[1]",
      "analytic coordinate 'xppm' is not valid for spin 1 at 1:1");
  bad("x[1,12]", "multi-index 12 must have length 1 at 1:1");
  bad("x[3,1]", "block index 3 out of range 1..2 at 1:1");
  bad("u[2,1]", "first index of 'u' must be + or - at 1:1");
  bad("x[1]", "'x' takes 2 indices at 1:1");
  bad("N + 1", "cannot add a scalar and a matrix at 1:3");
  bad("[[1, 2], [3]]", "matrix rows of unequal length at 1:1");
  bad("[[N]]", "matrix entries must be scalar at 1:3");

  HarmonicModel hm3(3, 2);
  VarTable t3;
  t3.model = &hm3;
  CHECK_THROWS_WITH_AS(
      elaborate(parse("x[1,211]"), t3),
      "multi-index 211 is not a sorted word over {1, 2} at 1:1", ParseError);
}

TEST_CASE("round-trip stability on a generated corpus") {
  std::mt19937 rng(7321);
  std::size_t count = 0;
  for (std::size_t spin : {std::size_t{1}, std::size_t{3}}) {
    HarmonicModel hm(spin, 2);
    const VarTable t = table_for(hm);
    Generator gen(rng, spin, 2);
    for (int k = 0; k < 100; ++k, ++count) {
      const std::string src =
          (k % 3 == 0) ? gen.matrix(2) : "(" + gen.scalar(2) + ")";
      CAPTURE(src);
      const PolyMatrix first = elaborate(parse(src), t);
      const std::string printed = first.str();
      CAPTURE(printed);
      const PolyMatrix second = elaborate(parse(printed), t);
      CHECK(second == first);
      // the canonical print is a fixed point of parse-print
      CHECK(second.str() == printed);
    }
  }
  CHECK(count == 200);
}
