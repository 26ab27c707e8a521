#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gg/form.hpp>

#include <random>

using gg::Form;
using gg::IndexTuple;
using gg::Mat;
using gg::MetricSpace;
using gg::Scalar;

namespace {

Form random_form(std::mt19937& rng, std::size_t n, std::size_t k) {
  std::uniform_int_distribution<int> num(-5, 5);
  Form f(n, k);
  for (const auto& idx : gg::increasing_tuples(n, k))
    f.add_term(idx, Scalar(num(rng)));
  return f;
}

}  // namespace

TEST_CASE("add_term sorts indices and picks up the sign") {
  Form f(4, 2);
  f.add_term({2, 0}, Scalar(3));
  CHECK(f.coeff({0, 2}) == Scalar(-3));
  f.add_term({0, 2}, Scalar(3));  // cancels
  CHECK(f.is_zero());

  Form g(4, 3);
  g.add_term({1, 1, 2}, Scalar(7));  // repeated index: vanishes
  CHECK(g.is_zero());
}

TEST_CASE("wedge is graded-commutative and associative") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 5;
    Form a = random_form(rng, n, 1);
    Form b = random_form(rng, n, 2);
    Form c = random_form(rng, n, 2);
    // a ^ b = (-1)^{1*2} b ^ a = b ^ a;  b ^ c = c ^ b (even degrees).
    CHECK(wedge(a, b) == wedge(b, a));
    CHECK(wedge(b, c) == wedge(c, b));
    // odd ^ odd anticommutes
    Form a2 = random_form(rng, n, 1);
    CHECK(wedge(a, a2) == -wedge(a2, a));
    CHECK(wedge(a, a).is_zero());
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    // bilinearity
    CHECK(wedge(a, b + c) == wedge(a, b) + wedge(a, c));
  }
}

TEST_CASE("hodge star on euclidean R^4") {
  MetricSpace ms = MetricSpace::euclidean(4);
  Form e12(4, 2), e34(4, 2), e13(4, 2), e24(4, 2);
  e12.add_term({0, 1}, Scalar(1));
  e34.add_term({2, 3}, Scalar(1));
  e13.add_term({0, 2}, Scalar(1));
  e24.add_term({1, 3}, Scalar(1));
  CHECK(star(ms, e12) == e34);
  CHECK(star(ms, e34) == e12);
  CHECK(star(ms, e13) == -e24);

  // alpha ^ star(beta) == <alpha,beta> vol, for random pairs.
  std::mt19937 rng(5);
  Form vol(4, 4);
  vol.add_term({0, 1, 2, 3}, Scalar(1));
  for (int trial = 0; trial < 10; ++trial) {
    Form a = random_form(rng, 4, 2), b = random_form(rng, 4, 2);
    CHECK(wedge(a, star(ms, b)) == inner(ms, a, b) * vol);
  }
}

TEST_CASE("star squared signs across degrees and signatures") {
  std::mt19937 rng(9);
  for (std::size_t n = 4; n <= 6; ++n) {
    for (int lor = 0; lor <= 1; ++lor) {
      MetricSpace ms =
          lor ? MetricSpace::lorentz(n) : MetricSpace::euclidean(n);
      Scalar sg = lor ? Scalar(-1) : Scalar(1);  // sign(det g)
      for (std::size_t p = 0; p <= n; ++p) {
        Form f = random_form(rng, n, p);
        int exp = static_cast<int>(p * (n - p));
        Scalar expect = (exp % 2 ? Scalar(-1) : Scalar(1)) * sg;
        CHECK(star(ms, star(ms, f)) == expect * f);
      }
    }
  }
}

TEST_CASE("star with non-diagonal exact metric") {
  // g = L^T L for an exact invertible L: positive definite, det a square.
  Mat l(3, 3);
  l(0, 0) = Scalar(1);
  l(0, 1) = Scalar(2);
  l(1, 1) = Scalar(1);
  l(1, 2) = Scalar(-1);
  l(2, 2) = Scalar(2);
  MetricSpace ms(l.transpose() * l);
  std::mt19937 rng(13);
  Form vol(3, 3);
  vol.add_term({0, 1, 2}, ms.vol_coeff());
  for (int trial = 0; trial < 10; ++trial) {
    Form a = random_form(rng, 3, 1), b = random_form(rng, 3, 1);
    CHECK(wedge(a, star(ms, b)) == inner(ms, a, b) * vol);
  }
}

TEST_CASE("volume coefficient override is validated") {
  // |det| = 1 has the exact square root 1 even for indefinite signature
  MetricSpace lor(Mat::diag({Scalar(1), Scalar(-1)}));
  CHECK(lor.vol_coeff() == Scalar(1));
  // |det| = 2 is not a rational square: the caller must orient the space,
  // and no rational coefficient squares to +-2
  Mat g = Mat::diag({Scalar(2), Scalar(1)});
  CHECK_THROWS_AS((MetricSpace(g)), gg::Error);
  CHECK_THROWS_AS((MetricSpace(g, Scalar(3))), gg::Error);
  // purely imaginary coefficient: square is -det, accepted
  MetricSpace neg(Mat::diag({Scalar(1), Scalar(4)}),
                  Scalar(2) * Scalar::i());
  CHECK(neg.vol_coeff() == Scalar(2) * Scalar::i());
  // degenerate gram matrix is rejected
  CHECK_THROWS_AS((MetricSpace(Mat(2, 2), Scalar(1))), gg::Error);
}

TEST_CASE("pullback is an algebra map and respects composition") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(-3, 3);
  Mat l(4, 3), m(3, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) l(i, j) = Scalar(num(rng));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = Scalar(num(rng));

  Form a = random_form(rng, 4, 1), b = random_form(rng, 4, 2);
  CHECK(pullback(wedge(a, b), l) == wedge(pullback(a, l), pullback(b, l)));
  CHECK(pullback(pullback(b, l), m) == pullback(b, l * m));

  // identity map pulls back to the identity
  CHECK(pullback(b, Mat::identity(4)) == b);
}

TEST_CASE("pullback under rotation preserves the euclidean star") {
  // rational rotation: 2x2 block [[3/5,4/5],[-4/5,3/5]] + identity
  Mat r = Mat::identity(4);
  r(0, 0) = Scalar(3, 5);
  r(0, 1) = Scalar(4, 5);
  r(1, 0) = Scalar(-4, 5);
  r(1, 1) = Scalar(3, 5);
  MetricSpace ms = MetricSpace::euclidean(4);
  std::mt19937 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    Form b = random_form(rng, 4, 2);
    CHECK(pullback(star(ms, b), r) == star(ms, pullback(b, r)));
  }
}

TEST_CASE("printing uses 1-based frame labels") {
  Form f(4, 2);
  f.add_term({0, 1}, Scalar(1));
  f.add_term({2, 3}, Scalar(-2));
  CHECK(f.str() == "(1)*e_1_2 + (-2)*e_3_4");
  CHECK(Form(4, 2).str() == "0");
}
