#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gg/linalg.hpp>

#include <random>

using gg::Mat;
using gg::Scalar;

namespace {

Mat random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-6, 6);
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(num(rng));
  return m;
}

}  // namespace

TEST_CASE("determinant and inverse on random exact matrices") {
  std::mt19937 rng(7);
  int invertible = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + trial % 4;
    Mat m = random_matrix(rng, n);
    Scalar d = det(m);
    if (d.is_zero()) {
      CHECK_THROWS_AS(inverse(m), gg::SingularMatrixError);
      continue;
    }
    ++invertible;
    Mat mi = inverse(m);
    CHECK(m * mi == Mat::identity(n));
    CHECK(mi * m == Mat::identity(n));
    CHECK(det(mi) == d.inverse());
  }
  CHECK(invertible >= 30);  // degenerate draws should be rare

  // singular matrices must be reported, not silently mis-inverted
  CHECK_THROWS_AS(inverse(Mat(3, 3)), gg::SingularMatrixError);
  Mat s(2, 2);
  s(0, 0) = Scalar(1);
  s(0, 1) = Scalar(2);
  s(1, 0) = Scalar(2);
  s(1, 1) = Scalar(4);
  CHECK_THROWS_AS(inverse(s), gg::SingularMatrixError);
}

TEST_CASE("solve distinguishes consistent from inconsistent systems") {
  Mat a(2, 3);
  a(0, 0) = Scalar(1);
  a(0, 1) = Scalar(2);
  a(0, 2) = Scalar(3);
  a(1, 0) = Scalar(2);
  a(1, 1) = Scalar(4);
  a(1, 2) = Scalar(6);  // second row = 2 * first
  std::vector<Scalar> b{Scalar(1), Scalar(2)}, x;
  REQUIRE(solve(a, b, &x));
  Mat xc(3, 1);
  for (std::size_t i = 0; i < 3; ++i) xc(i, 0) = x[i];
  Mat ax = a * xc;
  CHECK(ax(0, 0) == b[0]);
  CHECK(ax(1, 0) == b[1]);

  b[1] = Scalar(3);  // now incompatible
  CHECK_FALSE(solve(a, b, &x));
}

TEST_CASE("rank and nullspace") {
  Mat a(3, 3);
  a(0, 0) = Scalar(1);
  a(0, 1) = Scalar(2);
  a(1, 1) = Scalar(1);
  a(2, 0) = Scalar(1);
  a(2, 1) = Scalar(3);  // row2 = row0 + row1, rank 2
  CHECK(rank(a) == 2);
  auto ns = nullspace(a);
  REQUIRE(ns.size() == 1);
  Mat v(3, 1);
  for (std::size_t i = 0; i < 3; ++i) v(i, 0) = ns[0][i];
  CHECK((a * v).is_zero());

  CHECK(rank(Mat::identity(4)) == 4);
  CHECK(nullspace(Mat::identity(4)).empty());
}

TEST_CASE("characteristic polynomial (Faddeev-LeVerrier)") {
  // diag(1, 2, 3): p(t) = t^3 - 6 t^2 + 11 t - 6.
  Mat m = Mat::diag({Scalar(1), Scalar(2), Scalar(3)});
  auto p = char_poly(m);
  REQUIRE(p.size() == 4);
  CHECK(p[3] == Scalar(1));
  CHECK(p[2] == Scalar(-6));
  CHECK(p[1] == Scalar(11));
  CHECK(p[0] == Scalar(-6));

  // Cayley-Hamilton on a random matrix.
  std::mt19937 rng(11);
  Mat r = random_matrix(rng, 4);
  auto q = char_poly(r);
  Mat acc(4, 4), power = Mat::identity(4);
  for (std::size_t k = 0; k < q.size(); ++k) {
    acc = acc + q[k] * power;
    power = power * r;
  }
  CHECK(acc.is_zero());
}

TEST_CASE("transpose, trace, symmetry predicates") {
  Mat m(2, 2);
  m(0, 1) = Scalar(5);
  CHECK(m.transpose()(1, 0) == Scalar(5));
  CHECK_FALSE(m.is_symmetric());
  CHECK((m + m.transpose()).is_symmetric());
  CHECK(Mat::identity(3).trace() == Scalar(3));
}
