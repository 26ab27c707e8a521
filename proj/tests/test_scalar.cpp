#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gg/scalar.hpp>

using gg::Scalar;

TEST_CASE("field operations are exact") {
  Scalar a(1, 3), b(1, 6);
  CHECK(a + b == Scalar(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Scalar(1, 18));
  CHECK(a / b == Scalar(2));
  CHECK(-a == Scalar(-1, 3));

  // No drift under repeated accumulation, unlike floating point.
  Scalar tenth(1, 10), sum;
  for (int k = 0; k < 10; ++k) sum += tenth;
  CHECK(sum == Scalar(1));
}

TEST_CASE("complex arithmetic") {
  Scalar i = Scalar::i();
  CHECK(i * i == Scalar(-1));
  Scalar z = Scalar(3) + Scalar(4) * i;
  CHECK(z.conj() == Scalar(3) - Scalar(4) * i);
  CHECK(z * z.conj() == Scalar(25));
  CHECK(z.inverse() == z.conj() / Scalar(25));
  CHECK((z / z) == Scalar(1));
  CHECK_FALSE(z.is_zero());
  CHECK((z - z).is_zero());
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), gg::Error);
  CHECK_THROWS_AS(Scalar(0).inverse(), gg::Error);
}

TEST_CASE("exact square roots of rationals") {
  CHECK(Scalar(4, 9).sqrt_exact() == Scalar(2, 3));
  CHECK(Scalar(1, 81).sqrt_exact() == Scalar(1, 9));
  CHECK(Scalar(0).sqrt_exact() == Scalar(0));
  // 2 has no rational square root.
  CHECK_THROWS_AS(Scalar(2).sqrt_exact(), gg::Error);
  CHECK_THROWS_AS(Scalar(-1).sqrt_exact(), gg::Error);
}

TEST_CASE("double conversion and printing") {
  Scalar z = Scalar(-7, 2) + Scalar(1, 4) * Scalar::i();
  CHECK(z.re_double() == doctest::Approx(-3.5));
  CHECK(z.im_double() == doctest::Approx(0.25));
  CHECK(Scalar(5).str() == "5");
  CHECK(Scalar(-1, 2).str() == "-1/2");
}
