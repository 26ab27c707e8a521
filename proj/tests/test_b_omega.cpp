#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gg/b_omega.hpp>

#include <random>

using gg::Form;
using gg::Mat;
using gg::MetricSpace;
using gg::Scalar;

namespace {

Form random_form(std::mt19937& rng, std::size_t n, std::size_t k) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Form f(n, k);
  for (const auto& idx : gg::increasing_tuples(n, k))
    f.add_term(idx, Scalar(num(rng), den(rng)));
  return f;
}

}  // namespace

TEST_CASE("definition and contraction formula agree on random data") {
  // Both metric signatures in every dimension 4..8; exact equality.
  std::mt19937 rng(20240917);
  int runs = 0;
  for (std::size_t n = 4; n <= 8; ++n) {
    for (int lor = 0; lor <= 1; ++lor) {
      MetricSpace ms =
          lor ? MetricSpace::lorentz(n) : MetricSpace::euclidean(n);
      for (int trial = 0; trial < 12; ++trial) {
        Form omega = random_form(rng, n, 4);
        Form w = random_form(rng, n, 2);
        CHECK(b_omega_def(ms, omega, w) == b_omega_contract(ms, omega, w));
        ++runs;
      }
    }
  }
  CHECK(runs >= 100);
}

TEST_CASE("agreement persists for non-diagonal exact metrics") {
  // g = L^T L with unit determinant after scaling; still exact.
  Mat l = Mat::identity(4);
  l(0, 1) = Scalar(1, 2);
  l(1, 2) = Scalar(-2);
  l(2, 3) = Scalar(3, 5);
  MetricSpace ms(l.transpose() * l);
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    Form omega = random_form(rng, 4, 4);
    Form w = random_form(rng, 4, 2);
    CHECK(b_omega_def(ms, omega, w) == b_omega_contract(ms, omega, w));
  }
}

TEST_CASE("B of the volume form is the hodge star on 2-forms") {
  MetricSpace ms = MetricSpace::euclidean(4);
  Form vol(4, 4);
  vol.add_term({0, 1, 2, 3}, Scalar(1));
  for (const auto& idx : gg::increasing_tuples(4, 2)) {
    Form e(4, 2);
    e.add_term(idx, Scalar(1));
    CHECK(b_omega_def(ms, vol, e) == star(ms, e));
  }
  // spectrum: +1 on self-dual (dim 3), -1 on anti-self-dual (dim 3)
  auto spec = gg::exact_spectrum(b_omega_matrix(ms, vol));
  REQUIRE(spec.has_value());
  REQUIRE(spec->clusters.size() == 2);
  CHECK(spec->clusters[0].value == Scalar(1));
  CHECK(spec->clusters[0].multiplicity == 3);
  CHECK(spec->clusters[1].value == Scalar(-1));
  CHECK(spec->clusters[1].multiplicity == 3);
  CHECK(spec->appropriate);
}

TEST_CASE("B is traceless and self-adjoint for the induced metric") {
  std::mt19937 rng(77);
  for (std::size_t n = 4; n <= 6; ++n) {
    for (int lor = 0; lor <= 1; ++lor) {
      MetricSpace ms =
          lor ? MetricSpace::lorentz(n) : MetricSpace::euclidean(n);
      Form omega = random_form(rng, n, 4);
      Mat b = b_omega_matrix(ms, omega);
      CHECK(b.trace() == Scalar(0));
      Mat g2 = gg::lambda2_gram(ms);
      CHECK(g2 * b.transpose() == b * g2);
    }
  }
}

TEST_CASE("exact and floating spectra agree on a rational fixture") {
  // Omega = square of the standard 2-form on R^6; spectrum {4, 2, -2}.
  MetricSpace ms = MetricSpace::euclidean(6);
  Form omega(6, 4);
  omega.add_term({0, 1, 2, 3}, Scalar(2));
  omega.add_term({0, 1, 4, 5}, Scalar(2));
  omega.add_term({2, 3, 4, 5}, Scalar(2));
  Mat b = b_omega_matrix(ms, omega);

  auto ex = gg::exact_spectrum(b);
  REQUIRE(ex.has_value());
  Mat g2 = gg::lambda2_gram(ms);
  auto fl = gg::float_spectrum(b, &g2);
  REQUIRE(ex->clusters.size() == fl.clusters.size());
  std::size_t total = 0;
  for (std::size_t k = 0; k < ex->clusters.size(); ++k) {
    CHECK(ex->clusters[k].multiplicity == fl.clusters[k].multiplicity);
    CHECK(ex->clusters[k].value.re_double() ==
          doctest::Approx(fl.clusters[k].value_f).epsilon(1e-12));
    total += ex->clusters[k].multiplicity;
    // every exact eigenvector actually satisfies B v = lambda v
    for (const auto& v : ex->clusters[k].eigenbasis) {
      Mat col(b.rows(), 1);
      for (std::size_t i = 0; i < v.size(); ++i) col(i, 0) = v[i];
      CHECK(b * col == ex->clusters[k].value * col);
    }
  }
  CHECK(total == b.rows());
}

TEST_CASE("selfduality checks, exact and tolerant") {
  MetricSpace ms = MetricSpace::euclidean(4);
  Form vol(4, 4);
  vol.add_term({0, 1, 2, 3}, Scalar(1));
  Form sd(4, 2);  // self-dual: e^{12} + e^{34}
  sd.add_term({0, 1}, Scalar(1));
  sd.add_term({2, 3}, Scalar(1));
  CHECK(gg::selfduality_check(ms, vol, sd, Scalar(1)));
  CHECK_FALSE(gg::selfduality_check(ms, vol, sd, Scalar(-1)));
  CHECK(gg::selfduality_check_tol(ms, vol, sd, 1.0));
  CHECK_FALSE(gg::selfduality_check_tol(ms, vol, sd, 1.0 + 1e-6));
  CHECK(gg::selfduality_check_tol(ms, vol, sd, 1.0 + 1e-12));
}

TEST_CASE("irrational eigenvalues fall back to the floating path") {
  // Omega = e^{1234} + e^{1235}: minimal polynomial has nonrational roots.
  MetricSpace ms = MetricSpace::euclidean(5);
  Form omega(5, 4);
  omega.add_term({0, 1, 2, 3}, Scalar(1));
  omega.add_term({0, 1, 2, 4}, Scalar(1));
  Mat b = b_omega_matrix(ms, omega);
  auto ex = gg::exact_spectrum(b);
  CHECK_FALSE(ex.has_value());
  Mat g2 = gg::lambda2_gram(ms);
  auto fl = gg::float_spectrum(b, &g2);
  std::size_t total = 0;
  for (const auto& c : fl.clusters) total += c.multiplicity;
  CHECK(total == b.rows());
}
