#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sllab/errors.hpp"
#include "sllab/family.hpp"
#include "sllab/slop.hpp"
#include "support.hpp"

using namespace sllab;
using sllab::testing::random_orthogonal;
using sllab::testing::random_psd;
using sllab::testing::random_symmetric;

constexpr double kPi = std::numbers::pi;

TEST_CASE("F on simple matrices") {
  for (int n = 1; n <= 8; ++n) CHECK(special_lagrangian(SymMatrix<double>::zero(n)).value() == 0);
  CHECK(special_lagrangian(SymMatrix<double>::identity(2)).value() ==
        doctest::Approx(kPi / 2).epsilon(1e-15));

  // Off-axis Hessian of v_1 at (0.5, 0.25) is diag(0, 3/8 * 0.25^(-1/2)).
  const Family<double> fam(2, 1);
  Point<double> x(2);
  x << 0.5, 0.25;
  const auto h = subsolution_hessian(fam, x);
  CHECK(h(1, 1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(special_lagrangian(h).value() == doctest::Approx(std::atan(0.75)).epsilon(1e-15));
}

TEST_CASE("special phases") {
  CHECK(special_phase(2, 0).value() == kPi);
  CHECK(special_phase(2, 1).value() == 0);
  CHECK(special_phase(2, 2).value() == -kPi);
  CHECK(special_phase(3, 1).value() == doctest::Approx(kPi / 2).epsilon(1e-15));
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(special_phase(n, k).value() == -special_phase(n, n - k).value());
  CHECK_THROWS_AS(special_phase(2, 3), InvalidInput);
  CHECK_THROWS_AS(special_phase(2, -1), InvalidInput);
}

TEST_CASE("Phase range") {
  CHECK_NOTHROW(Phase<double>(kPi, 2));
  CHECK_THROWS_AS(Phase<double>(kPi + 1e-12, 2), InvalidInput);
  CHECK_THROWS_AS(Phase<double>(NAN, 2), InvalidInput);
  CHECK_THROWS_AS(Phase<double>(0, 0), InvalidInput);
  CHECK(Phase<double>::bound(3) == doctest::Approx(1.5 * kPi).epsilon(1e-15));
}

TEST_CASE("avoids special values") {
  CHECK(avoids_special_values(0.1, 1.0, 2));
  CHECK_FALSE(avoids_special_values(-0.5, 0.5, 2));
  CHECK_FALSE(avoids_special_values(-kPi / 2 - 0.1, 0.0, 1));
  CHECK(avoids_special_values(-0.1, 0.0, 1));
  CHECK(avoids_special_values(-1.0, -0.1, 1));
  CHECK_FALSE(avoids_special_values(3.0, 3.2, 2));
  CHECK(avoids_special_values(0.5, 0.5, 3));
  CHECK_THROWS_AS(avoids_special_values(1.0, 0.5, 2), InvalidInput);
}

TEST_CASE("ellipticity") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 8;
    const auto x = random_symmetric(n, rng, 2.0);
    const auto y = x + random_psd(n, rng);
    REQUIRE(loewner_leq(x, y));
    CHECK(special_lagrangian(x).value() <= special_lagrangian(y).value() + 1e-9);
  }
}

TEST_CASE("strict monotone shift") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 8;
    const auto x = random_symmetric(n, rng, 2.0);
    const double f = special_lagrangian(x).value();
    for (double tau : {1e-3, 1.0, 10.0}) CHECK(special_lagrangian(x.shifted(tau)).value() > f);
  }
}

TEST_CASE("oddness") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 8;
    const auto x = random_symmetric(n, rng, 3.0);
    CHECK(std::abs(special_lagrangian(-x).value() + special_lagrangian(x).value()) <= 1e-9);
  }
}

TEST_CASE("rotation invariance") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 8;
    const auto x = random_symmetric(n, rng, 3.0);
    const auto q = random_orthogonal(n, rng);
    CHECK(std::abs(special_lagrangian(conjugate(x, q)).value() - special_lagrangian(x).value()) <=
          1e-9);
  }
}

TEST_CASE("range is open") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 8;
    const auto x = random_symmetric(n, rng, t % 2 ? 1e3 : 1.0);
    CHECK(std::abs(special_lagrangian(x).value()) < n * kPi / 2);
  }
}
