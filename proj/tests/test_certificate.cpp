#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sllab/certificate.hpp"
#include "sllab/errors.hpp"

using namespace sllab;

constexpr double kPi = std::numbers::pi;

namespace {

DeltaQuery query(int n, double theta, double tau, double cap, int resolution = 2000) {
  DeltaQuery q;
  q.n = n;
  q.theta = theta;
  q.tau = tau;
  q.cap = cap;
  q.resolution = resolution;
  return q;
}

}  // namespace

TEST_CASE("one eigenvalue is pinned by the constraint") {
  CHECK(delta(query(1, 0, 1, 1e3)).delta == doctest::Approx(kPi / 4).epsilon(1e-12));
  const auto r = delta(query(1, 0.5, 2, 1e3));
  CHECK(r.argmin[0] == doctest::Approx(std::tan(0.5)).epsilon(1e-10));
  CHECK(r.delta ==
        doctest::Approx(std::atan(std::tan(0.5) + 2) - 0.5).epsilon(1e-10));
}

TEST_CASE("delta degenerates at the special phase theta_1 = 0") {
  double previous = INFINITY;
  for (double cap : {1e1, 1e2, 1e3, 1e4}) {
    const double d = delta(query(2, 0, 1, cap)).delta;
    CHECK(d < previous);
    CHECK(d <= 2.2 / cap);
    // lambda = (cap, -cap) is feasible, so delta is at most its gain.
    const double pair = std::atan(cap + 1) - std::atan(cap) + std::atan(-cap + 1) - std::atan(-cap);
    CHECK(d <= pair + 1e-12);
    previous = d;
  }
  CHECK(delta(query(2, 0, 1, 1e3)).delta <= 2e-3);
}

TEST_CASE("delta is bounded away from zero at theta = pi/2") {
  // Frozen from an independent dense-scan oracle: the minimum is interior,
  // at lambda = (1/2, 2), where the gain is arctan(3/4).
  const double golden = 0.6435011087932844;
  for (double cap : {1e1, 1e2, 1e3, 1e4}) {
    const auto r = delta(query(2, kPi / 2, 1, cap));
    CHECK(r.delta >= 0.01);
    CHECK(std::abs(r.delta - golden) <= 1e-6);
  }
}

TEST_CASE("delta at theta = -pi/2 is stable across caps") {
  // Frozen from the same oracle; the infimum sits on the cap boundary and
  // tends to pi/4.
  const double d3 = delta(query(2, -kPi / 2, 1, 1e3)).delta;
  const double d4 = delta(query(2, -kPi / 2, 1, 1e4)).delta;
  CHECK(d3 == doctest::Approx(0.7858989139807807).epsilon(1e-9));
  CHECK(d4 == doctest::Approx(0.7854481708980318).epsilon(1e-9));
  CHECK(std::abs(d3 - d4) / d4 < 0.05);
  CHECK(d4 > 0.01);
}

TEST_CASE("delta is non-decreasing in tau") {
  for (int n = 1; n <= 3; ++n)
    for (double theta : {-0.9, 0.0, 0.4, 1.2}) {
      double previous = 0;
      for (double tau : {0.01, 0.1, 0.5, 1.0, 3.0}) {
        const double d = delta(query(n, theta, tau, 100, n == 3 ? 200 : 2000)).delta;
        CHECK(d >= 0);
        CHECK(d >= previous - 1e-12);
        previous = d;
      }
    }
}

TEST_CASE("three dimensions") {
  // pi/2 is the special phase theta_1 for n = 3: (cap, cap, x) with
  // x ~ -cap/2 is feasible and its gain vanishes like 1/cap^2.
  double previous = INFINITY;
  for (double cap : {1e1, 1e2, 1e3}) {
    const double d = delta(query(3, kPi / 2, 1, cap, 400)).delta;
    const double x = solve_last_eigenvalue(kPi / 2 - 2 * std::atan(cap), cap);
    CHECK(d >= 0);
    CHECK(d <= shift_gain({cap, cap, x}, 1) + 1e-12);
    CHECK(d < previous);
    previous = d;
  }
  CHECK(previous <= 1e-4);
  // Away from the special values it stays put.
  const double away = delta(query(3, 1.0, 1, 1e2, 400)).delta;
  CHECK(away == doctest::Approx(delta(query(3, 1.0, 1, 1e3, 400)).delta).epsilon(0.05));
  CHECK(away > 0.01);
}

TEST_CASE("scan helpers") {
  const auto nodes = scan_nodes(1e3, 11);
  CHECK(nodes.front() == -1e3);
  CHECK(nodes.back() == 1e3);
  CHECK(std::abs(nodes[5]) <= 1e-12);
  for (std::size_t i = 1; i < nodes.size(); ++i) CHECK(nodes[i] > nodes[i - 1]);

  for (double target : {-1.5, -0.3, 0.0, 0.7, 1.4}) {
    const double l = solve_last_eigenvalue(target, 1e3);
    CHECK(std::abs(l - std::tan(target)) <= 1e-11 * std::max(1.0, std::abs(l)));
  }
  CHECK(shift_gain({0.0, 0.0}, 1.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  // Accurate for large |lambda| where the naive difference cancels.
  const double big = 1e8;
  const double above = 1.0 / (1 + big * (big + 1));
  const double below = 1.0 / (1 + big * (big - 1));
  CHECK(std::abs(shift_gain({big}, 1.0) - above) <= 1e-12 * above);
  CHECK(std::abs(shift_gain({-big}, 1.0) - below) <= 1e-12 * below);
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(delta(query(4, 0, 1, 10)), UnsupportedDimension);
  CHECK_THROWS_AS(delta(query(0, 0, 1, 10)), InvalidInput);
  CHECK_THROWS_AS(delta(query(2, kPi, 1, 10)), InvalidInput);
  CHECK_THROWS_AS(delta(query(2, 0, 0, 10)), InvalidInput);
  CHECK_THROWS_AS(delta(query(2, 0, 1, 10, 1)), InvalidInput);
  // theta = 3 needs eigenvalues beyond tan(1.5) ~ 14.1.
  CHECK_THROWS_AS(delta(query(2, 3.0, 1, 10)), InfeasibleQuery);
  CHECK_NOTHROW(delta(query(2, 3.0, 1, 100)));
}

TEST_CASE("comparison condition") {
  CHECK(comparison_condition_holds(0.2, 0.9, 2));
  CHECK_FALSE(comparison_condition_holds(-0.1, 0.1, 2));
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k) {
      const double theta = special_phase(n, k).value();
      CHECK_FALSE(comparison_condition_holds(theta - 0.1, theta + 0.1, n));
    }
}
