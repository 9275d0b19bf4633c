#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>

#include "sllab/errors.hpp"
#include "sllab/fdsolve.hpp"

using namespace sllab;

constexpr double kPi = std::numbers::pi;

namespace {

Problem2D constant_problem(std::string name, double theta,
                           std::function<double(double, double)> boundary) {
  Problem2D prob;
  prob.name = std::move(name);
  prob.phase = [theta](double, double) { return theta; };
  prob.boundary = std::move(boundary);
  return prob;
}

SolveOptions tight(double tol) {
  SolveOptions o;
  o.tol = tol;
  return o;
}

}  // namespace

TEST_CASE("grid geometry") {
  const Grid2D g(5);
  CHECK(g.spacing() == 0.5);
  CHECK(g.coord(0) == -1);
  CHECK(g.coord(2) == 0);
  CHECK(g.coord(4) == 1);
  CHECK(g.is_boundary(0, 2));
  CHECK(g.is_boundary(3, 4));
  CHECK_FALSE(g.is_boundary(1, 3));
  CHECK_THROWS_AS(Grid2D(4), InvalidInput);
  CHECK_THROWS_AS(Grid2D(3), InvalidInput);

  const auto s = Grid2D::sample(5, [](double x, double y) { return 10 * y + x; });
  CHECK(s(0, 4) == -9);  // row y = -1, column x = 1
  CHECK(s(4, 0) == 9);
  CHECK_THROWS_AS(Grid2D::sample(5, [](double, double) { return NAN; }), InvalidInput);
}

TEST_CASE("stencil validation") {
  const auto wide = StencilSet::wide();
  CHECK(wide.directions().size() == 8);
  CHECK(wide.reach() == 2);
  CHECK(wide.max_length_squared() == 5);
  CHECK(StencilSet::axis().reach() == 1);
  CHECK_THROWS_AS(StencilSet({{1, 0}, {0, 1}, {2, 0}}), InvalidInput);
  CHECK_THROWS_AS(StencilSet({{1, 0}, {0, 1}, {-1, -1}, {1, 1}}), InvalidInput);
  CHECK_THROWS_AS(StencilSet({{1, 0}, {1, 1}}), InvalidInput);
  CHECK_THROWS_AS(StencilSet({{1, 0}, {0, 1}, {0, 0}}), InvalidInput);
}

TEST_CASE("hessian extremes on exact data") {
  const auto wide = StencilSet::wide();
  const auto affine = Grid2D::sample(9, [](double x, double y) { return 3 - 2 * x + 0.5 * y; });
  for (int r = 1; r < 8; ++r)
    for (int c = 1; c < 8; ++c) {
      const auto [lo, hi] = hessian_extremes(affine, r, c, wide);
      CHECK(std::abs(lo) <= 1e-10);
      CHECK(std::abs(hi) <= 1e-10);
    }

  const auto bowl = Grid2D::sample(9, [](double x, double y) { return 0.5 * (x * x + y * y); });
  const auto [lo, hi] = hessian_extremes(bowl, 4, 4, wide);
  CHECK(lo == doctest::Approx(1).epsilon(1e-12));
  CHECK(hi == doctest::Approx(1).epsilon(1e-12));

  // Second differences of a quadratic are exact Rayleigh quotients e^T A e / |e|^2.
  std::mt19937_64 rng(51);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 20; ++t) {
    Eigen::Matrix2d a;
    a << normal(rng), normal(rng), 0, normal(rng);
    a(1, 0) = a(0, 1);
    const Eigen::Vector2d l = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(a).eigenvalues();
    const auto g = Grid2D::sample(9, [&](double x, double y) {
      return 0.5 * (a(0, 0) * x * x + 2 * a(0, 1) * x * y + a(1, 1) * y * y);
    });
    const auto [qlo, qhi] = hessian_extremes(g, 4, 4, wide);
    CHECK(qlo >= l[0] - 1e-9);
    CHECK(qhi <= l[1] + 1e-9);
    CHECK(qlo <= qhi);
    // Eight directions resolve the extremes to within the angular gap.
    CHECK(qlo - l[0] <= 0.2 * (l[1] - l[0]) + 1e-9);
    CHECK(l[1] - qhi <= 0.2 * (l[1] - l[0]) + 1e-9);
  }

  CHECK_THROWS_AS(hessian_extremes(bowl, 0, 4, wide), InvalidInput);
  CHECK_THROWS_AS(hessian_extremes(bowl, 4, 9, wide), InvalidInput);
  // Depth-one nodes fall back to the axis stencil.
  const auto [blo, bhi] = hessian_extremes(bowl, 1, 4, wide);
  CHECK(blo == doctest::Approx(1).epsilon(1e-12));
  CHECK(bhi == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("residual") {
  const auto zero = constant_problem("zero", 0, [](double, double) { return 0.0; });
  CHECK(residual(Grid2D(9), zero, StencilSet::wide()).cwiseAbs().maxCoeff() == 0);

  const auto radial = radial_problem();
  const auto wide = StencilSet::wide();
  double previous = INFINITY;
  for (int m : {17, 33, 65}) {
    const auto exact = Grid2D::sample(m, *radial.exact);
    const auto res = residual(exact, radial, wide);
    // Ignore the excised origin, where the phase is the limit value pi.
    double sup = 0;
    for (int r = 1; r < m - 1; ++r)
      for (int c = 1; c < m - 1; ++c)
        if (!(r == m / 2 && c == m / 2)) sup = std::max(sup, std::abs(res(r, c)));
    MESSAGE("radial residual of the exact solution, m = " << m << ": " << sup);
    CHECK(sup < previous);
    previous = sup;
  }
}

TEST_CASE("discrete monotonicity") {
  std::mt19937_64 rng(52);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> bump(0.0, 0.1);
  const auto wide = StencilSet::wide();
  for (int t = 0; t < 200; ++t) {
    Grid2D g(9);
    for (int r = 0; r < 9; ++r)
      for (int c = 0; c < 9; ++c) g(r, c) = 0.1 * normal(rng);
    const int row = 1 + static_cast<int>(rng() % 7);
    const int col = 1 + static_cast<int>(rng() % 7);
    const double before = discrete_operator(g, row, col, wide);
    Grid2D up = g;
    const int dr = static_cast<int>(rng() % 5) - 2, dc = static_cast<int>(rng() % 5) - 2;
    if (dr == 0 && dc == 0) {
      up(row, col) += bump(rng);
      CHECK(discrete_operator(up, row, col, wide) <= before);
    } else if (row + dr >= 0 && row + dr < 9 && col + dc >= 0 && col + dc < 9) {
      up(row + dr, col + dc) += bump(rng);
      CHECK(discrete_operator(up, row, col, wide) >= before);
    }
  }
}

TEST_CASE("affine data is reproduced") {
  const auto prob = affine_problem(0.3, -0.7, 1.1);
  const auto res = solve(prob, 17, StencilSet::wide(), tight(1e-12));
  CHECK(res.converged);
  CHECK(max_error(res.grid, prob) <= 1e-8);
}

TEST_CASE("quadratic problems") {
  // Axis-aligned quadratics are discrete solutions: every second difference
  // lies between the two axis ones.
  Eigen::Matrix2d diag;
  diag << 0.8, 0, 0, 2.5;
  const auto aligned = quadratic_problem(diag);
  const auto res = solve(aligned, 17, StencilSet::wide(), tight(1e-10));
  CHECK(res.converged);
  CHECK(max_error(res.grid, aligned) <= 1e-8);

  // A rotated one carries the angular discretization error.
  const double c = std::cos(0.3), s = std::sin(0.3);
  Eigen::Matrix2d q;
  q << c, -s, s, c;
  const Eigen::Matrix2d a = q * diag * q.transpose();
  const auto rotated = quadratic_problem(a);
  const double theta = rotated.phase(0, 0);
  CHECK(theta == doctest::Approx(std::atan(0.8) + std::atan(2.5)).epsilon(1e-12));
  const auto r2 = solve(rotated, 17, StencilSet::wide(), tight(1e-9));
  CHECK(r2.converged);
  CHECK(max_error(r2.grid, rotated) <= 0.05);
}

TEST_CASE("radial problem converges") {
  // Frozen from an independent numpy implementation of the same scheme.
  const auto prob = radial_problem();
  const auto res = solve(prob, 17, StencilSet::wide(), SolveOptions{});
  CHECK(res.converged);
  CHECK(res.residual <= 1e-8);
  CHECK(max_error(res.grid, prob) == doctest::Approx(0.0032470260987086663).epsilon(1e-6));
  for (std::size_t i = 1; i < res.history.size(); ++i)
    CHECK(res.history[i] <= res.history[i - 1] * (1 + 1e-12));
  // The origin keeps its boundary value.
  CHECK(res.grid(8, 8) == 0);
}

TEST_CASE("residual is non-increasing") {
  Eigen::Matrix2d a;
  a << 1.5, 0.4, 0.4, -0.3;
  std::vector<Problem2D> probs = {quadratic_problem(a), affine_problem(1, 2, 3),
                                  constant_problem("bumpy", 1.0, [](double x, double y) {
                                    return std::sin(3 * x) * std::cos(2 * y);
                                  })};
  for (const auto& prob : probs) {
    SolveOptions opts;
    opts.tol = 1e-9;
    const auto res = solve(prob, 17, StencilSet::wide(), opts);
    CHECK(res.converged);
    for (std::size_t i = 1; i < res.history.size(); ++i)
      CHECK(res.history[i] <= res.history[i - 1] * (1 + 1e-12));
  }
}

TEST_CASE("discrete comparison with ordered boundary data") {
  const auto wide = StencilSet::wide();
  const auto phase = [](double x, double y) { return 1.5 + 0.6 * std::sin(2 * x + y); };
  const std::function<double(double, double)> lower[] = {
      [](double x, double y) { return 0.5 * (x * x + y * y); },
      [](double x, double y) { return x - y; },
      [](double x, double) { return std::abs(x); },
      [](double, double) { return 0.0; },
      [](double x, double y) { return std::sin(x * y); },
  };
  const std::function<double(double, double)> gap[] = {
      [](double, double) { return 0.1; },
      [](double x, double) { return 0.05 * (1 + x); },
      [](double x, double y) { return x * x * y * y; },
      [](double, double y) { return y > 0 ? y : 0.0; },
      [](double x, double y) { return 0.2 + 0.1 * std::cos(5 * x * y); },
  };
  for (int i = 0; i < 5; ++i) {
    Problem2D a, b;
    a.phase = b.phase = phase;
    a.boundary = lower[i];
    b.boundary = [&, i](double x, double y) { return lower[i](x, y) + gap[i](x, y); };
    const auto ra = solve(a, 17, wide, tight(1e-11));
    const auto rb = solve(b, 17, wide, tight(1e-11));
    CHECK(ra.converged);
    CHECK(rb.converged);
    const double worst = (ra.grid.values() - rb.grid.values()).maxCoeff();
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("solver errors") {
  const auto wide = StencilSet::wide();
  Problem2D bad = constant_problem("big", kPi + 0.1, [](double, double) { return 0.0; });
  CHECK_THROWS_AS(solve(bad, 9, wide, SolveOptions{}), InvalidInput);

  auto prob = affine_problem(0, 1, 0);
  CHECK_THROWS_AS(solve(prob, 8, wide, SolveOptions{}), InvalidInput);
  CHECK_THROWS_AS(solve(prob, 9, wide, tight(0)), InvalidInput);

  auto off_grid = radial_problem();
  off_grid.excised = {Eigen::Vector2d(0.1, 0.0)};
  CHECK_THROWS_AS(solve(off_grid, 9, wide, SolveOptions{}), InvalidInput);

  // Past the stability limit a checkerboard perturbation of a discrete
  // solution is amplified by about 1.16 per iteration.
  Eigen::Matrix2d diag;
  diag << 0.8, 0, 0, 2.5;
  const auto quad = quadratic_problem(diag);
  Grid2D start = Grid2D::sample(17, *quad.exact);
  for (int r = 1; r < 16; ++r)
    for (int c = 1; c < 16; ++c) start(r, c) += (r + c) % 2 ? 1e-12 : -1e-12;
  SolveOptions wild;
  wild.tol = 1e-14;
  const double h = 2.0 / 16;
  wild.damping = 0.72 * h * h;
  CHECK_THROWS_AS(solve(quad, 17, wide, wild, &start), SolverFailure);
  wild.damping = 0;
  wild.tol = 1e-10;
  CHECK(solve(quad, 17, wide, wild, &start).converged);

  SolveOptions short_run;
  short_run.max_iters = 3;
  const auto partial = solve(radial_problem(), 17, wide, short_run);
  CHECK_FALSE(partial.converged);
  CHECK(partial.iterations == 3);
  CHECK(partial.history.size() == 4);

  CHECK_THROWS_AS(max_error(partial.grid, counterexample_problem(1)), InvalidInput);
}

TEST_CASE("counterexample data runs") {
  SolveOptions opts;
  opts.max_iters = 200;
  std::vector<double> seen;
  opts.log = [&](int, double r) { seen.push_back(r); };
  const auto res = solve(counterexample_problem(1), 17, StencilSet::wide(), opts);
  CHECK(seen.size() == res.history.size());
  CHECK(res.grid.values().allFinite());
}
