#include "sllab/fdsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sllab/errors.hpp"
#include "sllab/family.hpp"
#include "sllab/slop.hpp"

namespace sllab {

namespace {

void check_size(int m) {
  if (m < 5 || m % 2 == 0)
    throw InvalidInput("grid size m must be odd and >= 5, got " + std::to_string(m));
}

// Distance (in nodes) from (row, col) to the nearest boundary line.
int depth(int m, int row, int col) {
  return std::min({row, col, m - 1 - row, m - 1 - col});
}

double second_difference(const Grid2D& g, int row, int col, const Eigen::Vector2i& e, double len,
                         double h) {
  const double center = g(row, col);
  const double forward = g(row + e.y(), col + e.x());
  const double backward = g(row - e.y(), col - e.x());
  const double step = h * len;
  return (forward - 2 * center + backward) / (step * step);
}

enum NodeKind : unsigned char { kFixed = 0, kWide = 1, kAxis = 2 };

}  // namespace

Grid2D::Grid2D(int m) : Grid2D(m, GridValues::Zero(m, m)) {}

Grid2D::Grid2D(int m, GridValues values) : m_(m), h_(0), values_(std::move(values)) {
  check_size(m);
  if (values_.rows() != m || values_.cols() != m)
    throw DimensionMismatch("grid values must be m x m");
  if (!values_.allFinite()) throw InvalidInput("grid values must be finite");
  h_ = 2.0 / (m - 1);
}

double Grid2D::coord(int index) const {
  return static_cast<double>(2 * index - (m_ - 1)) / (m_ - 1);
}

bool Grid2D::is_boundary(int row, int col) const { return depth(m_, row, col) == 0; }

Grid2D Grid2D::sample(int m, const std::function<double(double, double)>& fn) {
  Grid2D g(m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) g(r, c) = fn(g.coord(c), g.coord(r));
  if (!g.values().allFinite()) throw InvalidInput("sampled grid has non-finite values");
  return g;
}

StencilSet::StencilSet(std::vector<Eigen::Vector2i> directions)
    : directions_(std::move(directions)) {
  bool has_x = false, has_y = false;
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    const auto& e = directions_[i];
    if (e.isZero()) throw InvalidInput("stencil: zero direction");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& f = directions_[j];
      if (e.x() * f.y() - e.y() * f.x() == 0)
        throw InvalidInput("stencil: parallel directions");
    }
    has_x = has_x || (e.x() != 0 && e.y() == 0 && std::abs(e.x()) == 1);
    has_y = has_y || (e.x() == 0 && e.y() != 0 && std::abs(e.y()) == 1);
    lengths_.push_back(e.cast<double>().norm());
    reach_ = std::max({reach_, std::abs(e.x()), std::abs(e.y())});
  }
  if (!has_x || !has_y) throw InvalidInput("stencil: (1,0) and (0,1) are required");
}

StencilSet StencilSet::wide() {
  return StencilSet({{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}});
}

StencilSet StencilSet::axis() { return StencilSet({{1, 0}, {0, 1}}); }

double StencilSet::max_length_squared() const {
  int best = 0;
  for (const auto& e : directions_) best = std::max(best, e.squaredNorm());
  return best;
}

Problem2D radial_problem() {
  Problem2D prob;
  prob.name = "radial32";
  prob.phase = [](double x, double y) {
    const double r = std::hypot(x, y);
    if (r == 0) return std::numbers::pi;
    const double s = 1 / std::sqrt(r);
    return std::atan(0.75 * s) + std::atan(1.5 * s);
  };
  auto exact = [](double x, double y) { return std::pow(std::hypot(x, y), 1.5); };
  prob.boundary = exact;
  prob.exact = exact;
  prob.excised = {Eigen::Vector2d::Zero()};
  return prob;
}

Problem2D quadratic_problem(const Eigen::Matrix2d& a) {
  const auto sym = SymMatrix<double>::from_upper(a);
  const double theta = special_lagrangian(sym).value();
  const double a00 = sym(0, 0), a01 = sym(0, 1), a11 = sym(1, 1);
  Problem2D prob;
  prob.name = "quadratic";
  prob.phase = [theta](double, double) { return theta; };
  auto exact = [=](double x, double y) { return 0.5 * (a00 * x * x + 2 * a01 * x * y + a11 * y * y); };
  prob.boundary = exact;
  prob.exact = exact;
  return prob;
}

Problem2D affine_problem(double a, double b, double c) {
  Problem2D prob;
  prob.name = "affine";
  prob.phase = [](double, double) { return 0.0; };
  auto exact = [=](double x, double y) { return a + b * x + c * y; };
  prob.boundary = exact;
  prob.exact = exact;
  return prob;
}

Problem2D counterexample_problem(int k) {
  const Family<double> fam(2, k);
  Problem2D prob;
  prob.name = "counterexample:" + std::to_string(k);
  prob.phase = [fam](double x, double y) {
    Point<double> p(2);
    p << x, y;
    return phase(fam, p).value();
  };
  prob.boundary = [fam](double x, double y) {
    Point<double> p(2);
    p << x, y;
    return subsolution(fam, p);
  };
  return prob;
}

void validate(const Problem2D& prob, int m) {
  check_size(m);
  if (!prob.phase || !prob.boundary) throw InvalidInput("problem needs phase and boundary data");
  const Grid2D f = Grid2D::sample(m, prob.phase);
  if (f.values().cwiseAbs().maxCoeff() > std::numbers::pi)
    throw InvalidInput("phase leaves the closed range [-pi, pi]");
}

std::pair<double, double> hessian_extremes(const Grid2D& grid, int row, int col,
                                           const StencilSet& stencil) {
  const int m = grid.size();
  if (row < 0 || col < 0 || row >= m || col >= m)
    throw InvalidInput("hessian_extremes: node out of range");
  const int d = depth(m, row, col);
  if (d == 0) throw InvalidInput("hessian_extremes: boundary node");
  static const StencilSet axis = StencilSet::axis();
  const StencilSet& used = d >= stencil.reach() ? stencil : axis;
  const auto& dirs = used.directions();
  const auto& lens = used.lengths();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double d2 = second_difference(grid, row, col, dirs[i], lens[i], grid.spacing());
    lo = std::min(lo, d2);
    hi = std::max(hi, d2);
  }
  return {lo, hi};
}

double discrete_operator(const Grid2D& grid, int row, int col, const StencilSet& stencil) {
  const auto [lo, hi] = hessian_extremes(grid, row, col, stencil);
  return std::atan(lo) + std::atan(hi);
}

GridValues residual(const Grid2D& grid, const Problem2D& prob, const StencilSet& stencil) {
  const int m = grid.size();
  GridValues out = GridValues::Zero(m, m);
  for (int r = 1; r < m - 1; ++r)
    for (int c = 1; c < m - 1; ++c)
      out(r, c) = discrete_operator(grid, r, c, stencil) - prob.phase(grid.coord(c), grid.coord(r));
  return out;
}

double default_damping(double h, const StencilSet& stencil) {
  return h * h / (4 * (1 + stencil.max_length_squared()));
}

SolveResult solve(const Problem2D& prob, int m, const StencilSet& stencil,
                  const SolveOptions& options, const Grid2D* initial) {
  validate(prob, m);
  if (!(options.tol > 0)) throw InvalidInput("solve: tol must be > 0");
  if (options.max_iters < 0) throw InvalidInput("solve: max_iters must be >= 0");

  Grid2D w(m);
  const double h = w.spacing();
  const double rho = options.damping > 0 ? options.damping : default_damping(h, stencil);

  std::vector<unsigned char> kind(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      const int d = depth(m, r, c);
      kind[r * m + c] = d == 0 ? kFixed : (d >= stencil.reach() ? kWide : kAxis);
    }
  for (const auto& p : prob.excised) {
    const int c = static_cast<int>(std::lround((p.x() + 1) / h));
    const int r = static_cast<int>(std::lround((p.y() + 1) / h));
    if (r < 0 || c < 0 || r >= m || c >= m || std::abs(w.coord(c) - p.x()) > 1e-12 ||
        std::abs(w.coord(r) - p.y()) > 1e-12)
      throw InvalidInput("solve: excised point is not a grid node");
    kind[r * m + c] = kFixed;
  }

  if (initial) {
    if (initial->size() != m) throw DimensionMismatch("solve: initial grid size");
    w = *initial;
  } else {
    // Transfinite (Coons) interpolation of the boundary data.
    auto g = [&](int r, int c) { return prob.boundary(w.coord(c), w.coord(r)); };
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        const double s = static_cast<double>(c) / (m - 1);
        const double t = static_cast<double>(r) / (m - 1);
        w(r, c) = (1 - s) * g(r, 0) + s * g(r, m - 1) + (1 - t) * g(0, c) + t * g(m - 1, c) -
                  ((1 - s) * (1 - t) * g(0, 0) + s * (1 - t) * g(0, m - 1) +
                   (1 - s) * t * g(m - 1, 0) + s * t * g(m - 1, m - 1));
      }
  }
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      if (kind[r * m + c] == kFixed) w(r, c) = prob.boundary(w.coord(c), w.coord(r));

  const Grid2D f = Grid2D::sample(m, prob.phase);
  const auto& wide_dirs = stencil.directions();
  const auto& wide_lens = stencil.lengths();
  const auto axis = StencilSet::axis();

  GridValues update = GridValues::Zero(m, m);
  SolveResult result{w, 0, 0, false, {}};
  double previous = std::numeric_limits<double>::infinity();
  int growth = 0;

  for (int it = 0;; ++it) {
    double sup = 0;
    for (int r = 1; r < m - 1; ++r)
      for (int c = 1; c < m - 1; ++c) {
        const unsigned char k = kind[r * m + c];
        if (k == kFixed) continue;
        const auto& dirs = k == kWide ? wide_dirs : axis.directions();
        const auto& lens = k == kWide ? wide_lens : axis.lengths();
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
          const double d2 = second_difference(w, r, c, dirs[i], lens[i], h);
          lo = std::min(lo, d2);
          hi = std::max(hi, d2);
        }
        const double res = std::atan(lo) + std::atan(hi) - f(r, c);
        update(r, c) = res;
        sup = std::max(sup, std::abs(res));
      }

    result.history.push_back(sup);
    if (options.log) options.log(it, sup);
    result.iterations = it;
    result.residual = sup;
    if (sup <= options.tol) {
      result.converged = true;
      break;
    }
    if (it >= options.max_iters) break;
    growth = sup > previous ? growth + 1 : 0;
    if (growth >= 100)
      throw SolverFailure("solve: residual grew for 100 consecutive iterations (now " +
                          std::to_string(sup) + ")");
    previous = sup;

    w.values() += rho * update;
    if (!w.values().allFinite()) throw SolverFailure("solve: iterate became non-finite");
  }
  result.grid = w;
  return result;
}

double max_error(const Grid2D& grid, const Problem2D& prob) {
  if (!prob.exact) throw InvalidInput("max_error: problem has no exact solution");
  const Grid2D exact = Grid2D::sample(grid.size(), *prob.exact);
  return (grid.values() - exact.values()).cwiseAbs().maxCoeff();
}

}  // namespace sllab
