#pragma once

// Monotone wide-stencil finite differences for F(Hw) = f in the square
// [-1, 1]^2 with Dirichlet data.
//
// In two dimensions lambda_1 and lambda_2 of the Hessian are the min and max
// of the second directional derivative over unit directions; the scheme
// replaces them by the min and max of centred second differences over a
// finite set of lattice directions, which keeps it degenerate elliptic.

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sllab {

using GridValues = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Uniform m x m grid on [-1, 1]^2. Row r holds y = -1 + r h, column c holds
/// x = -1 + c h; m is odd so the origin is the centre node.
class Grid2D {
 public:
  explicit Grid2D(int m);
  Grid2D(int m, GridValues values);

  int size() const { return m_; }
  double spacing() const { return h_; }
  /// Exactly symmetric about 0, exact at the ends.
  double coord(int index) const;
  bool is_boundary(int row, int col) const;

  double& operator()(int row, int col) { return values_(row, col); }
  double operator()(int row, int col) const { return values_(row, col); }
  const GridValues& values() const { return values_; }
  GridValues& values() { return values_; }

  /// Samples fn(x, y) at every node.
  static Grid2D sample(int m, const std::function<double(double, double)>& fn);

 private:
  int m_;
  double h_;
  GridValues values_;
};

/// Lattice directions (dx, dy) for the second differences.
class StencilSet {
 public:
  /// Throws InvalidInput on zero, duplicate or parallel directions, or when
  /// (1, 0) or (0, 1) is missing.
  explicit StencilSet(std::vector<Eigen::Vector2i> directions);

  /// (1,0) (0,1) (1,1) (1,-1) (2,1) (1,2) (2,-1) (1,-2)
  static StencilSet wide();
  /// (1,0) (0,1)
  static StencilSet axis();

  const std::vector<Eigen::Vector2i>& directions() const { return directions_; }
  /// Euclidean lengths |e|.
  const std::vector<double>& lengths() const { return lengths_; }
  /// max |e|_inf, the number of node layers a direction reaches.
  int reach() const { return reach_; }
  double max_length_squared() const;

 private:
  std::vector<Eigen::Vector2i> directions_;
  std::vector<double> lengths_;
  int reach_ = 1;
};

struct Problem2D {
  std::string name;
  /// Right-hand side f(x, y).
  std::function<double(double, double)> phase;
  /// Dirichlet data on the boundary and at excised nodes.
  std::function<double(double, double)> boundary;
  std::optional<std::function<double(double, double)>> exact;
  /// Interior points held at `boundary` data instead of being solved for
  /// (a singularity of the phase). Each must coincide with a grid node.
  std::vector<Eigen::Vector2d> excised;
};

/// |x|^(3/2): phase arctan((3/4) r^(-1/2)) + arctan((3/2) r^(-1/2)), equal
/// to pi at the origin by continuous extension. The origin is excised.
Problem2D radial_problem();

/// f = theta = F(A), exact solution x^T A x / 2.
Problem2D quadratic_problem(const Eigen::Matrix2d& a);

/// f = 0, exact solution a + b x + c y.
Problem2D affine_problem(double a, double b, double c);

/// Phase f_k of the n = 2 counterexample family (p = 3/2) with boundary data
/// from the subsolution v_k. No solution is known; this is an experiment.
Problem2D counterexample_problem(int k);

/// Throws InvalidInput if |f| > pi at some node (outside the closed n = 2
/// phase range) or f is not finite.
void validate(const Problem2D& prob, int m);

/// (min, max) of (w(x+he) - 2w(x) + w(x-he)) / (h|e|)^2 over e in S. Nodes
/// whose neighbours are not all inside the grid use the axis stencil.
std::pair<double, double> hessian_extremes(const Grid2D& grid, int row, int col,
                                           const StencilSet& stencil);

/// arctan(lambda_min^h) + arctan(lambda_max^h) at an interior node.
double discrete_operator(const Grid2D& grid, int row, int col, const StencilSet& stencil);

/// F_h(w) - f at interior nodes (excised nodes included), 0 on the boundary.
GridValues residual(const Grid2D& grid, const Problem2D& prob, const StencilSet& stencil);

struct SolveOptions {
  double tol = 1e-8;
  int max_iters = 500000;
  /// Damping rho; 0 selects h^2 / (4 (1 + max|e|^2)).
  double damping = 0;
  /// Called with (iteration, residual) once per iteration when set.
  std::function<void(int, double)> log;
};

struct SolveResult {
  Grid2D grid;
  int iterations = 0;
  /// Sup-norm residual over the solved-for nodes.
  double residual = 0;
  bool converged = false;
  std::vector<double> history;
};

/// Default damping h^2 / (4 (1 + max|e|^2)).
double default_damping(double h, const StencilSet& stencil);

/// Damped explicit iteration w <- w + rho (F_h(w) - f), Jacobi style.
/// Starts from the transfinite interpolant of the boundary data unless an
/// initial grid is given. Throws SolverFailure if the residual grows for 100
/// consecutive iterations.
SolveResult solve(const Problem2D& prob, int m, const StencilSet& stencil,
                  const SolveOptions& options, const Grid2D* initial = nullptr);

/// max |w - exact| over all nodes.
double max_error(const Grid2D& grid, const Problem2D& prob);

}  // namespace sllab
