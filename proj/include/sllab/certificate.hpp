#pragma once

// Quantifies the comparison criterion
//
//   delta(theta, tau) = inf { F(X + tau I) - F(X) : F(X) = theta },
//
// which is positive away from the special phase values and degenerates at
// them. F and the shift are simultaneously diagonalizable, so the infimum
// over symmetric matrices is an infimum over eigenvalue vectors
// lambda in [-cap, cap]^n with sum arctan(lambda_i) = theta.

#include <vector>

#include "sllab/slop.hpp"

namespace sllab {

struct DeltaQuery {
  int n = 2;
  double theta = 0;
  double tau = 1;
  /// Eigenvalues are confined to [-cap, cap].
  double cap = 1e3;
  /// Scan nodes per free eigenvalue axis.
  int resolution = 2000;
};

/// Throws if the query invariants fail: n in [1, 3] (n >= 4 is
/// UnsupportedDimension), |theta| < n pi/2, tau > 0, cap > tan(|theta|/n).
void validate(const DeltaQuery& q);

/// Nodes of the scan: tan of a uniform grid on [-atan(cap), atan(cap)], so
/// the scan resolves eigenvalues of order one and of order cap alike.
/// Endpoints are exactly -cap and cap.
std::vector<double> scan_nodes(double cap, int resolution);

/// Solves arctan(lambda) = target for lambda in [-cap, cap] by bisection
/// (tolerance 1e-12 relative to max(1, |lambda|)). Requires
/// |target| <= arctan(cap).
double solve_last_eigenvalue(double target, double cap);

/// sum_i arctan(lambda_i + tau) - arctan(lambda_i)
double shift_gain(const std::vector<double>& lambda, double tau);

struct DeltaResult {
  double delta = 0;
  /// A minimizing eigenvalue vector.
  std::vector<double> argmin;
};

/// Scans n-1 free eigenvalues over scan_nodes and solves the last one from
/// the constraint. Throws InfeasibleQuery when no node combination satisfies
/// the constraint inside the box.
DeltaResult delta(const DeltaQuery& q);

/// Comparison criterion for a phase with range [lo, hi]: the range avoids
/// every special value and stays inside [theta_n, theta_0].
bool comparison_condition_holds(double lo, double hi, int n);

}  // namespace sllab
