#pragma once

// Machine checks of the viscosity sub/supersolution property of the
// counterexample family: an analytic certificate that mirrors the proof's
// inequality chain, and randomized quadratic touching probes that try to
// falsify it.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sllab/family.hpp"
#include "sllab/symmat.hpp"

namespace sllab {

enum class Side { above, below };

/// q(x) = value + gradient . (x - center) + (x - center)^T hessian (x - center) / 2
struct Quadratic {
  Point<double> center;
  double value = 0;
  Vector<double> gradient;
  SymMatrix<double> hessian;

  double operator()(const Point<double>& x) const;
  /// Value at center + offset.
  double at_offset(const Vector<double>& offset) const;
};

/// A quadratic that was verified to touch a target at `center` on a local
/// sample set of the given radius.
struct TouchingQuadratic {
  Quadratic quadratic;
  Side side = Side::above;
  double radius = 0;
};

/// Offsets used to verify touching: 5 points per axis direction
/// (-r, -r/2, 0, r/2, r) plus the same two radii along every pairwise
/// diagonal (+-e_i +- e_j)/sqrt(2). The zero offset is omitted.
std::vector<Vector<double>> touching_offsets(int n, double radius);

/// Checks q >= target (side above) or q <= target (side below) at
/// center + offset for all offsets, with q(center) == target(center).
/// `target_values[j]` is the target at center + offsets[j].
bool touches(const Quadratic& q, Side side, double target_at_center,
             const std::vector<Vector<double>>& offsets, const std::vector<double>& target_values);

/// Lower bound from the proof's inequality chain minus f_k(x*):
///
///   sum_{i<=k, x_i=0} (-pi/2) + sum_{i>k} c(x_i) - f_k(x*)
///
/// which equals sum_{i<=k, x_i!=0} c(x_i) >= 0. Returns nullopt when some
/// x*_i = 0 with i > k: no test function touches v_k from above there and the
/// subsolution condition is vacuous.
std::optional<double> subsolution_certificate(const Family<double>& fam, const Point<double>& x);

/// Rigorous form of the first inequality in the chain for a concrete Hessian.
///
/// Touching from above forces the principal block of `hess` on the smooth
/// coordinates S (i > k, plus i <= k with x_i != 0) to dominate the diagonal
/// block D of Hv_k in the Loewner order. Cauchy interlacing then gives
/// lambda_{n-|S|+j}(hess) >= lambda_j(hess_SS) >= lambda_j(D), and F(hess) is
/// bounded below by -(n-|S|) pi/2 + sum_j arctan(lambda_j(D)).
///
/// Returns that bound, or nullopt if hess_SS - D is not PSD to `tol` (hess
/// cannot be the Hessian of a touching test function) or x is a no-touching
/// point.
std::optional<double> interlacing_lower_bound(const Family<double>& fam, const Point<double>& x,
                                              const SymMatrix<double>& hess, double tol = 1e-9);

/// Witness that no quadratic touches v_k from above at a point with
/// x_i = 0, i > k: along the slice x + t e_i the subsolution grows like
/// |t|^p / 2 with p < 2, which beats g t + a t^2 / 2 for small |t|.
struct NoTouchWitness {
  int axis = 0;
  double t = 0;
  /// v(x + t e_i) - q(x + t e_i) > 0
  double excess = 0;
};

/// Finds the witness for quadratic `q` centred at a no-touching point of v_k.
/// Returns nullopt if x has no such axis.
std::optional<NoTouchWitness> no_touching_witness(const Family<double>& fam, const Quadratic& q,
                                                  double radius);

struct Violation {
  Point<double> x;
  double margin = 0;
  std::string what;
};

/// Outcome of a probe at one point, or merged over many.
struct VerificationRecord {
  std::size_t points = 0;
  std::size_t trials = 0;
  /// Candidates that verifiably touched.
  std::size_t touching = 0;
  /// Candidates refuted by a no-touching witness.
  std::size_t witnessed = 0;
  /// Smallest F(Hphi) - f (sub) or f - F(Hpsi) (super) over touching trials.
  double min_margin = std::numeric_limits<double>::infinity();
  /// Certificate value at the point (sub: at x*, super: for v_{n-k} at Jx*).
  std::optional<double> certificate;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
  void merge(const VerificationRecord& other);
};

struct ProbeOptions {
  std::size_t trials = 64;
  double radius = 1e-3;
  std::uint64_t seed = 0;
  /// Slack on F(Hphi) >= f to absorb eigensolver rounding.
  double slack = 1e-9;
};

/// Random quadratics touching v_k from above at x*.
///
/// Candidates are built from the second-order expansion of v_k in its smooth
/// coordinates plus a random PSD part and eps I; kink coordinates (i <= k,
/// x_i = 0) get a random superdifferential slope in (-1, 1) and a random
/// negative curvature. Candidates that do not verifiably touch are discarded.
/// At no-touching points every candidate must instead be refuted by a witness.
VerificationRecord probe_subsolution(const Family<double>& fam, const Point<double>& x,
                                     const ProbeOptions& options);

/// Supersolution check through the reflection phi(x) = -psi(Jx).
///
/// For sampled psi touching u_k from below at x*: phi touches v_{n-k} from
/// above at Jx*, Hpsi = -J Hphi J exactly, F is odd on Hpsi, and
/// F(Hpsi) <= f_k(x*).
VerificationRecord supersolution_by_symmetry(const Family<double>& fam, const Point<double>& x,
                                             const ProbeOptions& options);

/// Structured result of a full verification sweep.
struct VerificationReport {
  int n = 0;
  int k = 0;
  double p = 1.5;
  int grid = 0;
  std::size_t points_checked = 0;
  /// Smallest subsolution certificate margin over admissible points.
  double min_margin = std::numeric_limits<double>::infinity();
  double probe_min_margin = std::numeric_limits<double>::infinity();
  std::size_t probe_trials = 0;
  std::size_t probe_touching = 0;
  std::size_t probe_witnessed = 0;

  struct Check {
    std::string name;
    std::size_t count = 0;
    double worst = 0;
    bool passed = true;
  };
  std::vector<Check> checks;
  std::vector<Violation> violations;

  bool passed() const;
};

struct SweepOptions {
  int grid = 41;
  ProbeOptions probe;
  /// Points on the G^n grid beyond this are subsampled deterministically.
  std::size_t max_points = 100000;
  /// Random points for the symmetry identities.
  std::size_t symmetry_points = 10000;
  /// Worker threads, 0 = worker_threads().
  unsigned threads = 0;
};

/// Nodes of the uniform G^n grid over [-1, 1]^n, capped at max_points.
std::vector<Point<double>> box_grid(int n, int grid, std::size_t max_points, std::uint64_t seed);

/// Runs the certificate and both probes at every grid point.
VerificationReport verify_proposition(const Family<double>& fam, const SweepOptions& options);

/// Family invariants: f(0) = theta_k, v - u at the origin, on the boundary
/// and in the interior, k-independence of v - u, the symmetry identities and
/// the off-axis subsolution gap.
VerificationReport verify_family(const Family<double>& fam, const SweepOptions& options);

/// verify_family followed by verify_proposition, merged into one report.
VerificationReport verify_all(const Family<double>& fam, const SweepOptions& options);

}  // namespace sllab
