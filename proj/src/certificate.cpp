#include "sllab/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sllab/errors.hpp"

namespace sllab {

namespace {

// arctan(l + tau) - arctan(l) without cancellation for large |l|.
double gain_term(double l, double tau) {
  const double denom = 1 + l * (l + tau);
  if (denom > 0) return std::atan(tau / denom);
  if (denom == 0) return std::numbers::pi / 2;
  return std::atan(tau / denom) + std::numbers::pi;
}

}  // namespace

void validate(const DeltaQuery& q) {
  if (q.n < 1) throw InvalidInput("delta: n must be >= 1");
  if (q.n > 3)
    throw UnsupportedDimension("delta: the eigenvalue scan supports n <= 3, got n = " +
                               std::to_string(q.n));
  if (!std::isfinite(q.theta) || std::abs(q.theta) >= Phase<double>::bound(q.n))
    throw InvalidInput("delta: theta must lie strictly inside (-n pi/2, n pi/2)");
  if (!(q.tau > 0) || !std::isfinite(q.tau)) throw InvalidInput("delta: tau must be > 0");
  if (q.resolution < 2) throw InvalidInput("delta: resolution must be >= 2");
  if (!(q.cap > 0) || !std::isfinite(q.cap)) throw InvalidInput("delta: cap must be > 0");
  if (!(q.cap > std::tan(std::abs(q.theta) / q.n)))
    throw InfeasibleQuery("delta: cap " + std::to_string(q.cap) +
                          " cannot reach theta = " + std::to_string(q.theta));
}

std::vector<double> scan_nodes(double cap, int resolution) {
  std::vector<double> nodes(static_cast<std::size_t>(resolution));
  const double top = std::atan(cap);
  for (int j = 0; j < resolution; ++j) {
    const double phi = -top + 2 * top * j / (resolution - 1);
    nodes[j] = std::clamp(std::tan(phi), -cap, cap);
  }
  nodes.front() = -cap;
  nodes.back() = cap;
  return nodes;
}

double solve_last_eigenvalue(double target, double cap) {
  double lo = -cap, hi = cap;
  for (;;) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) return mid;
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) return mid;
    if (std::atan(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
}

double shift_gain(const std::vector<double>& lambda, double tau) {
  double sum = 0;
  for (double l : lambda) sum += gain_term(l, tau);
  return sum;
}

DeltaResult delta(const DeltaQuery& q) {
  validate(q);
  const double limit = std::atan(q.cap);
  const auto nodes = scan_nodes(q.cap, q.resolution);

  DeltaResult best;
  best.delta = std::numeric_limits<double>::infinity();
  auto consider = [&](std::vector<double> lambda) {
    const double g = shift_gain(lambda, q.tau);
    if (g < best.delta) {
      best.delta = g;
      best.argmin = std::move(lambda);
    }
  };

  switch (q.n) {
    case 1:
      if (std::abs(q.theta) <= limit) consider({solve_last_eigenvalue(q.theta, q.cap)});
      break;
    case 2:
      for (double a : nodes) {
        const double rest = q.theta - std::atan(a);
        if (std::abs(rest) > limit) continue;
        consider({a, solve_last_eigenvalue(rest, q.cap)});
      }
      break;
    case 3:
      // The objective and constraint are symmetric, so a <= b suffices.
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double ta = std::atan(nodes[i]);
        for (std::size_t j = i; j < nodes.size(); ++j) {
          const double rest = q.theta - ta - std::atan(nodes[j]);
          if (std::abs(rest) > limit) continue;
          consider({nodes[i], nodes[j], solve_last_eigenvalue(rest, q.cap)});
        }
      }
      break;
  }
  if (best.argmin.empty())
    throw InfeasibleQuery("delta: no scanned eigenvalue vector meets the phase constraint");
  return best;
}

bool comparison_condition_holds(double lo, double hi, int n) {
  return avoids_special_values(lo, hi, n);
}

}  // namespace sllab
