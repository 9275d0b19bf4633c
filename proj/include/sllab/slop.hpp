#pragma once

// The special Lagrangian potential operator F(X) = sum_i arctan(lambda_i(X))
// and its special phase values.

#include <cmath>
#include <numbers>
#include <string>

#include "sllab/errors.hpp"
#include "sllab/symmat.hpp"

namespace sllab {

/// A phase value together with the dimension it belongs to.
///
/// Values are confined to the closed range [-n pi/2, n pi/2]; the endpoints
/// are never attained by F but are useful for describing ranges.
template <typename Scalar = double>
class Phase {
 public:
  Phase(Scalar value, int n) : value_(value), n_(n) {
    if (n < 1) throw InvalidInput("phase dimension must be >= 1");
    if (!std::isfinite(value) || std::abs(value) > bound(n))
      throw InvalidInput("phase " + std::to_string(static_cast<double>(value)) +
                         " outside [-n pi/2, n pi/2] for n = " + std::to_string(n));
  }

  Scalar value() const { return value_; }
  int dim() const { return n_; }

  /// n pi / 2
  static Scalar bound(int n) { return Scalar(n) * std::numbers::pi_v<Scalar> / Scalar(2); }

  explicit operator Scalar() const { return value_; }

 private:
  Scalar value_;
  int n_;
};

template <typename Scalar>
Phase<Scalar> special_lagrangian(const Spectrum<Scalar>& lambda) {
  Scalar sum = 0;
  for (int i = 0; i < lambda.size(); ++i) sum += std::atan(lambda[i]);
  return Phase<Scalar>(sum, lambda.size());
}

/// F(X) = sum_i arctan(lambda_i(X)).
template <typename Scalar>
Phase<Scalar> special_lagrangian(const SymMatrix<Scalar>& x) {
  return special_lagrangian(eigenvalues(x));
}

/// theta_k = (n - 2k) pi/2, for 0 <= k <= n.
template <typename Scalar = double>
Phase<Scalar> special_phase(int n, int k) {
  if (n < 1) throw InvalidInput("special_phase: n must be >= 1");
  if (k < 0 || k > n)
    throw InvalidInput("special_phase: k = " + std::to_string(k) + " outside [0, " +
                       std::to_string(n) + "]");
  return Phase<Scalar>(Scalar(n - 2 * k) * (std::numbers::pi_v<Scalar> / Scalar(2)), n);
}

/// True iff [lo, hi] lies inside [theta_n, theta_0] and contains none of the
/// special values theta_0, ..., theta_n.
///
/// Takes raw values rather than Phase because the interval being tested may
/// poke outside the admissible range.
template <typename Scalar>
bool avoids_special_values(Scalar lo, Scalar hi, int n) {
  if (n < 1) throw InvalidInput("avoids_special_values: n must be >= 1");
  if (!(lo <= hi)) throw InvalidInput("avoids_special_values: need lo <= hi");
  if (lo < special_phase<Scalar>(n, n).value() || hi > special_phase<Scalar>(n, 0).value())
    return false;
  for (int k = 0; k <= n; ++k) {
    const Scalar theta = special_phase<Scalar>(n, k).value();
    if (lo <= theta && theta <= hi) return false;
  }
  return true;
}

}  // namespace sllab
