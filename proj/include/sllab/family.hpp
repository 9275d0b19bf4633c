#pragma once

// The counterexample family on the box Omega = {|x_i| < 1}:
//
//   subsolution    v(x) = 1/4 - sum_{i<=k} |x_i| + sum_{i>k} |x_i|^p / 2
//   supersolution  u(x) = -v_{n-k}(Jx)
//   phase          f(x) = -sum_{i<=k} c(x_i) + sum_{i>k} c(x_i)
//   c(t)           = arctan(a_p |t|^(p-2)),  a_p = p(p-1)/2,  c(0) = pi/2
//
// The default exponent p = 3/2 gives a_p = 3/8.

#include <cmath>
#include <numbers>
#include <string>

#include "sllab/errors.hpp"
#include "sllab/slop.hpp"
#include "sllab/symmat.hpp"

namespace sllab {

template <typename Scalar = double>
using Point = Vector<Scalar>;

template <typename Scalar = double>
class Family {
 public:
  static constexpr double kDefaultExponent = 1.5;

  Family(int n, int k, Scalar p = Scalar(kDefaultExponent)) : n_(n), k_(k), p_(p) {
    detail::check_dim(n);
    if (k < 0 || k > n)
      throw InvalidInput("family: k = " + std::to_string(k) + " outside [0, " +
                         std::to_string(n) + "]");
    if (!(p > Scalar(1) && p < Scalar(2)))
      throw InvalidInput("family: exponent must lie strictly between 1 and 2");
    a_ = p_ * (p_ - Scalar(1)) / Scalar(2);
  }

  int dim() const { return n_; }
  int index() const { return k_; }
  Scalar exponent() const { return p_; }
  /// p(p-1)/2, the second derivative coefficient of |t|^p / 2.
  Scalar coefficient() const { return a_; }

  /// The family with k replaced by n - k (the one the supersolution reflects).
  Family dual() const { return Family(n_, n_ - k_, p_); }

  void require_dim(const Point<Scalar>& x) const {
    if (x.size() != n_)
      throw DimensionMismatch("point has " + std::to_string(x.size()) + " coordinates, family " +
                              std::to_string(n_));
  }

 private:
  int n_;
  int k_;
  Scalar p_;
  Scalar a_;
};

/// The box {x : max |x_i| < 1}.
struct DomainBox {
  int n;

  template <typename Scalar>
  bool contains(const Point<Scalar>& x) const {
    return x.size() == n && x.cwiseAbs().maxCoeff() < Scalar(1);
  }

  template <typename Scalar>
  bool on_boundary(const Point<Scalar>& x) const {
    return x.size() == n && x.cwiseAbs().maxCoeff() == Scalar(1);
  }
};

/// Jx: coordinates in reverse order.
template <typename Scalar>
Point<Scalar> reflect(const Point<Scalar>& x) {
  return x.reverse();
}

/// v_k(x)
template <typename Scalar>
Scalar subsolution(const Family<Scalar>& fam, const Point<Scalar>& x) {
  fam.require_dim(x);
  Scalar value = Scalar(0.25);
  for (int i = 0; i < fam.dim(); ++i) {
    const Scalar t = std::abs(x[i]);
    if (i < fam.index())
      value -= t;
    else
      value += std::pow(t, fam.exponent()) / Scalar(2);
  }
  return value;
}

/// u_k(x) = -v_{n-k}(Jx)
template <typename Scalar>
Scalar supersolution(const Family<Scalar>& fam, const Point<Scalar>& x) {
  fam.require_dim(x);
  return -subsolution(fam.dual(), reflect(x));
}

/// c(t) = arctan(a_p |t|^(p-2)), continuously extended by pi/2 at t = 0.
template <typename Scalar>
Scalar phase_term(const Family<Scalar>& fam, Scalar t) {
  if (t == Scalar(0)) return std::numbers::pi_v<Scalar> / Scalar(2);
  return std::atan(fam.coefficient() * std::pow(std::abs(t), fam.exponent() - Scalar(2)));
}

/// f_k(x), continuously extended onto the axes.
///
/// On-axis terms are accumulated as an exact multiple of pi/2 so that
/// f_k(0) reproduces (n - 2k) pi/2 bit for bit.
template <typename Scalar>
Phase<Scalar> phase(const Family<Scalar>& fam, const Point<Scalar>& x) {
  fam.require_dim(x);
  int axis_count = 0;
  Scalar sum = 0;
  for (int i = 0; i < fam.dim(); ++i) {
    const int sign = i < fam.index() ? -1 : 1;
    if (x[i] == Scalar(0))
      axis_count += sign;
    else
      sum += Scalar(sign) * phase_term(fam, x[i]);
  }
  const Scalar on_axis = Scalar(axis_count) * (std::numbers::pi_v<Scalar> / Scalar(2));
  return Phase<Scalar>(on_axis + sum, fam.dim());
}

/// Hessian of v_k where it is smooth: diag(0, ..., 0, a_p |x_i|^(p-2), ...),
/// the nonzero block covering i > k.
template <typename Scalar>
SymMatrix<Scalar> subsolution_hessian(const Family<Scalar>& fam, const Point<Scalar>& x) {
  fam.require_dim(x);
  Vector<Scalar> d = Vector<Scalar>::Zero(fam.dim());
  for (int i = fam.index(); i < fam.dim(); ++i) {
    if (x[i] == Scalar(0))
      throw OffAxisRequired("subsolution Hessian needs x_" + std::to_string(i + 1) + " != 0");
    d[i] = fam.coefficient() * std::pow(std::abs(x[i]), fam.exponent() - Scalar(2));
  }
  return SymMatrix<Scalar>::diagonal(d);
}

/// v_k(x) - u_k(x). Independent of k.
template <typename Scalar>
Scalar difference(const Family<Scalar>& fam, const Point<Scalar>& x) {
  return subsolution(fam, x) - supersolution(fam, x);
}

}  // namespace sllab
