#pragma once

// Small dense symmetric matrices: cyclic Jacobi eigenvalues, orthogonal
// conjugation, Loewner order and the exchange matrix.
//
// Everything is templated on the scalar type and sized for n <= kMaxDim, so
// storage lives on the stack (Eigen fixed-capacity dynamic matrices).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "sllab/errors.hpp"

namespace sllab {

inline constexpr int kMaxDim = 16;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

template <typename Scalar>
using Matrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

namespace detail {

inline void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw InvalidInput("matrix dimension " + std::to_string(n) + " outside [1, " +
                       std::to_string(kMaxDim) + "]");
}

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& m) {
  return m.allFinite();
}

}  // namespace detail

/// Dense symmetric n x n matrix.
///
/// Symmetry is structural: the class only hands out a symmetric dense view and
/// every constructor mirrors one triangle onto the other.
template <typename Scalar>
class SymMatrix {
 public:
  using Dense = Matrix<Scalar>;

  SymMatrix() : SymMatrix(1) {}

  explicit SymMatrix(int n) {
    detail::check_dim(n);
    a_ = Dense::Zero(n, n);
  }

  /// Reads the upper triangle of `m`; the strictly lower part is ignored.
  template <typename Derived>
  static SymMatrix from_upper(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("matrix is not square");
    SymMatrix out(static_cast<int>(m.rows()));
    out.a_.template triangularView<Eigen::Upper>() = m.template triangularView<Eigen::Upper>();
    out.a_.template triangularView<Eigen::StrictlyLower>() =
        out.a_.transpose().template triangularView<Eigen::StrictlyLower>();
    out.check_finite();
    return out;
  }

  /// Symmetric part (m + m^T)/2 of a square matrix.
  template <typename Derived>
  static SymMatrix symmetric_part(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("matrix is not square");
    SymMatrix out(static_cast<int>(m.rows()));
    out.a_ = (m + m.transpose()) * Scalar(0.5);
    out.check_finite();
    return out;
  }

  static SymMatrix zero(int n) { return SymMatrix(n); }

  static SymMatrix identity(int n) {
    SymMatrix out(n);
    out.a_.setIdentity();
    return out;
  }

  template <typename Derived>
  static SymMatrix diagonal(const Eigen::MatrixBase<Derived>& d) {
    SymMatrix out(static_cast<int>(d.size()));
    out.a_.diagonal() = d;
    out.check_finite();
    return out;
  }

  int dim() const { return static_cast<int>(a_.rows()); }

  Scalar operator()(int i, int j) const { return a_(i, j); }

  /// Sets entries (i, j) and (j, i).
  void set(int i, int j, Scalar value) {
    if (!std::isfinite(value)) throw InvalidInput("non-finite matrix entry");
    a_(i, j) = value;
    a_(j, i) = value;
  }

  const Dense& dense() const { return a_; }

  Scalar trace() const { return a_.trace(); }

  SymMatrix shifted(Scalar tau) const {
    SymMatrix out = *this;
    out.a_.diagonal().array() += tau;
    return out;
  }

  SymMatrix operator-() const {
    SymMatrix out = *this;
    out.a_ = -a_;
    return out;
  }

  friend SymMatrix operator+(const SymMatrix& x, const SymMatrix& y) {
    require_same_dim(x, y);
    SymMatrix out = x;
    out.a_ += y.a_;
    return out;
  }

  friend SymMatrix operator-(const SymMatrix& x, const SymMatrix& y) {
    require_same_dim(x, y);
    SymMatrix out = x;
    out.a_ -= y.a_;
    return out;
  }

  friend SymMatrix operator*(Scalar s, const SymMatrix& x) {
    SymMatrix out = x;
    out.a_ *= s;
    return out;
  }

  static void require_same_dim(const SymMatrix& x, const SymMatrix& y) {
    if (x.dim() != y.dim())
      throw DimensionMismatch("dimensions " + std::to_string(x.dim()) + " and " +
                              std::to_string(y.dim()) + " differ");
  }

 private:
  void check_finite() const {
    if (!detail::all_finite(a_)) throw InvalidInput("non-finite matrix entry");
  }

  Dense a_;
};

/// Eigenvalues sorted ascending.
template <typename Scalar>
class Spectrum {
 public:
  Spectrum() = default;

  /// Sorts `values` ascending.
  explicit Spectrum(Vector<Scalar> values) : values_(std::move(values)) {
    std::sort(values_.data(), values_.data() + values_.size());
  }

  int size() const { return static_cast<int>(values_.size()); }
  Scalar operator[](int i) const { return values_[i]; }
  Scalar min() const { return values_[0]; }
  Scalar max() const { return values_[values_.size() - 1]; }
  const Vector<Scalar>& values() const { return values_; }

 private:
  Vector<Scalar> values_;
};

/// Orthogonal matrix; Q^T Q = I is checked to 1e-12 on construction.
template <typename Scalar>
class OrthMatrix {
 public:
  using Dense = Matrix<Scalar>;

  static constexpr double kTolerance = 1e-12;

  template <typename Derived>
  explicit OrthMatrix(const Eigen::MatrixBase<Derived>& q) : q_(q) {
    if (q_.rows() != q_.cols()) throw DimensionMismatch("matrix is not square");
    detail::check_dim(static_cast<int>(q_.rows()));
    if (!detail::all_finite(q_)) throw InvalidInput("non-finite matrix entry");
    const Scalar defect =
        (q_.transpose() * q_ - Dense::Identity(q_.rows(), q_.cols())).cwiseAbs().maxCoeff();
    if (!(defect <= Scalar(kTolerance)))
      throw InvalidInput("matrix is not orthogonal (max |Q^T Q - I| = " +
                         std::to_string(static_cast<double>(defect)) + ")");
  }

  static OrthMatrix identity(int n) {
    detail::check_dim(n);
    return OrthMatrix(Dense::Identity(n, n));
  }

  int dim() const { return static_cast<int>(q_.rows()); }
  Scalar operator()(int i, int j) const { return q_(i, j); }
  const Dense& dense() const { return q_; }

  OrthMatrix transpose() const { return OrthMatrix(q_.transpose()); }

  friend OrthMatrix operator*(const OrthMatrix& a, const OrthMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("orthogonal factors differ in size");
    return OrthMatrix(a.q_ * b.q_);
  }

 private:
  Dense q_;
};

/// The anti-diagonal permutation (reverse order of coordinates).
template <typename Scalar = double>
OrthMatrix<Scalar> exchange_matrix(int n) {
  detail::check_dim(n);
  Matrix<Scalar> j = Matrix<Scalar>::Zero(n, n);
  for (int i = 0; i < n; ++i) j(i, n - 1 - i) = Scalar(1);
  return OrthMatrix<Scalar>(j);
}

/// Rotation by `angle` in the (i, j) coordinate plane.
template <typename Scalar = double>
OrthMatrix<Scalar> givens_rotation(int n, int i, int j, Scalar angle) {
  detail::check_dim(n);
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw InvalidInput("givens_rotation: bad plane indices");
  Matrix<Scalar> g = Matrix<Scalar>::Identity(n, n);
  const Scalar c = std::cos(angle), s = std::sin(angle);
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = -s;
  g(j, i) = s;
  return OrthMatrix<Scalar>(g);
}

/// Q X Q^T, re-symmetrized so rounding cannot introduce skew.
template <typename Scalar>
SymMatrix<Scalar> conjugate(const SymMatrix<Scalar>& x, const OrthMatrix<Scalar>& q) {
  if (x.dim() != q.dim()) throw DimensionMismatch("conjugate: dimensions differ");
  return SymMatrix<Scalar>::symmetric_part(q.dense() * x.dense() * q.dense().transpose());
}

template <typename Scalar>
struct EigenDecomposition {
  Spectrum<Scalar> values;
  /// Columns are unit eigenvectors, ordered like `values`.
  Matrix<Scalar> vectors;
  int sweeps = 0;
};

inline constexpr int kJacobiSweepCap = 30;

namespace detail {

template <typename Scalar>
Scalar off_diagonal_norm(const Matrix<Scalar>& a) {
  Scalar sum = 0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < j; ++i) sum += a(i, j) * a(i, j);
  return std::sqrt(Scalar(2) * sum);
}

// One plane rotation annihilating a(p, q). The rotation is accumulated into
// `v` when it is non-null.
template <typename Scalar>
void jacobi_rotate(Matrix<Scalar>& a, int p, int q, Matrix<Scalar>* v) {
  const Scalar apq = a(p, q);
  if (apq == Scalar(0)) return;
  const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
  // Smaller root of t^2 + 2 theta t - 1 = 0; |theta|^2 would overflow past
  // 1e150, where t = 1/(2 theta) to working precision.
  const Scalar abs_theta = std::abs(theta);
  Scalar t = abs_theta > Scalar(1e150)
                 ? Scalar(1) / (Scalar(2) * abs_theta)
                 : Scalar(1) / (abs_theta + std::sqrt(Scalar(1) + abs_theta * abs_theta));
  if (theta < 0) t = -t;
  const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
  const Scalar s = t * c;
  const Scalar tau = s / (Scalar(1) + c);
  const int n = static_cast<int>(a.rows());
  // Symmetric update: the diagonal moves by t a(p, q), rows p and q are
  // rotated and mirrored into columns p and q.
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = Scalar(0);
  a(q, p) = Scalar(0);
  for (int k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const Scalar akp = a(k, p), akq = a(k, q);
    const Scalar new_p = akp - s * (akq + tau * akp);
    const Scalar new_q = akq + s * (akp - tau * akq);
    a(k, p) = a(p, k) = new_p;
    a(k, q) = a(q, k) = new_q;
  }
  if (v != nullptr) {
    for (int k = 0; k < n; ++k) {
      const Scalar vkp = (*v)(k, p), vkq = (*v)(k, q);
      (*v)(k, p) = c * vkp - s * vkq;
      (*v)(k, q) = s * vkp + c * vkq;
    }
  }
}

// Cyclic-by-row Jacobi. Stops once the off-diagonal Frobenius norm is below
// 1e-13 * ||X||_F; returns the number of sweeps performed.
template <typename Scalar>
int cyclic_jacobi(Matrix<Scalar>& a, Matrix<Scalar>* v) {
  const Scalar largest = a.cwiseAbs().maxCoeff();
  if (!std::isfinite(largest)) throw InvalidInput("eigenvalues: non-finite matrix entry");
  if (largest == Scalar(0)) return 0;
  // Work on a power-of-two rescaling with entries of order one so the norms
  // below cannot overflow or underflow; the scaling itself is exact.
  int exponent = 0;
  std::frexp(largest, &exponent);
  a = a.unaryExpr([&](Scalar e) { return std::ldexp(e, -exponent); });
  const Scalar target = Scalar(1e-13) * a.norm();
  const int n = static_cast<int>(a.rows());
  for (int sweep = 0;; ++sweep) {
    const Scalar off = off_diagonal_norm(a);
    if (off == Scalar(0) || off < target) {
      a = a.unaryExpr([&](Scalar e) { return std::ldexp(e, exponent); });
      return sweep;
    }
    if (sweep == kJacobiSweepCap)
      throw NumericalFailure("Jacobi eigensolver did not converge in " +
                             std::to_string(kJacobiSweepCap) + " sweeps");
    // Entries this small cannot keep off() above target on their own.
    const Scalar skip = Scalar(1e-3) * target / Scalar(n);
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > skip) jacobi_rotate(a, p, q, v);
  }
}

}  // namespace detail

/// All eigenvalues, ascending, by cyclic Jacobi rotations.
template <typename Scalar>
Spectrum<Scalar> eigenvalues(const SymMatrix<Scalar>& x) {
  Matrix<Scalar> a = x.dense();
  detail::cyclic_jacobi<Scalar>(a, nullptr);
  return Spectrum<Scalar>(a.diagonal());
}

/// Eigenvalues and eigenvectors, X = V diag(values) V^T.
template <typename Scalar>
EigenDecomposition<Scalar> eigen_decompose(const SymMatrix<Scalar>& x) {
  const int n = x.dim();
  Matrix<Scalar> a = x.dense();
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const int sweeps = detail::cyclic_jacobi<Scalar>(a, &v);

  std::array<int, kMaxDim> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::sort(order.begin(), order.begin() + n,
            [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenDecomposition<Scalar> out;
  Vector<Scalar> values(n);
  out.vectors.resize(n, n);
  for (int c = 0; c < n; ++c) {
    values[c] = a(order[c], order[c]);
    out.vectors.col(c) = v.col(order[c]);
  }
  out.values = Spectrum<Scalar>(values);
  out.sweeps = sweeps;
  return out;
}

inline constexpr double kDefaultLoewnerTolerance = 1e-10;

/// X <= Y in the Loewner order: lambda_1(Y - X) >= -tol.
template <typename Scalar>
bool loewner_leq(const SymMatrix<Scalar>& x, const SymMatrix<Scalar>& y,
                 Scalar tol = Scalar(kDefaultLoewnerTolerance)) {
  return eigenvalues(y - x).min() >= -tol;
}

}  // namespace sllab
