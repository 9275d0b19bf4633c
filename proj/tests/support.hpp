#pragma once

// Shared generators for the tests.

#include <cstdint>
#include <random>

#include "sllab/symmat.hpp"

namespace sllab::testing {

inline SymMatrix<double> random_symmetric(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix<double> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  return SymMatrix<double>::symmetric_part(a);
}

/// Product of random Givens rotations over every coordinate plane.
inline OrthMatrix<double> random_orthogonal(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
  auto q = OrthMatrix<double>::identity(n);
  for (int round = 0; round < 2; ++round)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) q = q * givens_rotation<double>(n, i, j, angle(rng));
  return q;
}

/// Random PSD matrix B B^T.
inline SymMatrix<double> random_psd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix<double> b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = normal(rng);
  return SymMatrix<double>::symmetric_part(Matrix<double>(b * b.transpose()));
}

}  // namespace sllab::testing
