#pragma once

// Cyclic Jacobi eigensolver for small symmetric matrices (n <= 6).
// Deterministic: fixed sweep order, eigenvalues sorted ascending,
// each eigenvector's first component above threshold made positive.

#include <algorithm>
#include <cmath>

#include "parageo/linalg.hpp"

namespace parageo {

struct SymEigen {
  VecN<double, 6> values;   // ascending
  MatN<double, 6> vectors;  // columns, orthonormal
  int sweeps = 0;
};

inline double off_norm(const MatN<double, 6>& A) {
  double s = 0.0;
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      if (i != j) s += A(i, j) * A(i, j);
  return std::sqrt(s);
}

inline SymEigen sym_eigen(MatN<double, 6> A) {
  const int n = A.rows;
  require(A.cols == n && n >= 1 && n <= 6, "sym_eigen: bad shape");
  double scale = max_abs(A);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      require(std::abs(A(i, j) - A(j, i)) <= 1e-10 * std::max(1.0, scale),
              "sym_eigen: matrix not symmetric");
  // symmetrize exactly so rotations stay consistent
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double m = 0.5 * (A(i, j) + A(j, i));
      A(i, j) = A(j, i) = m;
    }

  MatN<double, 6> V = MatN<double, 6>::identity(n);
  const double fro = std::max(1e-300, std::sqrt([&] {
                       double s = 0.0;
                       for (int i = 0; i < n; ++i)
                         for (int j = 0; j < n; ++j) s += A(i, j) * A(i, j);
                       return s;
                     }()));
  int sweeps = 0;
  while (off_norm(A) > 1e-15 * fro && sweeps < 60) {
    ++sweeps;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }
  require(off_norm(A) <= 1e-10 * fro, "sym_eigen: no convergence");

  SymEigen out;
  out.sweeps = sweeps;
  std::array<int, 6> perm{};
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.begin() + n,
                   [&](int a, int b) { return A(a, a) < A(b, b); });
  out.values = VecN<double, 6>(n);
  out.vectors = MatN<double, 6>(n, n);
  for (int col = 0; col < n; ++col) {
    const int src = perm[col];
    out.values[col] = A(src, src);
    double flip = 1.0;
    for (int k = 0; k < n; ++k)
      if (std::abs(V(k, src)) > 1e-9) {
        flip = V(k, src) > 0 ? 1.0 : -1.0;
        break;
      }
    for (int k = 0; k < n; ++k) out.vectors(k, col) = flip * V(k, src);
  }
  return out;
}

}  // namespace parageo
