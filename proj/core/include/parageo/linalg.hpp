#pragma once

// Fixed-capacity dense vectors/matrices over an arbitrary scalar (double or
// jet).  Sizes are runtime values bounded by the capacity; everything lives
// on the stack.  Pivoting decisions always use the innermost double value.

#include <array>
#include <cmath>

#include "parageo/jet.hpp"

namespace parageo {

template <class S, int Cap = 4>
struct VecN {
  std::array<S, Cap> e{};
  int n = 0;

  VecN() = default;
  explicit VecN(int n_) : n(n_) {}
  S& operator[](int i) { return e[i]; }
  const S& operator[](int i) const { return e[i]; }
};

template <class S, int Cap = 4>
struct MatN {
  std::array<S, Cap * Cap> e{};
  int rows = 0, cols = 0;

  MatN() = default;
  MatN(int r, int c) : rows(r), cols(c) {}
  S& operator()(int i, int j) { return e[i * Cap + j]; }
  const S& operator()(int i, int j) const { return e[i * Cap + j]; }

  static MatN identity(int n) {
    MatN m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1.0);
    return m;
  }
};

using Vec4 = VecN<double, 4>;
using Mat4 = MatN<double, 4>;
using Vec6 = VecN<double, 6>;
using Mat6 = MatN<double, 6>;

// ---- elementwise ----

template <class S, int C>
VecN<S, C> operator+(const VecN<S, C>& a, const VecN<S, C>& b) {
  VecN<S, C> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i] = a[i] + b[i];
  return r;
}
template <class S, int C>
VecN<S, C> operator-(const VecN<S, C>& a, const VecN<S, C>& b) {
  VecN<S, C> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i] = a[i] - b[i];
  return r;
}
template <class S, int C>
VecN<S, C> operator-(const VecN<S, C>& a) {
  VecN<S, C> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i] = -a[i];
  return r;
}
template <class S, int C, class K>
VecN<S, C> operator*(const K& c, const VecN<S, C>& a) {
  VecN<S, C> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i] = c * a[i];
  return r;
}
template <class S, int C>
MatN<S, C> operator+(const MatN<S, C>& a, const MatN<S, C>& b) {
  MatN<S, C> r(a.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}
template <class S, int C>
MatN<S, C> operator-(const MatN<S, C>& a, const MatN<S, C>& b) {
  MatN<S, C> r(a.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}
template <class S, int C, class K>
MatN<S, C> operator*(const K& c, const MatN<S, C>& a) {
  MatN<S, C> r(a.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r(i, j) = c * a(i, j);
  return r;
}

// ---- products ----

template <class S, int C>
S dot(const VecN<S, C>& a, const VecN<S, C>& b) {
  S r{};
  for (int i = 0; i < a.n; ++i) r += a[i] * b[i];
  return r;
}

// bilinear form u^T G v
template <class S, int C>
S inner(const MatN<S, C>& G, const VecN<S, C>& u, const VecN<S, C>& v) {
  S r{};
  for (int i = 0; i < G.rows; ++i)
    for (int j = 0; j < G.cols; ++j) r += u[i] * G(i, j) * v[j];
  return r;
}

template <class S, int C>
VecN<S, C> matvec(const MatN<S, C>& A, const VecN<S, C>& x) {
  VecN<S, C> r(A.rows);
  for (int i = 0; i < A.rows; ++i) {
    S acc{};
    for (int j = 0; j < A.cols; ++j) acc += A(i, j) * x[j];
    r[i] = acc;
  }
  return r;
}

template <class S, int C>
MatN<S, C> matmul(const MatN<S, C>& A, const MatN<S, C>& B) {
  MatN<S, C> r(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < B.cols; ++j) {
      S acc{};
      for (int k = 0; k < A.cols; ++k) acc += A(i, k) * B(k, j);
      r(i, j) = acc;
    }
  return r;
}

template <class S, int C>
MatN<S, C> transpose(const MatN<S, C>& A) {
  MatN<S, C> r(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) r(j, i) = A(i, j);
  return r;
}

template <class S, int C>
S trace(const MatN<S, C>& A) {
  S r{};
  for (int i = 0; i < A.rows; ++i) r += A(i, i);
  return r;
}

// ---- Gaussian elimination with partial pivoting (pivot on |double value|) --

// solves A X = B in place of copies; B may have several right-hand sides
template <class S, int C>
MatN<S, C> solve(MatN<S, C> A, MatN<S, C> B) {
  const int n = A.rows;
  require(A.cols == n && B.rows == n, "solve: shape mismatch");
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(A(col, col)));
    for (int r = col + 1; r < n; ++r) {
      const double cand = std::abs(value_of(A(r, col)));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    require(best > 0.0, "solve: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
      for (int j = 0; j < B.cols; ++j) std::swap(B(col, j), B(piv, j));
    }
    const S inv_p = S(1.0) / A(col, col);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const S f = A(r, col) * inv_p;
      for (int j = col; j < n; ++j) A(r, j) = A(r, j) - f * A(col, j);
      for (int j = 0; j < B.cols; ++j) B(r, j) = B(r, j) - f * B(col, j);
    }
  }
  MatN<S, C> X(n, B.cols);
  for (int i = 0; i < n; ++i) {
    const S inv_p = S(1.0) / A(i, i);
    for (int j = 0; j < B.cols; ++j) X(i, j) = B(i, j) * inv_p;
  }
  return X;
}

template <class S, int C>
VecN<S, C> solve_vec(const MatN<S, C>& A, const VecN<S, C>& b) {
  MatN<S, C> B(A.rows, 1);
  for (int i = 0; i < A.rows; ++i) B(i, 0) = b[i];
  MatN<S, C> X = solve(A, B);
  VecN<S, C> x(A.rows);
  for (int i = 0; i < A.rows; ++i) x[i] = X(i, 0);
  return x;
}

template <class S, int C>
MatN<S, C> inverse(const MatN<S, C>& A) {
  return solve(A, MatN<S, C>::identity(A.rows));
}

template <class S, int C>
S det(MatN<S, C> A) {
  const int n = A.rows;
  S d = S(1.0);
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(A(col, col)));
    for (int r = col + 1; r < n; ++r) {
      const double cand = std::abs(value_of(A(r, col)));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == 0.0) return S(0.0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
      sign = -sign;
    }
    const S inv_p = S(1.0) / A(col, col);
    for (int r = col + 1; r < n; ++r) {
      const S f = A(r, col) * inv_p;
      for (int j = col; j < n; ++j) A(r, j) = A(r, j) - f * A(col, j);
    }
    d = d * A(col, col);
  }
  return sign < 0 ? -d : d;
}

// max |entry value|
template <class S, int C>
double max_abs(const MatN<S, C>& A) {
  double m = 0.0;
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      m = std::max(m, std::abs(value_of(A(i, j))));
  return m;
}
template <class S, int C>
double max_abs(const VecN<S, C>& a) {
  double m = 0.0;
  for (int i = 0; i < a.n; ++i) m = std::max(m, std::abs(value_of(a[i])));
  return m;
}

template <class T, class S, int C>
VecN<T, C> convert(const VecN<S, C>& a) {
  VecN<T, C> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i] = T(a[i]);
  return r;
}

// value parts of a jet-valued vector/matrix
template <class S, int C>
VecN<double, C> values(const VecN<S, C>& a) {
  VecN<double, C> r(a.n);
  for (int i = 0; i < a.n; ++i) r[i] = value_of(a[i]);
  return r;
}
template <class S, int C>
MatN<double, C> values(const MatN<S, C>& A) {
  MatN<double, C> r(A.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) r(i, j) = value_of(A(i, j));
  return r;
}

// branch-free cofactor expansion; unlike the pivoted det() this keeps jet
// parts exact when the value part is singular
template <class S>
S det3(const MatN<S, 4>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// 4D "cross product": covector  N_j = eps_{j k l m} t1^k t2^l t3^m,
// returned with the index still down.
template <class S>
VecN<S, 4> eps_cross(const VecN<S, 4>& t1, const VecN<S, 4>& t2,
                     const VecN<S, 4>& t3) {
  VecN<S, 4> r(4);
  MatN<S, 4> M(3, 4);
  for (int j = 0; j < 4; ++j) {
    M(0, j) = t1[j];
    M(1, j) = t2[j];
    M(2, j) = t3[j];
  }
  for (int j = 0; j < 4; ++j) {
    MatN<S, 4> m3(3, 3);
    int cc = 0;
    for (int c = 0; c < 4; ++c) {
      if (c == j) continue;
      for (int rr = 0; rr < 3; ++rr) m3(rr, cc) = M(rr, c);
      ++cc;
    }
    const S d = det3(m3);
    r[j] = (j % 2 == 0) ? d : -d;
  }
  return r;
}

}  // namespace parageo
