#pragma once

// The exterior square of R^4 and the space of oriented great circles of the
// round 3-sphere, realized as the doubly constrained quadric
//   { xi in Lambda^2 R^4 : <xi, xi> = 1, xi wedge xi = 0 }
// (unit decomposable bivectors xi = p ^ v, the circle through p with
// velocity v).  Charts are tangent-plus-retraction: orthonormal tangent
// coordinates at a base point followed by a Newton projection back onto the
// constraints, so one mechanism serves every base point.
//
// Basis order: e12, e13, e14, e23, e24, e34 (orthonormal for the inner
// product <a^b, c^d> = (a.c)(b.d) - (a.d)(b.c)).

#include <utility>
#include <vector>

#include "parageo/fields.hpp"
#include "parageo/linalg.hpp"

namespace parageo {

template <class T>
VecN<T, 6> wedge(const VecN<T, 4>& a, const VecN<T, 4>& b) {
  VecN<T, 6> w(6);
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) w[k++] = a[i] * b[j] - a[j] * b[i];
  return w;
}

template <class T>
T biv_inner(const VecN<T, 6>& a, const VecN<T, 6>& b) {
  T r{};
  for (int i = 0; i < 6; ++i) r += a[i] * b[i];
  return r;
}

// *e12 = e34, *e13 = -e24, *e14 = e23; symmetric involution, trace 0
template <class T>
VecN<T, 6> hodge_star(const VecN<T, 6>& x) {
  VecN<T, 6> s(6);
  s[0] = x[5];
  s[1] = -x[4];
  s[2] = x[3];
  s[3] = x[2];
  s[4] = -x[1];
  s[5] = x[0];
  return s;
}

MatN<double, 6> hodge_star_matrix();

// xi wedge xi = 2 q(xi) e1234; q = 0 cuts out the decomposable bivectors
template <class T>
T plucker_form(const VecN<T, 6>& x) {
  return x[0] * x[5] - x[1] * x[4] + x[2] * x[3];
}

inline double quadric_residual(const VecN<double, 6>& xi) {
  return std::max(std::abs(value_of(biv_inner(xi, xi)) - 1.0),
                  2.0 * std::abs(value_of(plucker_form(xi))));
}

// Newton projection onto {<xi,xi> = 1, <xi,*xi> = 0}.  Corrections live in
// the span of the two constraint gradients (xi and *xi), which makes the
// projection a smooth map of the input: jet arguments differentiate through
// it.  After the value parts converge, a few extra iterations settle the
// derivative parts of the fixed point.  residual_log, when given, records
// the value-level constraint violation per iterate.
template <class T>
VecN<T, 6> retract_quadric(VecN<T, 6> xi,
                           std::vector<double>* residual_log = nullptr) {
  int settled = -1;
  for (int it = 0; it < 60; ++it) {
    const auto sx = hodge_star(xi);
    const T c1 = biv_inner(xi, xi) - 1.0;
    const T c2 = 2.0 * plucker_form(xi);
    const double res =
        std::max(std::abs(value_of(c1)), std::abs(value_of(c2)));
    if (residual_log) residual_log->push_back(res);
    if (res <= 1e-14 && settled < 0) settled = it;
    if (settled >= 0 && it >= settled + 3) return xi;
    MatN<T, 2> A(2, 2);
    A(0, 0) = 4.0 * biv_inner(xi, xi);
    A(0, 1) = 4.0 * biv_inner(xi, sx);
    A(1, 0) = A(0, 1);
    A(1, 1) = A(0, 0);
    VecN<T, 2> rhs(2);
    rhs[0] = -c1;
    rhs[1] = -c2;
    const auto mu = solve_vec(A, rhs);
    for (int i = 0; i < 6; ++i)
      xi[i] += 2.0 * (mu[0] * xi[i] + mu[1] * sx[i]);
  }
  require(false, "quadric retraction did not converge");
  return xi;
}

// Orthonormal tangent coordinates at a base point of the quadric, closed by
// the Newton retraction.  The tangent space at xi0 is the orthogonal
// complement of span{xi0, *xi0}.
class PlueckerChart {
 public:
  explicit PlueckerChart(const VecN<double, 6>& base);

  const VecN<double, 6>& base() const { return base_; }
  const MatN<double, 6>& frame() const { return frame_; }  // 6x4 columns

  template <class T>
  VecN<T, 6> embed(const VecN<T, 4>& y) const {
    VecN<T, 6> xi(6);
    for (int i = 0; i < 6; ++i) {
      T acc(base_[i]);
      for (int a = 0; a < 4; ++a) acc += frame_(i, a) * y[a];
      xi[i] = acc;
    }
    return retract_quadric(std::move(xi));
  }

  // chart coordinates of a quadric point within the injectivity region:
  // fixed-point iteration y += frame^T (xi - embed(y)).  The contraction is
  // linear, so after the values converge the derivative parts need a tail
  // of further iterations to settle.
  template <class T>
  VecN<T, 4> invert(const VecN<T, 6>& xi) const {
    VecN<T, 4> y(4);
    int settled = -1;
    for (int it = 0; it < 400; ++it) {
      const auto e = embed(y);
      double res = 0;
      for (int a = 0; a < 4; ++a) {
        T acc{};
        for (int i = 0; i < 6; ++i) acc += frame_(i, a) * (xi[i] - e[i]);
        res = std::max(res, std::abs(value_of(acc)));
        y[a] += acc;
      }
      if (res <= 1e-14 && settled < 0) settled = it;
      if (settled >= 0 && it >= settled + 40) return y;
    }
    require(false, "plucker chart inversion did not converge");
    return y;
  }

 private:
  VecN<double, 6> base_;
  MatN<double, 6> frame_;
};

}  // namespace parageo
