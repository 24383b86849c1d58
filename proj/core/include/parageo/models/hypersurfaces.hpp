#pragma once

// Hypersurface families in the product model spaces:
//
//  * SigmaTSphere: points of S^2 x S^2 at extrinsic "angle" t: the second
//    point lies at geodesic distance arccos(t) from the first, swept by the
//    phase alpha.  Null w.r.t. the neutral metric for every t in (-1,1).
//  * SigmaTHyperbolic: the analogue in H^2 x H^2.  For t != 0 this is the
//    equidistant tube <x,y>_L = -1/|t| around the diagonal; the limit t = 0
//    is realized as a synchronized-horocycle hypersurface (level set of a
//    sum of Busemann functions).  Also null for every t.
//  * MabSphere: {<x,a> + <y,b> = 0} in S^2 x S^2: null and minimal.
//  * FlatNullPlane: a hyperplane of R^2 x R^2 whose Euclidean normal is
//    null for the neutral metric; construction rejects non-null normals.
//
// Each family carries closed-form reference data (principal curvatures,
// mean curvature) used as independent oracles by the checks.

#include <functional>

#include "parageo/fields.hpp"
#include "parageo/models/product_spaces.hpp"

namespace parageo {

struct ReferenceData {
  // reference principal curvatures as an unordered triple, up to overall
  // sign (the normal orientation is a gauge choice)
  std::function<std::array<double, 3>(const VecN<double, 4>&)> lambdas;
  std::function<double(const VecN<double, 4>&)> mean_curvature;  // |H|
  bool expect_null = true;
  double rbar = 0.0;
};

class SigmaTSphere : public ImmersionCRTP<SigmaTSphere> {
 public:
  explicit SigmaTSphere(double t);

  Box domain() const override;
  double t() const { return t_; }
  ReferenceData reference() const;

  template <class T>
  void eval_impl(const VecN<T, 4>& y, VecN<T, 4>& out) const {
    const T phi = y[0], psi = y[1], al = y[2];
    const auto x = s2_embed(phi, psi);
    const std::array<T, 3> e1{cos(phi) * cos(psi), cos(phi) * sin(psi),
                              -sin(phi)};
    const std::array<T, 3> e2{-sin(psi), cos(psi), T(0.0)};
    const double w = std::sqrt(1.0 - t_ * t_);
    std::array<T, 3> y2;
    for (int i = 0; i < 3; ++i)
      y2[i] = t_ * x[i] + w * (cos(al) * e1[i] + sin(al) * e2[i]);
    out = VecN<T, 4>(4);
    out[0] = phi;
    out[1] = psi;
    s2_chart(y2, out[2], out[3]);
  }

 private:
  double t_;
};

class SigmaTHyperbolic : public ImmersionCRTP<SigmaTHyperbolic> {
 public:
  explicit SigmaTHyperbolic(double t);

  Box domain() const override;
  double t() const { return t_; }
  ReferenceData reference() const;

  template <class T>
  void eval_impl(const VecN<T, 4>& y, VecN<T, 4>& out) const {
    const T r = y[0], psi = y[1];
    const auto x = h2_embed(r, psi);
    out = VecN<T, 4>(4);
    out[0] = r;
    out[1] = psi;
    std::array<T, 3> y2;
    if (t_ != 0.0) {
      const T al = y[2];
      // Lorentz-orthonormal spacelike frame at x
      const std::array<T, 3> e1{cosh(r) * cos(psi), cosh(r) * sin(psi),
                                sinh(r)};
      const std::array<T, 3> e2{-sin(psi), cos(psi), T(0.0)};
      for (int i = 0; i < 3; ++i)
        y2[i] = cd_ * x[i] + sd_ * (cos(al) * e1[i] + sin(al) * e2[i]);
    } else {
      // (x2 - x1)(y2 - y1) = 1: matched horocycles about the ideal point
      // (0,1,1); the second factor's horocycle is rational in sigma
      const T sig = y[2];
      const T Q = T(1.0) / (x[2] - x[1]);
      const T s2 = T(1.0) + sig * sig;
      y2[0] = sig;
      y2[1] = 0.5 * (s2 / Q - Q);
      y2[2] = 0.5 * (s2 / Q + Q);
    }
    h2_chart(y2, out[2], out[3]);
  }

 private:
  double t_, cd_ = 0.0, sd_ = 0.0;
};

class MabSphere : public ImmersionCRTP<MabSphere> {
 public:
  MabSphere(const std::array<double, 3>& a, const std::array<double, 3>& b);

  Box domain() const override;
  ReferenceData reference() const;
  double pairing(const VecN<double, 4>& y) const;  // s = <x(y), a>

  template <class T>
  void eval_impl(const VecN<T, 4>& y, VecN<T, 4>& out) const {
    const T phi = y[0], psi = y[1], be = y[2];
    const auto x = s2_embed(phi, psi);
    T s{};
    for (int i = 0; i < 3; ++i) s += x[i] * a_[i];
    const T w = sqrt(T(1.0) - s * s);
    std::array<T, 3> y2;
    for (int i = 0; i < 3; ++i)
      y2[i] = -s * b_[i] + w * (cos(be) * b1_[i] + sin(be) * b2_[i]);
    out = VecN<T, 4>(4);
    out[0] = phi;
    out[1] = psi;
    s2_chart(y2, out[2], out[3]);
  }

 private:
  std::array<double, 3> a_, b_, b1_, b2_;
};

class FlatNullPlane : public ImmersionCRTP<FlatNullPlane> {
 public:
  // throws unless n is null for the neutral metric: n1^2+n2^2 = n3^2+n4^2
  explicit FlatNullPlane(const VecN<double, 4>& n);

  Box domain() const override;
  ReferenceData reference() const;
  const VecN<double, 4>& normal() const { return n_; }

  template <class T>
  void eval_impl(const VecN<T, 4>& y, VecN<T, 4>& out) const {
    out = VecN<T, 4>(4);
    for (int i = 0; i < 4; ++i)
      out[i] = y[0] * u_(i, 0) + y[1] * u_(i, 1) + y[2] * u_(i, 2);
  }

 private:
  VecN<double, 4> n_;
  MatN<double, 4> u_;  // orthonormal basis of the hyperplane, columns
};

// graph {x4 = c (x1)^2} in R^2 x R^2: a non-null control surface.  Only the
// x1 direction curves, so the curvature triple is {2c/(1+4c^2 x1^2)^(3/2),
// 0, 0}; the causal character varies along the surface.
class FlatGraph : public ImmersionCRTP<FlatGraph> {
 public:
  explicit FlatGraph(double c = 0.25);

  Box domain() const override;
  ReferenceData reference() const;
  double c_plus(const VecN<double, 4>& y) const;  // closed-form g(PN, N)

  template <class T>
  void eval_impl(const VecN<T, 4>& y, VecN<T, 4>& out) const {
    out = VecN<T, 4>(4);
    out[0] = y[0];
    out[1] = y[1];
    out[2] = y[2];
    out[3] = c_ * y[0] * y[0];
  }

 private:
  double c_;
};

// construction-time sanity: every lattice point of the parameter box must
// land inside the target chart with margins (poles, atan2 branch, axis)
void validate_immersion(const Immersion& F, Surf2 second_factor,
                        const std::array<int, 4>& counts = {4, 4, 4, 1});

}  // namespace parageo
