#pragma once

// The space of oriented great circles of S^3, charted through the bivector
// quadric (bivector.hpp), as a fourth model space:
//
//  * GeodesicMetric: pullback of the flat Lambda^2 R^4 inner product.  Under
//    xi -> (xi + *xi, xi - *xi)/2 the quadric is a product of two round
//    2-spheres of radius 1/sqrt(2), so the metric is Einstein with scalar
//    curvature 8.
//  * HodgeStructure: the Hodge star, which preserves every tangent space of
//    the quadric and restricts to a parallel isometric paracomplex
//    structure; its +1/-1 eigenplanes are the two sphere factors.
//  * SurfaceInSpaceForm: closed-form surfaces of S^3 (geodesic spheres,
//    the Clifford torus) with principal frames and curvatures.
//  * TangentialCongruence: the 3-parameter family of great circles tangent
//    to such a surface, a null hypersurface of the quadric.  Carries the
//    closed-form predictions {0, k1 cos^2 th + k2 sin^2 th, -k1 sin^2 th
//    - k2 cos^2 th} for the principal curvatures of the congruence through
//    the surface data; these are reference values for the checks, not
//    inputs to the computation.

#include <utility>

#include "parageo/bivector.hpp"
#include "parageo/models/hypersurfaces.hpp"

namespace parageo {

// chart centered at the circle e1 ^ e2
PlueckerChart standard_chart();

class GeodesicMetric : public MetricFieldCRTP<GeodesicMetric> {
 public:
  explicit GeodesicMetric(PlueckerChart chart) : chart_(std::move(chart)) {}
  GeodesicMetric() : GeodesicMetric(standard_chart()) {}

  int dim() const override { return 4; }
  Box domain() const override;
  const PlueckerChart& chart() const { return chart_; }

  // G_ab = <d_a Phi, d_b Phi> via one internal jet layer over the chart
  template <class T>
  void eval_impl(const VecN<T, 4>& y, MatN<T, 4>& G) const {
    if constexpr (std::is_same_v<T, Jet2c>) {
      throw std::runtime_error("parageo: geodesic metric jet depth exceeded");
    } else {
      const auto e = chart_.embed(lift_vars(y, 4));
      G = MatN<T, 4>(4, 4);
      for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
          T acc{};
          for (int i = 0; i < 6; ++i) acc += e[i].g[a] * e[i].g[b];
          G(a, b) = acc;
          if (b > a) G(b, a) = acc;
        }
    }
  }

 private:
  PlueckerChart chart_;
};

// P = G^{-1} Qt with Qt_ab = <d_a Phi, * d_b Phi>
class HodgeStructure : public EndoFieldCRTP<HodgeStructure> {
 public:
  explicit HodgeStructure(PlueckerChart chart) : chart_(std::move(chart)) {}
  HodgeStructure() : HodgeStructure(standard_chart()) {}

  int dim() const override { return 4; }

  template <class T>
  void eval_impl(const VecN<T, 4>& y, MatN<T, 4>& P) const {
    if constexpr (std::is_same_v<T, Jet2c>) {
      throw std::runtime_error("parageo: hodge structure jet depth exceeded");
    } else {
      const auto e = chart_.embed(lift_vars(y, 4));
      const auto se = hodge_star(e);
      MatN<T, 4> G(4, 4), Q(4, 4);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          T ga{}, qa{};
          for (int i = 0; i < 6; ++i) {
            ga += e[i].g[a] * e[i].g[b];
            qa += e[i].g[a] * se[i].g[b];
          }
          G(a, b) = ga;
          Q(a, b) = qa;
        }
      P = solve(G, Q);
    }
  }

 private:
  PlueckerChart chart_;
};

// Geodesic spheres {dist = r} about a point of S^3 (umbilic, k = cot r) and
// the Clifford torus (principal curvatures +1, -1); both with constant
// principal curvatures and a global principal frame.
class SurfaceInSpaceForm {
 public:
  static SurfaceInSpaceForm geodesic_sphere(double radius);
  static SurfaceInSpaceForm clifford_torus();

  // point, unit normal (tangent to S^3), orthonormal principal frame
  template <class T>
  void frame(const T& al, const T& be, VecN<T, 4>& point, VecN<T, 4>& normal,
             VecN<T, 4>& e1, VecN<T, 4>& e2) const {
    point = VecN<T, 4>(4);
    normal = VecN<T, 4>(4);
    e1 = VecN<T, 4>(4);
    e2 = VecN<T, 4>(4);
    if (kind_ == Kind::sphere) {
      const T sa = sin(al), ca = cos(al), sb = sin(be), cb = cos(be);
      const double sr = std::sin(r_), cr = std::cos(r_);
      point[0] = sr * sa * cb;
      point[1] = sr * sa * sb;
      point[2] = sr * ca;
      point[3] = T(cr);
      normal[0] = -cr * sa * cb;
      normal[1] = -cr * sa * sb;
      normal[2] = -cr * ca;
      normal[3] = T(sr);
      e1[0] = ca * cb;
      e1[1] = ca * sb;
      e1[2] = -sa;
      e1[3] = T(0.0);
      e2[0] = -sb;
      e2[1] = cb;
      e2[2] = T(0.0);
      e2[3] = T(0.0);
    } else {
      const T sa = sin(al), ca = cos(al), sb = sin(be), cb = cos(be);
      const double s = 1.0 / std::sqrt(2.0);
      point[0] = s * ca;
      point[1] = s * sa;
      point[2] = s * cb;
      point[3] = s * sb;
      normal[0] = -s * ca;
      normal[1] = -s * sa;
      normal[2] = s * cb;
      normal[3] = s * sb;
      e1[0] = -sa;
      e1[1] = ca;
      e1[2] = T(0.0);
      e1[3] = T(0.0);
      e2[0] = T(0.0);
      e2[1] = T(0.0);
      e2[2] = -sb;
      e2[3] = cb;
    }
  }

  std::array<double, 2> principal() const;  // (k1, k2) for this normal
  bool umbilic() const { return kind_ == Kind::sphere; }
  Box domain() const;  // (alpha, beta) patch with frame and chart margins

 private:
  enum class Kind { sphere, torus };
  SurfaceInSpaceForm(Kind k, double r) : kind_(k), r_(r) {}
  Kind kind_;
  double r_;
};

// Circles tangent to the surface: (al, be, th) -> chart coordinates of
// point ^ (cos th e1 + sin th e2).  The parameter box is kept small enough
// that every circle stays inside the chart's injectivity region; the chart
// is centered on the congruence point at the middle of the box.
class TangentialCongruence : public ImmersionCRTP<TangentialCongruence> {
 public:
  explicit TangentialCongruence(const SurfaceInSpaceForm& surface);

  Box domain() const override { return box_; }
  const PlueckerChart& chart() const { return chart_; }
  const SurfaceInSpaceForm& surface() const { return surf_; }
  ReferenceData reference() const;

  template <class T>
  VecN<T, 6> circle(const VecN<T, 4>& y) const {
    VecN<T, 4> p(4), nu(4), e1(4), e2(4);
    surf_.frame(y[0], y[1], p, nu, e1, e2);
    VecN<T, 4> w(4);
    const T ct = cos(y[2]), st = sin(y[2]);
    for (int i = 0; i < 4; ++i) w[i] = ct * e1[i] + st * e2[i];
    return wedge(p, w);
  }

  template <class T>
  void eval_impl(const VecN<T, 4>& y, VecN<T, 4>& out) const {
    out = chart_.invert(circle(y));
  }

 private:
  SurfaceInSpaceForm surf_;
  Box box_;
  PlueckerChart chart_;
};

}  // namespace parageo
