#pragma once

// Product 4-manifolds M1 x M2 where each factor is a round sphere S^2(1)
// (chart (phi, psi), g = dphi^2 + sin^2 phi dpsi^2), the hyperbolic plane
// H^2(-1) in the hyperboloid model (chart (r, psi), g = dr^2 + sinh^2 r
// dpsi^2), or the flat plane R^2 (Cartesian chart).
//
// The paracomplex structure of a product is P = +Id on the first factor and
// -Id on the second (diagonal in chart coordinates).

#include "parageo/fields.hpp"

namespace parageo {

enum class Surf2 { sphere, hyperbolic, flat };

class ProductSpace : public MetricFieldCRTP<ProductSpace> {
 public:
  ProductSpace(Surf2 a, Surf2 b) : f1_(a), f2_(b) {}

  int dim() const override { return 4; }
  Box domain() const override;
  Surf2 factor1() const { return f1_; }
  Surf2 factor2() const { return f2_; }

  template <class T>
  void eval_impl(const VecN<T, 4>& x, MatN<T, 4>& G) const {
    G = MatN<T, 4>(4, 4);
    factor_metric(f1_, x[0], G(0, 0), G(1, 1));
    factor_metric(f2_, x[2], G(2, 2), G(3, 3));
  }

 private:
  template <class T>
  static void factor_metric(Surf2 kind, const T& first_coord, T& g00, T& g11) {
    g00 = T(1.0);
    switch (kind) {
      case Surf2::sphere:
        g11 = sqr(sin(first_coord));
        break;
      case Surf2::hyperbolic:
        g11 = sqr(sinh(first_coord));
        break;
      case Surf2::flat:
        g11 = T(1.0);
        break;
    }
  }

  Surf2 f1_, f2_;
};

// P = Id (+) -Id in product chart coordinates
class ProductStructure : public EndoFieldCRTP<ProductStructure> {
 public:
  int dim() const override { return 4; }

  template <class T>
  void eval_impl(const VecN<T, 4>&, MatN<T, 4>& P) const {
    P = MatN<T, 4>(4, 4);
    P(0, 0) = P(1, 1) = T(1.0);
    P(2, 2) = P(3, 3) = T(-1.0);
  }
};

// ---- factor embeddings (used to build hypersurface families) ----

// unit sphere in R^3
template <class T>
std::array<T, 3> s2_embed(const T& phi, const T& psi) {
  return {sin(phi) * cos(psi), sin(phi) * sin(psi), cos(phi)};
}
template <class T>
void s2_chart(const std::array<T, 3>& y, T& phi, T& psi) {
  phi = acos(y[2]);
  psi = atan2(y[1], y[0]);
}

// upper hyperboloid <y,y>_L = -1 in R^{2,1}, pairing (+,+,-)
template <class T>
std::array<T, 3> h2_embed(const T& r, const T& psi) {
  return {sinh(r) * cos(psi), sinh(r) * sin(psi), cosh(r)};
}
template <class T>
void h2_chart(const std::array<T, 3>& y, T& r, T& psi) {
  r = asinh(sqrt(y[0] * y[0] + y[1] * y[1]));
  psi = atan2(y[1], y[0]);
}

template <class T>
T dot3(const std::array<T, 3>& a, const std::array<T, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
template <class T>
T lorentz3(const std::array<T, 3>& a, const std::array<T, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}
template <class T>
std::array<T, 3> cross3(const std::array<T, 3>& a, const std::array<T, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace parageo
