#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parageo/models/hypersurfaces.hpp"
#include "parageo/models/product_spaces.hpp"
#include "parageo/parastructure.hpp"
#include "parageo/shape.hpp"

using namespace parageo;

namespace {

struct Rig {
  ProductSpace g;
  ProductStructure P;
  Rig(Surf2 a, Surf2 b) : g(a, b) {}
};

VecN<double, 4> vy(double a, double b, double c) {
  VecN<double, 4> y(3);
  y[0] = a;
  y[1] = b;
  y[2] = c;
  return y;
}

struct TiltedPlane : ImmersionCRTP<TiltedPlane> {
  MatN<double, 4> u;
  TiltedPlane() : u(4, 3) {
    // orthonormal basis of n^perp for n = (1,0,0.6,0)/|.|
    const double nn = std::sqrt(1.36);
    const double n0 = 1 / nn, n2 = 0.6 / nn;
    u(1, 0) = 1;
    u(0, 1) = -n2;
    u(2, 1) = n0;
    u(3, 2) = 1;
  }
  Box domain() const override {
    Box b;
    b.dim = 3;
    for (int i = 0; i < 3; ++i) {
      b.lo[i] = -1;
      b.hi[i] = 1;
    }
    return b;
  }
  template <class T>
  void eval_impl(const VecN<T, 4>& y, VecN<T, 4>& out) const {
    out = VecN<T, 4>(4);
    for (int i = 0; i < 4; ++i)
      out[i] = y[0] * u(i, 0) + y[1] * u(i, 1) + y[2] * u(i, 2);
  }
};

struct SecondFactorSlice : ImmersionCRTP<SecondFactorSlice> {
  double phi2 = 1.0;
  Box domain() const override {
    Box b;
    b.dim = 3;
    b.lo[0] = 0.9;
    b.hi[0] = 1.9;
    b.lo[1] = -0.8;
    b.hi[1] = 0.8;
    b.lo[2] = -0.8;
    b.hi[2] = 0.8;
    return b;
  }
  template <class T>
  void eval_impl(const VecN<T, 4>& y, VecN<T, 4>& out) const {
    out = VecN<T, 4>(4);
    out[0] = y[0];
    out[1] = y[1];
    out[2] = T(phi2);
    out[3] = y[2];
  }
};

}  // namespace

TEST_CASE("flat null hyperplane: totally geodesic, null, flat") {
  Rig rig(Surf2::flat, Surf2::flat);
  VecN<double, 4> n(4);
  n[0] = 1;
  n[2] = 1;
  FlatNullPlane F(n);
  validate_immersion(F, Surf2::flat);
  DerivCtx ctx;
  for (const auto& y : lattice(F.domain(), {3, 3, 3, 1})) {
    const auto s = surf_point(F, rig.g, rig.P, y, ctx);
    CHECK(std::abs(s.C) <= 1e-14);
    CHECK(max_abs(s.sigma) <= 1e-12);
    CHECK(std::abs(s.H) <= 1e-13);
    // |X|^2 = 1 - C^2 = 1
    MatN<double, 4> G(4, 4);
    rig.g.eval_d(s.x, G);
    CHECK(inner(G, s.X, s.X) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("flat hyperplane with non-null normal is rejected") {
  VecN<double, 4> n(4);
  n[0] = 1;
  CHECK_THROWS(FlatNullPlane(n));
  n[2] = 0.5;
  CHECK_THROWS(FlatNullPlane(n));
}

TEST_CASE("tilted flat plane: C and |X|^2 = 1 - C^2") {
  // normal (1, 0, 0.6, 0)/sqrt(1.36): C = (1 - 0.36)/1.36
  Rig rig(Surf2::flat, Surf2::flat);
  VecN<double, 4> n(4);
  n[0] = 1;
  n[2] = 0.6;
  TiltedPlane F;
  DerivCtx ctx;
  const auto s = surf_point(F, rig.g, rig.P, vy(0.2, -0.3, 0.5), ctx);
  const double Cexp = (1.0 - 0.36) / 1.36;
  CHECK(std::abs(std::abs(s.C) - Cexp) <= 1e-13);
  MatN<double, 4> G(4, 4);
  rig.g.eval_d(s.x, G);
  CHECK(inner(G, s.X, s.X) ==
        doctest::Approx(1.0 - Cexp * Cexp).epsilon(1e-12));
}

TEST_CASE("sigma-t tubes in S2 x S2: frozen curvature data") {
  Rig rig(Surf2::sphere, Surf2::sphere);
  for (double t : {0.0, 0.5, -0.5, 0.9}) {
    CAPTURE(t);
    SigmaTSphere F(t);
    validate_immersion(F, Surf2::sphere);
    const auto ref = F.reference();
    DerivCtx ctx;
    double hmin = 1e300, hmax = -1e300;
    for (const auto& y : lattice(F.domain(), {3, 3, 3, 1})) {
      const auto s = surf_point(F, rig.g, rig.P, y, ctx);
      CHECK(std::abs(s.C) <= 1e-10);  // null for every t
      // sigma symmetric
      double asym = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          asym = std::max(asym, std::abs(s.sigma(a, b) - s.sigma(b, a)));
      CHECK(asym <= 1e-10);

      const auto pd = principal_data(s, rig.g, rig.P);
      CHECK(lambda_match_distance(pd.lambda, ref.lambdas(y)) <= 1e-9);
      CHECK(std::abs(std::abs(s.H) - ref.mean_curvature(y)) <= 1e-10);
      hmin = std::min(hmin, s.H);
      hmax = std::max(hmax, s.H);
      // P restricted to the (e1,e2)-plane is a reflection: theta = pi/2 here
      CHECK(pd.plane_residual <= 1e-8);
      CHECK(std::abs(pd.cos2theta - (-1.0)) <= 1e-8);
      CHECK(pd.x_eigen_gap <= 1e-8);
    }
    CHECK(hmax - hmin <= 1e-10);  // constant mean curvature family
  }
  // frozen numbers at t = 0.5
  SigmaTSphere F(0.5);
  const auto l = F.reference().lambdas(vy(1.5, 0, 1.2));
  CHECK(l[0] == doctest::Approx(1.2247448713915890).epsilon(1e-14));
  CHECK(l[1] == doctest::Approx(-0.4082482904638630).epsilon(1e-14));
  CHECK(F.reference().mean_curvature(vy(1.5, 0, 1.2)) ==
        doctest::Approx(0.27216552697590868).epsilon(1e-13));
}

TEST_CASE("sigma-t tubes in H2 x H2 and the horocycle limit") {
  Rig rig(Surf2::hyperbolic, Surf2::hyperbolic);
  for (double t : {0.0, 0.3, -0.5, 0.9}) {
    CAPTURE(t);
    SigmaTHyperbolic F(t);
    validate_immersion(F, Surf2::hyperbolic);
    const auto ref = F.reference();
    DerivCtx ctx;
    double hmin = 1e300, hmax = -1e300;
    for (const auto& y : lattice(F.domain(), {3, 3, 3, 1})) {
      const auto s = surf_point(F, rig.g, rig.P, y, ctx);
      CHECK(std::abs(s.C) <= 1e-10);
      const auto pd = principal_data(s, rig.g, rig.P);
      CHECK(lambda_match_distance(pd.lambda, ref.lambdas(y)) <= 1e-9);
      CHECK(std::abs(std::abs(s.H) - ref.mean_curvature(y)) <= 1e-10);
      hmin = std::min(hmin, s.H);
      hmax = std::max(hmax, s.H);
      if (t != 0.0) {
        CHECK(pd.plane_residual <= 1e-8);
        CHECK(std::abs(pd.cos2theta - (-1.0)) <= 1e-8);
      }
    }
    CHECK(hmax - hmin <= 1e-10);
  }
  // t = 0: equal curvatures 1/sqrt2, H = sqrt2/3
  SigmaTHyperbolic F0(0.0);
  const auto l = F0.reference().lambdas(vy(0.7, 0, 0.6));
  CHECK(l[0] == doctest::Approx(0.70710678118654752).epsilon(1e-14));
  CHECK(l[1] == doctest::Approx(0.70710678118654752).epsilon(1e-14));
  CHECK(F0.reference().mean_curvature(vy(0.7, 0, 0.6)) ==
        doctest::Approx(0.47140452079103168).epsilon(1e-13));
}

TEST_CASE("M_ab: null, minimal, principal directions are factor tangents") {
  Rig rig(Surf2::sphere, Surf2::sphere);
  MabSphere F({0, 0, 1}, {0, 0, 1});
  validate_immersion(F, Surf2::sphere);
  DerivCtx ctx;
  const auto ref = F.reference();
  for (const auto& y : lattice(F.domain(), {4, 3, 3, 1})) {
    const auto s = surf_point(F, rig.g, rig.P, y, ctx);
    CHECK(std::abs(s.C) <= 1e-10);
    CHECK(std::abs(s.H) <= 1e-11);  // minimal
    const auto pd = principal_data(s, rig.g, rig.P);
    CHECK(lambda_match_distance(pd.lambda, ref.lambdas(y)) <= 1e-9);
    // theta = 0 family: P e1 = +- e1
    CHECK(pd.plane_residual <= 1e-8);
    CHECK(std::abs(pd.cos2theta - 1.0) <= 1e-8);
  }

  // the eigendirections at <x,a> = 0.3: u1 ~ (x cross a, 0), u2 ~ (0, y cross b)
  const double phi = std::acos(0.3);
  const auto y0 = vy(phi, 0.4, -0.7);
  const auto s = surf_point(F, rig.g, rig.P, y0, ctx);
  const auto pd = principal_data(s, rig.g, rig.P);
  MatN<double, 4> G(4, 4);
  rig.g.eval_d(s.x, G);

  // ambient components of (x cross a)/|..| in the first-factor chart frame:
  // chart tangents d_phi, d_psi/sin(phi) are orthonormal; x cross a is
  // proportional to -d_psi (for a = north pole)
  VecN<double, 4> u1(4), u2(4);
  u1[1] = 1.0;  // d_psi direction on the first factor
  u2[3] = 1.0;  // d_psi2 on the second factor
  const double n1 = std::sqrt(inner(G, u1, u1));
  const double n2 = std::sqrt(inner(G, u2, u2));
  for (int i = 0; i < 4; ++i) {
    u1[i] /= n1;
    u2[i] /= n2;
  }
  VecN<double, 4> e1(4), e2(4);
  for (int i = 0; i < 4; ++i) {
    e1[i] = pd.frame(i, 0);
    e2[i] = pd.frame(i, 1);
  }
  const double o11 = std::abs(inner(G, e1, u1));
  const double o12 = std::abs(inner(G, e1, u2));
  const double o21 = std::abs(inner(G, e2, u1));
  const double o22 = std::abs(inner(G, e2, u2));
  const bool direct = o11 > 0.999999 && o22 > 0.999999;
  const bool swapped = o12 > 0.999999 && o21 > 0.999999;
  CHECK((direct || swapped));

  // frozen: lambda = +-0.3/sqrt(2 * 0.91)
  const auto l = ref.lambdas(y0);
  CHECK(std::abs(l[0]) == doctest::Approx(0.22237479499833038).epsilon(1e-13));
}

TEST_CASE("second-factor slice: C = -1 and circle curvature") {
  Rig rig(Surf2::sphere, Surf2::sphere);
  SecondFactorSlice F;
  DerivCtx ctx;
  const auto s = surf_point(F, rig.g, rig.P, vy(1.2, 0.3, -0.2), ctx);
  CHECK(std::abs(s.C) == doctest::Approx(1.0).epsilon(1e-12));
  MatN<double, 4> G(4, 4);
  rig.g.eval_d(s.x, G);
  CHECK(std::abs(inner(G, s.X, s.X)) <= 1e-12);  // X = 0 at |C| = 1
  const auto pd = principal_data(s, rig.g, rig.P);
  // curvatures of S^2 x circle(phi2): {0, 0, cot(phi2)}
  CHECK(lambda_match_distance(
            pd.lambda, {0.0, 0.0, 1.0 / std::tan(1.0)}) <= 1e-10);
}

TEST_CASE("induced metric curvature closes the Gauss equation") {
  Rig rig(Surf2::sphere, Surf2::sphere);
  SigmaTSphere F(0.5);
  InducedMetric h(F, rig.g);
  DerivCtx ctx;
  for (const auto& y : lattice(F.domain(), {2, 2, 2, 1})) {
    const auto s = surf_point(F, rig.g, rig.P, y, ctx);
    const auto rep = curvature(h, y);
    // R = Rbar/2 + 9 H^2 - |sigma|^2; here lambdas are constant so
    // R = 2 + (l1 + l2)^2 - (l1^2 + l2^2) = 1 exactly
    CHECK(rep.scalar == doctest::Approx(1.0).epsilon(1e-7));
    const auto hinv = inverse(s.h);
    double sig2 = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d)
            sig2 += hinv(a, c) * hinv(b, d) * s.sigma(a, b) * s.sigma(c, d);
    const double rhs = 0.5 * 4.0 + 9 * s.H * s.H - sig2;
    CHECK(rep.scalar == doctest::Approx(rhs).epsilon(1e-7));
  }
}

TEST_CASE("fd mode agrees with jets for the shape pipeline") {
  Rig rig(Surf2::sphere, Surf2::sphere);
  SigmaTSphere F(0.3);
  const auto y = vy(1.5, 0.1, 1.25);
  DerivCtx jctx;
  const auto sj = surf_point(F, rig.g, rig.P, y, jctx);
  DerivCtx fctx;
  fctx.mode = DerivMode::fd;
  const auto sf = surf_point(F, rig.g, rig.P, y, fctx);
  CHECK(fctx.fd_err > 0);
  const double tol = std::max(100 * fctx.fd_err, 1e-8);
  CHECK(std::abs(sj.C - sf.C) <= tol);
  CHECK(std::abs(sj.H - sf.H) <= tol);
  CHECK(max_abs(sj.sigma - sf.sigma) <= tol);
}
