#include "parageo/models/geodesic_space.hpp"

#include <numbers>

namespace parageo {

PlueckerChart standard_chart() {
  VecN<double, 6> e12(6);
  e12[0] = 1.0;
  return PlueckerChart(e12);
}

Box GeodesicMetric::domain() const {
  // stays well inside the chart: both sphere factors of the quadric have
  // radius 1/sqrt(2), so coordinates of size ~1 reach the injectivity edge
  Box b;
  b.dim = 4;
  for (int i = 0; i < 4; ++i) {
    b.lo[i] = -0.3;
    b.hi[i] = 0.3;
  }
  return b;
}

SurfaceInSpaceForm SurfaceInSpaceForm::geodesic_sphere(double radius) {
  require(radius > 0.05 && radius < std::numbers::pi - 0.05,
          "geodesic sphere radius out of range");
  return SurfaceInSpaceForm(Kind::sphere, radius);
}

SurfaceInSpaceForm SurfaceInSpaceForm::clifford_torus() {
  return SurfaceInSpaceForm(Kind::torus, 0.0);
}

std::array<double, 2> SurfaceInSpaceForm::principal() const {
  if (kind_ == Kind::sphere) {
    const double k = std::cos(r_) / std::sin(r_);
    return {k, k};
  }
  return {1.0, -1.0};
}

Box SurfaceInSpaceForm::domain() const {
  Box b;
  b.dim = 2;
  if (kind_ == Kind::sphere) {
    b.lo[0] = 0.75;
    b.hi[0] = 1.65;  // away from the alpha poles
    b.lo[1] = -0.6;
    b.hi[1] = 0.6;
  } else {
    b.lo[0] = 0.3;
    b.hi[0] = 1.5;
    b.lo[1] = 0.2;
    b.hi[1] = 1.4;
  }
  return b;
}

namespace {

Box congruence_box(const SurfaceInSpaceForm& s) {
  const Box sd = s.domain();
  Box b;
  b.dim = 3;
  for (int i = 0; i < 2; ++i) {
    const double c = 0.5 * (sd.lo[i] + sd.hi[i]);
    b.lo[i] = c - 0.25;
    b.hi[i] = c + 0.25;
  }
  // the direction angle: for non-umbilic surfaces the congruence curvatures
  // blow up where the tangent circle osculates an asymptotic direction
  // (|th| = pi/4 on the Clifford torus), so the box stops short of it
  const double tmax = s.umbilic() ? 0.8 : 0.6;
  b.lo[2] = -tmax;
  b.hi[2] = tmax;
  return b;
}

}  // namespace

TangentialCongruence::TangentialCongruence(const SurfaceInSpaceForm& surface)
    : surf_(surface), box_(congruence_box(surface)), chart_([&] {
        const auto k = surface.principal();
        require(std::abs(k[0]) + std::abs(k[1]) > 1e-8,
                "tangential congruence needs a non-totally-geodesic surface");
        VecN<double, 4> c(3);
        const Box b = congruence_box(surface);
        for (int i = 0; i < 3; ++i) c[i] = 0.5 * (b.lo[i] + b.hi[i]);
        VecN<double, 4> p(4), nu(4), e1(4), e2(4);
        surface.frame(c[0], c[1], p, nu, e1, e2);
        VecN<double, 4> w(4);
        for (int i = 0; i < 4; ++i)
          w[i] = std::cos(c[2]) * e1[i] + std::sin(c[2]) * e2[i];
        return PlueckerChart(wedge(p, w));
      }()) {}

ReferenceData TangentialCongruence::reference() const {
  const auto k = surf_.principal();
  ReferenceData rd;
  rd.lambdas = [k](const VecN<double, 4>& y) {
    const double c2 = sqr(std::cos(y[2])), s2 = sqr(std::sin(y[2]));
    return std::array<double, 3>{k[0] * c2 + k[1] * s2,
                                 -k[0] * s2 - k[1] * c2, 0.0};
  };
  rd.mean_curvature = [k](const VecN<double, 4>& y) {
    return std::abs((k[0] - k[1]) * std::cos(2.0 * y[2])) / 3.0;
  };
  rd.expect_null = true;
  rd.rbar = 8.0;
  return rd;
}

}  // namespace parageo
