#include "parageo/models/hypersurfaces.hpp"

#include <cmath>

namespace parageo {

namespace {
Box box3(double a0, double b0, double a1, double b1, double a2, double b2) {
  Box b;
  b.dim = 3;
  b.lo[0] = a0;
  b.hi[0] = b0;
  b.lo[1] = a1;
  b.hi[1] = b1;
  b.lo[2] = a2;
  b.hi[2] = b2;
  return b;
}

std::array<double, 3> unit3(const std::array<double, 3>& v) {
  const double n = std::sqrt(dot3(v, v));
  require(n > 1e-12, "zero vector");
  return {v[0] / n, v[1] / n, v[2] / n};
}

// deterministic orthonormal completion of a unit vector in R^3
void complete3(const std::array<double, 3>& b, std::array<double, 3>& b1,
               std::array<double, 3>& b2) {
  const std::array<double, 3> trial =
      std::abs(b[0]) < 0.8 ? std::array<double, 3>{1, 0, 0}
                           : std::array<double, 3>{0, 1, 0};
  b2 = unit3(cross3(b, trial));
  b1 = cross3(b2, b);  // (b1, b2, b) right-handed: b1 x b2 = b
}
}  // namespace

// ---- SigmaTSphere ----

SigmaTSphere::SigmaTSphere(double t) : t_(t) {
  require(std::abs(t) < 1.0, "sigma-t needs |t| < 1");
}

Box SigmaTSphere::domain() const {
  return box3(1.35, 1.75, -0.2, 0.2, 1.1, 1.45);
}

ReferenceData SigmaTSphere::reference() const {
  ReferenceData r;
  const double t = t_;
  const double l1 = std::sqrt((1 + t) / (1 - t)) / std::sqrt(2.0);
  const double l2 = -std::sqrt((1 - t) / (1 + t)) / std::sqrt(2.0);
  r.lambdas = [l1, l2](const VecN<double, 4>&) {
    return std::array<double, 3>{l1, l2, 0.0};
  };
  r.mean_curvature = [l1, l2](const VecN<double, 4>&) {
    return std::abs(l1 + l2) / 3.0;
  };
  r.expect_null = true;
  r.rbar = 4.0;
  return r;
}

// ---- SigmaTHyperbolic ----

SigmaTHyperbolic::SigmaTHyperbolic(double t) : t_(t) {
  require(std::abs(t) < 1.0, "sigma-t needs |t| < 1");
  if (t != 0.0) {
    const double d = std::acosh(1.0 / std::abs(t));
    cd_ = std::cosh(d);
    sd_ = std::sinh(d);
  }
}

Box SigmaTHyperbolic::domain() const {
  return t_ != 0.0 ? box3(0.45, 0.85, -0.2, 0.2, 1.0, 1.4)
                   : box3(0.45, 0.95, -0.25, 0.25, 0.35, 0.95);
}

ReferenceData SigmaTHyperbolic::reference() const {
  ReferenceData r;
  const double t = t_;
  const double l1 = std::sqrt((1 + t) / (1 - t)) / std::sqrt(2.0);
  const double l2 = std::sqrt((1 - t) / (1 + t)) / std::sqrt(2.0);
  r.lambdas = [l1, l2](const VecN<double, 4>&) {
    return std::array<double, 3>{l1, l2, 0.0};
  };
  r.mean_curvature = [l1, l2](const VecN<double, 4>&) {
    return std::abs(l1 + l2) / 3.0;
  };
  r.expect_null = true;
  r.rbar = -4.0;
  return r;
}

// ---- MabSphere ----

MabSphere::MabSphere(const std::array<double, 3>& a,
                     const std::array<double, 3>& b)
    : a_(unit3(a)), b_(unit3(b)) {
  complete3(b_, b1_, b2_);
}

Box MabSphere::domain() const { return box3(0.8, 2.0, -2.5, 2.5, -2.5, 2.5); }

double MabSphere::pairing(const VecN<double, 4>& y) const {
  const auto x = s2_embed(y[0], y[1]);
  return dot3(x, a_);
}

ReferenceData MabSphere::reference() const {
  ReferenceData r;
  const auto a = a_;
  r.lambdas = [a](const VecN<double, 4>& y) {
    const auto x = s2_embed(y[0], y[1]);
    const double s = dot3(x, a);
    const double l = s / std::sqrt(2.0 * (1.0 - s * s));
    return std::array<double, 3>{l, -l, 0.0};
  };
  r.mean_curvature = [](const VecN<double, 4>&) { return 0.0; };
  r.expect_null = true;
  r.rbar = 4.0;
  return r;
}

// ---- FlatNullPlane ----

FlatNullPlane::FlatNullPlane(const VecN<double, 4>& n) {
  const double nn = dot(n, n);
  require(nn > 1e-12, "zero normal");
  n_ = (1.0 / std::sqrt(nn)) * n;
  n_.n = 4;
  const double c =
      n_[0] * n_[0] + n_[1] * n_[1] - n_[2] * n_[2] - n_[3] * n_[3];
  require(std::abs(c) <= 1e-12,
          "hyperplane is not null for the neutral metric (g_-(N,N) != 0)");

  u_ = MatN<double, 4>(4, 3);
  int col = 0;
  for (int i = 0; i < 4 && col < 3; ++i) {
    VecN<double, 4> v(4);
    v[i] = 1.0;
    const double vn = dot(v, n_);
    for (int k = 0; k < 4; ++k) v[k] -= vn * n_[k];
    for (int c2 = 0; c2 < col; ++c2) {
      double p = 0;
      for (int k = 0; k < 4; ++k) p += v[k] * u_(k, c2);
      for (int k = 0; k < 4; ++k) v[k] -= p * u_(k, c2);
    }
    const double vv = dot(v, v);
    if (vv < 0.25) continue;  // basis vector nearly parallel to n
    const double inv = 1.0 / std::sqrt(vv);
    for (int k = 0; k < 4; ++k) u_(k, col) = inv * v[k];
    ++col;
  }
  require(col == 3, "failed to complete hyperplane basis");
}

Box FlatNullPlane::domain() const {
  return box3(-1.2, 1.2, -1.2, 1.2, -1.2, 1.2);
}

ReferenceData FlatNullPlane::reference() const {
  ReferenceData r;
  r.lambdas = [](const VecN<double, 4>&) {
    return std::array<double, 3>{0.0, 0.0, 0.0};
  };
  r.mean_curvature = [](const VecN<double, 4>&) { return 0.0; };
  r.expect_null = true;
  r.rbar = 0.0;
  return r;
}

// ---- FlatGraph ----

FlatGraph::FlatGraph(double c) : c_(c) {}

Box FlatGraph::domain() const { return box3(0.3, 1.3, -1.0, 1.0, -1.0, 1.0); }

double FlatGraph::c_plus(const VecN<double, 4>& y) const {
  const double qp = 2.0 * c_ * y[0];
  return (qp * qp - 1.0) / (qp * qp + 1.0);
}

ReferenceData FlatGraph::reference() const {
  ReferenceData r;
  const double c = c_;
  r.lambdas = [c](const VecN<double, 4>& y) {
    const double qp = 2.0 * c * y[0];
    const double w2 = 1.0 + qp * qp;
    return std::array<double, 3>{2.0 * c / (w2 * std::sqrt(w2)), 0.0, 0.0};
  };
  r.mean_curvature = [c](const VecN<double, 4>& y) {
    const double qp = 2.0 * c * y[0];
    const double w2 = 1.0 + qp * qp;
    return std::abs(2.0 * c / (w2 * std::sqrt(w2))) / 3.0;
  };
  r.expect_null = false;
  r.rbar = 0.0;
  return r;
}

// ---- image validation ----

void validate_immersion(const Immersion& F, Surf2 second_factor,
                        const std::array<int, 4>& counts) {
  for (const auto& y : lattice(F.domain(), counts, 0.0)) {
    VecN<double, 4> x(4);
    F.eval_d(y, x);
    for (int i = 0; i < 4; ++i)
      require(std::isfinite(x[i]), "immersion image not finite");
    switch (second_factor) {
      case Surf2::sphere:
        require(x[2] > 0.2 && x[2] < 3.1415926535897931 - 0.2,
                "immersion image too close to a chart pole");
        require(std::abs(x[3]) < 3.1415926535897931 - 0.12,
                "immersion image too close to the atan2 branch cut");
        break;
      case Surf2::hyperbolic:
        require(x[2] > 0.15, "immersion image too close to the chart axis");
        require(std::abs(x[3]) < 3.1415926535897931 - 0.12,
                "immersion image too close to the atan2 branch cut");
        break;
      case Surf2::flat:
        break;
    }
  }
}

}  // namespace parageo
