#pragma once

// First and second fundamental data of an immersed hypersurface F: D^3 -> M^4.
//
// N is the g-unit normal with det[T1 T2 T3 N] > 0 (eps = +1: g(N,N) = 1).
// The shape operator is A = -grad N (Weingarten), sigma(u,v) = g(Au, v),
// mean curvature H = tr(A)/3.  The causal character of the hypersurface
// w.r.t. the neutral metric is carried by C = g_-(N,N) = g(PN,N); the
// tangent part of PN is X = PN - C N with |X|^2 = 1 - C^2.

#include "parageo/curvature.hpp"
#include "parageo/fields.hpp"
#include "parageo/finite_diff.hpp"
#include "parageo/sym_eigen.hpp"

namespace parageo {

// ambient coordinates of F as one-layer jets over the surface parameters
// (values = F(y), gradients = coordinate tangents), honoring the fd mode at
// the double level
template <class T>
VecN<lift_t<T>, 4> surface_jets(const Immersion& F, const VecN<T, 4>& y,
                                DerivCtx& ctx) {
  if constexpr (std::is_same_v<T, double>) {
    if (ctx.mode == DerivMode::fd) {
      auto flat = [&](const VecN<double, 4>& q) {
        VecN<double, 4> x(4);
        F.eval_d(q, x);
        return std::vector<double>{x[0], x[1], x[2], x[3]};
      };
      double err = 0.0;
      const auto jets = fd_jets(flat, y, 3, ctx.h, &err);
      ctx.absorb(err);
      VecN<Jet2, 4> out(4);
      for (int i = 0; i < 4; ++i) out[i] = jets[i];
      return out;
    }
  }
  const auto yl = lift_vars(y, 3);
  VecN<lift_t<T>, 4> out(4);
  eval_field(F, yl, out);
  return out;
}

template <class T>
struct SurfPoint {
  VecN<T, 4> x;          // ambient chart point F(y)
  MatN<T, 4> tang;       // 4x3, column a = dF/dy^a
  VecN<T, 4> N;          // oriented g-unit normal
  T C{};                 // g(PN, N)
  VecN<T, 4> PN, X;      // X = PN - C N (tangent part of PN)
  MatN<T, 4> h;          // induced metric h_ab (3x3)
  MatN<T, 4> sigma;      // sigma(d_a, d_b) (3x3)
  T H{};                 // (1/3) h^{ab} sigma_ab
};

// normal and first-fundamental data from ambient-coordinate jets
template <class JT>
SurfPoint<typename JT::scalar> first_order_data(const VecN<JT, 4>& xj,
                                                const MetricField& g,
                                                const EndoField& P) {
  using T = typename JT::scalar;
  SurfPoint<T> s;
  s.x = VecN<T, 4>(4);
  for (int i = 0; i < 4; ++i) s.x[i] = xj[i].v;
  s.tang = MatN<T, 4>(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 3; ++a) s.tang(i, a) = xj[i].g[a];

  MatN<T, 4> G(4, 4), Pm(4, 4);
  eval_field(g, s.x, G);
  eval_field(P, s.x, Pm);

  VecN<T, 4> t1(4), t2(4), t3(4);
  for (int i = 0; i < 4; ++i) {
    t1[i] = s.tang(i, 0);
    t2[i] = s.tang(i, 1);
    t3[i] = s.tang(i, 2);
  }
  // covector eps(t1,t2,t3) annihilates the tangent space for any metric;
  // raising with g^{-1} gives the g-normal direction
  const auto ncov = eps_cross(t1, t2, t3);
  VecN<T, 4> nup = solve_vec(G, ncov);
  const T norm2 = inner(G, nup, nup);
  require(value_of(norm2) > 1e-14, "degenerate normal (immersion singular?)");
  nup = (T(1.0) / sqrt(norm2)) * nup;

  // orientation: positively oriented ambient frame [T1 T2 T3 N]
  MatN<T, 4> fr(4, 4);
  for (int i = 0; i < 4; ++i) {
    fr(i, 0) = t1[i];
    fr(i, 1) = t2[i];
    fr(i, 2) = t3[i];
    fr(i, 3) = nup[i];
  }
  if (value_of(det(fr)) < 0.0) nup = -nup;
  s.N = nup;

  s.PN = matvec(Pm, s.N);
  s.C = inner(G, s.PN, s.N);
  s.X = s.PN - s.C * s.N;

  s.h = MatN<T, 4>(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      T acc{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += s.tang(i, a) * G(i, j) * s.tang(j, b);
      s.h(a, b) = acc;
    }
  return s;
}

template <class T>
void fill_sigma(SurfPoint<T>& s, const MetricField& g, DerivCtx& ctx,
                const MatN<T, 4>& dN);

// full data including the second fundamental form.
// sigma_ab = -g(grad_{T_a} N, T_b) needs dN/dy, obtained by running the
// normal pipeline one jet layer up (or by an fd stencil of normal values).
template <class T>
SurfPoint<T> surf_point(const Immersion& F, const MetricField& g,
                        const EndoField& P, const VecN<T, 4>& y,
                        DerivCtx& ctx) {
  SurfPoint<T> s = first_order_data(surface_jets<T>(F, y, ctx), g, P);

  MatN<T, 4> dN(4, 3);  // dN^i/dy^a
  if constexpr (std::is_same_v<T, double>) {
    if (ctx.mode == DerivMode::fd) {
      auto nval = [&](const VecN<double, 4>& q) {
        DerivCtx inner = ctx;
        const auto fp = first_order_data(surface_jets<double>(F, q, inner), g, P);
        return std::vector<double>{fp.N[0], fp.N[1], fp.N[2], fp.N[3]};
      };
      double err = 0.0;
      const auto jets = fd_jets(nval, y, 3, ctx.h * 4.0, &err);
      ctx.absorb(err);
      for (int i = 0; i < 4; ++i)
        for (int a = 0; a < 3; ++a) dN(i, a) = jets[i].g[a];
      fill_sigma(s, g, ctx, dN);
      return s;
    }
  }
  {
    DerivCtx jctx = ctx;
    jctx.mode = DerivMode::jets;
    const auto yl = lift_vars(y, 3);
    const auto up = first_order_data(surface_jets<lift_t<T>>(F, yl, jctx), g, P);
    for (int i = 0; i < 4; ++i)
      for (int a = 0; a < 3; ++a) dN(i, a) = up.N[i].g[a];
  }
  fill_sigma(s, g, ctx, dN);
  return s;
}

template <class T>
void fill_sigma(SurfPoint<T>& s, const MetricField& g, DerivCtx& ctx,
                const MatN<T, 4>& dN) {
  const auto gamma = christoffel(g, s.x, ctx);
  MatN<T, 4> G(4, 4);
  eval_field(g, s.x, G);

  s.sigma = MatN<T, 4>(3, 3);
  for (int a = 0; a < 3; ++a) {
    // covariant derivative of N along T_a
    VecN<T, 4> DN(4);
    for (int i = 0; i < 4; ++i) {
      T acc = dN(i, a);
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          acc += gamma(i, j, k) * s.tang(j, a) * s.N[k];
      DN[i] = acc;
    }
    for (int b = 0; b < 3; ++b) {
      T acc{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += DN[i] * G(i, j) * s.tang(j, b);
      s.sigma(a, b) = -acc;
    }
  }
  const auto hinv = inverse(s.h);
  T tr{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) tr += hinv(a, b) * s.sigma(a, b);
  s.H = tr / 3.0;
}

// g-orthonormal tangent frame by Gram-Schmidt on the coordinate tangents:
// returns 4x3 matrix of ambient components
template <class T>
MatN<T, 4> tangent_frame(const SurfPoint<T>& s, const MetricField& g) {
  MatN<T, 4> G(4, 4);
  eval_field(g, s.x, G);
  MatN<T, 4> f(4, 3);
  for (int a = 0; a < 3; ++a) {
    VecN<T, 4> v(4);
    for (int i = 0; i < 4; ++i) v[i] = s.tang(i, a);
    for (int b = 0; b < a; ++b) {
      VecN<T, 4> fb(4);
      for (int i = 0; i < 4; ++i) fb[i] = f(i, b);
      const T proj = inner(G, v, fb);
      v = v - proj * fb;
    }
    const T nn = inner(G, v, v);
    require(value_of(nn) > 1e-14, "tangent frame degenerate");
    const T inv = T(1.0) / sqrt(nn);
    for (int i = 0; i < 4; ++i) f(i, a) = inv * v[i];
  }
  return f;
}

// coordinate components of a tangent vector: v = coeff^a T_a
template <class T>
VecN<T, 4> tangent_coords(const SurfPoint<T>& s, const MetricField& g,
                          const VecN<T, 4>& v) {
  MatN<T, 4> G(4, 4);
  eval_field(g, s.x, G);
  VecN<T, 4> rhs(3);
  for (int a = 0; a < 3; ++a) {
    T acc{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) acc += v[i] * G(i, j) * s.tang(j, a);
    rhs[a] = acc;
  }
  return solve_vec(s.h, rhs);
}

// principal curvatures/directions and the angle of P on the (e1,e2)-plane
struct PrincipalData {
  std::array<double, 3> lambda{};   // lambda1 >= lambda2; lambda[2] = X-dir
  MatN<double, 4> frame;            // ambient columns e1, e2, e3
  double theta = 0.0;               // from g(P e1, e1), g(P e1, e2)
  double cos2theta = 1.0;
  double plane_residual = 0.0;      // |P e1 - cos e1 - sin e2| (null: ~0)
  double x_eigen_gap = 0.0;         // 1 - |<e3, X/|X||>| when X != 0
  bool degenerate_pair = false;     // lambda1 ~ lambda2 (theta is gauge)
};

PrincipalData principal_data(const SurfPoint<double>& s, const MetricField& g,
                             const EndoField& P);

// distance between principal-curvature multisets after the gauge
// normalizations: overall sign (normal orientation) and order
inline double lambda_match_distance(std::array<double, 3> measured,
                                    std::array<double, 3> reference) {
  std::sort(reference.begin(), reference.end());
  double best = 1e300;
  for (double sgn : {1.0, -1.0}) {
    std::array<double, 3> m{sgn * measured[0], sgn * measured[1],
                            sgn * measured[2]};
    std::sort(m.begin(), m.end());
    double d = 0;
    for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(m[i] - reference[i]));
    best = std::min(best, d);
  }
  return best;
}

// the induced 3-metric as a MetricField (chart = surface parameters).
// value_mode controls how the tangents behind plain values are obtained;
// jet-level evaluations always differentiate through the tower.
class InducedMetric : public MetricFieldCRTP<InducedMetric> {
 public:
  InducedMetric(const Immersion& F, const MetricField& g,
                DerivMode value_mode = DerivMode::jets, double h = 2e-3)
      : F_(&F), g_(&g), vmode_(value_mode), h_(h) {}
  int dim() const override { return 3; }
  Box domain() const override { return F_->domain(); }
  double fd_err() const { return fd_err_; }

  template <class T>
  void eval_impl(const VecN<T, 4>& y, MatN<T, 4>& out) const {
    if constexpr (std::is_same_v<T, Jet2c>) {
      (void)y;
      (void)out;
      throw std::runtime_error("parageo: induced metric jet depth exceeded");
    } else {
      DerivCtx ctx;  // jet levels: this evaluation is itself differentiated
      if constexpr (std::is_same_v<T, double>) {
        ctx.mode = vmode_;
        ctx.h = h_;
      }
      const auto xj = surface_jets<T>(*F_, y, ctx);
      if constexpr (std::is_same_v<T, double>)
        fd_err_ = std::max(fd_err_, ctx.fd_err);
      // the metric is needed at the T level only, so evaluate it at the
      // value slots instead of one tower layer up; this keeps congruence
      // hypersurfaces (whose ambient metric caps one layer earlier) in reach
      VecN<T, 4> xv(4);
      for (int i = 0; i < 4; ++i) xv[i] = xj[i].v;
      MatN<T, 4> G(4, 4);
      eval_field(*g_, xv, G);
      out = MatN<T, 4>(3, 3);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          T acc{};
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              acc += xj[i].g[a] * G(i, j) * xj[j].g[b];
          out(a, b) = acc;
        }
    }
  }

 private:
  const Immersion* F_;
  const MetricField* g_;
  DerivMode vmode_;
  double h_;
  mutable double fd_err_ = 0.0;
};

}  // namespace parageo
