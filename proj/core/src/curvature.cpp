#include "parageo/curvature.hpp"

namespace parageo {

MatN<Jet2, 4> metric_jets(const MetricField& g, const VecN<double, 4>& x,
                          DerivCtx& ctx) {
  const int n = g.dim();
  MatN<Jet2, 4> G(n, n);
  if (ctx.mode == DerivMode::jets) {
    const auto xl = lift_vars(x, n);
    eval_field(g, xl, G);
    return G;
  }
  auto flat = [&](const VecN<double, 4>& y) {
    MatN<double, 4> m(n, n);
    g.eval_d(y, m);
    std::vector<double> out(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i * n + j] = m(i, j);
    return out;
  };
  double err = 0.0;
  const auto jets = fd_jets(flat, x, n, ctx.h, &err);
  ctx.absorb(err);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = jets[i * n + j];
  return G;
}

Tensor3N<Jet2> christoffel_jets(const MetricField& g, const VecN<double, 4>& x,
                                DerivCtx& ctx) {
  const int n = g.dim();
  if (ctx.mode == DerivMode::jets) {
    VecN<Jet2, 4> xl(n);
    for (int i = 0; i < n; ++i) xl[i] = jet_var<Jet2>(x[i], i, n);
    return christoffel(g, xl, ctx);
  }
  // nested stencil: Gamma values themselves come from fd metric jets
  auto flat = [&](const VecN<double, 4>& y) {
    DerivCtx inner = ctx;
    const auto c = christoffel<double>(g, y, inner);
    std::vector<double> out(n * n * n);
    int idx = 0;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[idx++] = c(k, i, j);
    return out;
  };
  double err = 0.0;
  const auto jets = fd_jets(flat, x, n, ctx.h * 4.0, &err);
  ctx.absorb(err);
  Tensor3N<Jet2> c;
  c.n = n;
  int idx = 0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(k, i, j) = jets[idx++];
  return c;
}

CurvatureReport curvature(const MetricField& g, const VecN<double, 4>& x,
                          DerivCtx ctx) {
  const int n = g.dim();
  CurvatureReport r;
  r.dim = n;

  const auto cj = christoffel_jets(g, x, ctx);
  MatN<double, 4> gv(n, n);
  g.eval_d(x, gv);
  r.g = gv;
  r.ginv = inverse(gv);
  r.gamma.n = n;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.gamma(k, i, j) = cj(k, i, j).v;

  // R^i_{jkl}, then lower the first index
  Tensor4N up;
  up.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = cj(i, l, j).g[k] - cj(i, k, j).g[l];
          for (int m = 0; m < n; ++m)
            v += r.gamma(i, k, m) * r.gamma(m, l, j) -
                 r.gamma(i, l, m) * r.gamma(m, k, j);
          up(i, j, k, l) = v;
        }
  r.riemann.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0;
          for (int m = 0; m < n; ++m) v += gv(i, m) * up(m, j, k, l);
          r.riemann(i, j, k, l) = v;
        }

  r.ricci = MatN<double, 4>(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double v = 0;
      for (int i = 0; i < n; ++i) v += up(i, j, i, l);
      r.ricci(j, l) = v;
    }
  r.scalar = 0;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) r.scalar += r.ginv(j, l) * r.ricci(j, l);

  if (n == 4) {
    r.weyl.n = 4;
    const auto& R = r.riemann;
    const auto& Rc = r.ricci;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            r.weyl(i, j, k, l) =
                R(i, j, k, l) -
                0.5 * (gv(i, k) * Rc(j, l) - gv(i, l) * Rc(j, k) +
                       gv(j, l) * Rc(i, k) - gv(j, k) * Rc(i, l)) +
                r.scalar / 6.0 * (gv(i, k) * gv(j, l) - gv(i, l) * gv(j, k));
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double dev = r.ricci(i, j) - r.scalar / n * gv(i, j);
      r.einstein_residual = std::max(r.einstein_residual, std::abs(dev));
    }

  MatN<double, 6> g6(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g6(i, j) = gv(i, j);
  const auto eig = sym_eigen(g6);
  const double esc = 1e-10 * std::max(1.0, max_abs(gv));
  for (int i = 0; i < n; ++i) {
    if (eig.values[i] > esc)
      ++r.sig_pos;
    else if (eig.values[i] < -esc)
      ++r.sig_neg;
    else
      ++r.sig_zero;
  }
  r.fd_err = ctx.fd_err;
  return r;
}

EinsteinSummary is_einstein(const MetricField& g,
                            const std::vector<VecN<double, 4>>& pts,
                            double tol, DerivCtx ctx) {
  EinsteinSummary s;
  require(!pts.empty(), "is_einstein: no sample points");
  std::vector<double> scalars;
  scalars.reserve(pts.size());
  for (const auto& p : pts) {
    const auto rep = curvature(g, p, ctx);
    scalars.push_back(rep.scalar);
    s.max_residual = std::max(s.max_residual, rep.einstein_residual);
  }
  for (double v : scalars) s.rbar += v;
  s.rbar /= static_cast<double>(scalars.size());
  for (double v : scalars)
    s.scalar_spread = std::max(s.scalar_spread, std::abs(v - s.rbar));
  s.einstein = s.max_residual <= tol && s.scalar_spread <= tol;
  return s;
}

Tensor3N<double> covariant_derivative_11(const EndoField& P,
                                         const MetricField& g,
                                         const VecN<double, 4>& x,
                                         DerivCtx ctx) {
  const int n = g.dim();
  MatN<Jet2, 4> PJ(n, n);
  if (ctx.mode == DerivMode::jets) {
    const auto xl = lift_vars(x, n);
    eval_field(P, xl, PJ);
  } else {
    auto flat = [&](const VecN<double, 4>& y) {
      MatN<double, 4> m(n, n);
      P.eval_d(y, m);
      std::vector<double> out(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i * n + j] = m(i, j);
      return out;
    };
    double err = 0.0;
    const auto jets = fd_jets(flat, x, n, ctx.h, &err);
    ctx.absorb(err);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) PJ(i, j) = jets[i * n + j];
  }
  const auto gamma = christoffel(g, x, ctx);
  Tensor3N<double> r;
  r.n = n;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = PJ(i, j).g[k];
        for (int m = 0; m < n; ++m)
          v += gamma(i, k, m) * PJ(m, j).v - gamma(m, k, j) * PJ(i, m).v;
        r(k, i, j) = v;
      }
  return r;
}

}  // namespace parageo
