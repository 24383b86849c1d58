#include "parageo/parastructure.hpp"

namespace parageo {

ParacomplexReport verify_paracomplex(const EndoField& P, const MetricField& g,
                                     const std::vector<VecN<double, 4>>& pts,
                                     DerivCtx ctx) {
  ParacomplexReport rep;
  const int n = g.dim();
  for (const auto& x : pts) {
    MatN<double, 4> Pv(n, n), Gv(n, n);
    P.eval_d(x, Pv);
    g.eval_d(x, Gv);

    const auto P2 = matmul(Pv, Pv);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double id = i == j ? 1.0 : 0.0;
        rep.square_residual =
            std::max(rep.square_residual, std::abs(P2(i, j) - id));
      }
    rep.trace_residual =
        std::max(rep.trace_residual, std::abs(trace(Pv)));

    const auto PtGP = matmul(transpose(Pv), matmul(Gv, Pv));
    rep.isometry_residual =
        std::max(rep.isometry_residual, max_abs(PtGP - Gv));

    const auto gradP = covariant_derivative_11(P, g, x, ctx);
    rep.parallel_residual = std::max(rep.parallel_residual, max_abs(gradP));
  }
  rep.fd_err = ctx.fd_err;
  return rep;
}

NeutralReport verify_neutral_properties(const MetricField& g,
                                        const EndoField& P,
                                        const std::vector<VecN<double, 4>>& pts,
                                        DerivCtx ctx) {
  NeutralReport rep;
  NeutralMetric gm(g, P);
  bool sig_set = false;
  for (const auto& x : pts) {
    const auto plus = curvature(g, x, ctx);
    const auto minus = curvature(gm, x, ctx);
    double cdiff = 0.0;
    for (int k = 0; k < plus.dim; ++k)
      for (int i = 0; i < plus.dim; ++i)
        for (int j = 0; j < plus.dim; ++j)
          cdiff = std::max(cdiff, std::abs(plus.gamma(k, i, j) -
                                           minus.gamma(k, i, j)));
    rep.christoffel_diff = std::max(rep.christoffel_diff, cdiff);
    rep.ricci_diff =
        std::max(rep.ricci_diff, max_abs(plus.ricci - minus.ricci));
    rep.scalar_max = std::max(rep.scalar_max, std::abs(minus.scalar));
    rep.weyl_max = std::max(rep.weyl_max, max_abs(minus.weyl));
    if (!sig_set) {
      rep.sig_pos = minus.sig_pos;
      rep.sig_neg = minus.sig_neg;
      sig_set = true;
    }
    rep.fd_err = std::max({rep.fd_err, plus.fd_err, minus.fd_err});
  }
  return rep;
}

}  // namespace parageo
