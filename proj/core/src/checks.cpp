#include "parageo/hyper_checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "parageo/finite_diff.hpp"

namespace parageo {

namespace {

constexpr double kPi = 3.14159265358979323846;

VecN<double, 4> frame_col(const MatN<double, 4>& f, int a) {
  VecN<double, 4> v(4);
  for (int i = 0; i < 4; ++i) v[i] = f(i, a);
  return v;
}

VecN<double, 4> ambient_from_coords(const MatN<double, 4>& tang,
                                    const VecN<double, 4>& c) {
  VecN<double, 4> v(4);
  for (int i = 0; i < 4; ++i) {
    double acc = 0;
    for (int a = 0; a < 3; ++a) acc += tang(i, a) * c[a];
    v[i] = acc;
  }
  return v;
}

double gnorm(const MatN<double, 4>& G, const VecN<double, 4>& v) {
  return std::sqrt(std::max(0.0, inner(G, v, v)));
}

SurfPoint<double> sp(const HyperScenario& sc, const VecN<double, 4>& y) {
  return surf_point(*sc.F, *sc.g, *sc.P, y, sc.ctx);
}

std::vector<double> flatten_sp(const SurfPoint<double>& s) {
  std::vector<double> v;
  v.reserve(48);
  for (int i = 0; i < 4; ++i) v.push_back(s.x[i]);
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 3; ++a) v.push_back(s.tang(i, a));
  for (int i = 0; i < 4; ++i) v.push_back(s.N[i]);
  v.push_back(s.C);
  for (int i = 0; i < 4; ++i) v.push_back(s.PN[i]);
  for (int i = 0; i < 4; ++i) v.push_back(s.X[i]);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) v.push_back(s.h(a, b));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) v.push_back(s.sigma(a, b));
  v.push_back(s.H);
  return v;
}

SurfPoint<Jet2> unflatten_sp(const std::vector<Jet2>& f) {
  SurfPoint<Jet2> s;
  int k = 0;
  s.x = VecN<Jet2, 4>(4);
  for (int i = 0; i < 4; ++i) s.x[i] = f[k++];
  s.tang = MatN<Jet2, 4>(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 3; ++a) s.tang(i, a) = f[k++];
  s.N = VecN<Jet2, 4>(4);
  for (int i = 0; i < 4; ++i) s.N[i] = f[k++];
  s.C = f[k++];
  s.PN = VecN<Jet2, 4>(4);
  for (int i = 0; i < 4; ++i) s.PN[i] = f[k++];
  s.X = VecN<Jet2, 4>(4);
  for (int i = 0; i < 4; ++i) s.X[i] = f[k++];
  s.h = MatN<Jet2, 4>(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s.h(a, b) = f[k++];
  s.sigma = MatN<Jet2, 4>(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s.sigma(a, b) = f[k++];
  s.H = f[k++];
  return s;
}

SurfPoint<double> values_sp(const SurfPoint<Jet2>& s) {
  SurfPoint<double> v;
  v.x = VecN<double, 4>(4);
  v.tang = MatN<double, 4>(4, 3);
  v.N = VecN<double, 4>(4);
  v.PN = VecN<double, 4>(4);
  v.X = VecN<double, 4>(4);
  v.h = MatN<double, 4>(3, 3);
  v.sigma = MatN<double, 4>(3, 3);
  for (int i = 0; i < 4; ++i) {
    v.x[i] = s.x[i].v;
    v.N[i] = s.N[i].v;
    v.PN[i] = s.PN[i].v;
    v.X[i] = s.X[i].v;
    for (int a = 0; a < 3; ++a) v.tang(i, a) = s.tang(i, a).v;
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      v.h(a, b) = s.h(a, b).v;
      v.sigma(a, b) = s.sigma(a, b).v;
    }
  v.C = s.C.v;
  v.H = s.H.v;
  return v;
}

// shared per-point workspace for the identity checks
struct PointLab {
  ShapeData d;
  SurfPoint<Jet2> s2;
  MatN<double, 4> G, Pm;    // ambient metric and structure at x
  MatN<double, 4> hinv;     // 3x3
  MatN<double, 4> Amix;     // A^a_b = h^{ac} sigma_cb
  MatN<double, 4> Q;        // Q_ab = g(P T_a, T_b) (induced neutral metric)
  Tensor3N<double> gamma;   // ambient Christoffels at x
  Tensor3N<double> igamma;  // induced-metric Christoffels at y
  VecN<double, 4> Xc;       // tangent coordinates of X
};

PointLab point_lab(const HyperScenario& sc, const VecN<double, 4>& y,
                   bool need_igamma) {
  PointLab L;
  L.s2 = surf_point_jets(*sc.F, *sc.g, *sc.P, y, sc.ctx);
  const SurfPoint<double> s = values_sp(L.s2);
  L.d = shape_data_from(s, *sc.g, *sc.P, y, sc.null_tol);
  L.G = MatN<double, 4>(4, 4);
  L.Pm = MatN<double, 4>(4, 4);
  sc.g->eval_d(s.x, L.G);
  sc.P->eval_d(s.x, L.Pm);
  L.hinv = inverse(s.h);
  L.Amix = MatN<double, 4>(3, 3);
  L.Q = MatN<double, 4>(3, 3);
  for (int a = 0; a < 3; ++a) {
    const auto PTa = matvec(L.Pm, frame_col(s.tang, a));
    for (int b = 0; b < 3; ++b) {
      double acc = 0;
      for (int c = 0; c < 3; ++c) acc += L.hinv(a, c) * s.sigma(c, b);
      L.Amix(a, b) = acc;
      L.Q(a, b) = inner(L.G, PTa, frame_col(s.tang, b));
    }
  }
  L.gamma = christoffel(*sc.g, s.x, sc.ctx);
  if (need_igamma) {
    InducedMetric im(*sc.F, *sc.g, sc.ctx.mode, sc.ctx.h);
    L.igamma = christoffel(im, y, sc.ctx);
    sc.ctx.absorb(im.fd_err());
  }
  L.Xc = tangent_coords(s, *sc.g, s.X);
  return L;
}

// d sigma_ab / dy^c, index order (c, a, b), by central differences of the
// second-fundamental-form components with Richardson extrapolation
Tensor3N<double> sigma_partials(const HyperScenario& sc,
                                const VecN<double, 4>& y, double* err) {
  auto f = [&](const VecN<double, 4>& q) {
    DerivCtx ictx = sc.ctx;
    const auto s = surf_point(*sc.F, *sc.g, *sc.P, q, ictx);
    std::vector<double> v(9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) v[3 * a + b] = s.sigma(a, b);
    return v;
  };
  const double hstep = sc.ctx.mode == DerivMode::fd ? 5e-3 : 1e-4;
  const auto jets = fd_gradients(f, y, 3, hstep, err);
  Tensor3N<double> out;
  out.n = 3;
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) out(c, a, b) = jets[3 * a + b].g[c];
  return out;
}

// max over samples; per(sc, y, note) returns the residual or nullopt when
// the check does not apply at y
template <class Fn>
CheckResult grid_max(const HyperScenario& sc, const char* name, double tol,
                     Fn&& per) {
  CheckResult r;
  r.name = name;
  r.tolerance = tol;
  std::string note;
  for (const auto& y : sc.samples) {
    const auto v = per(y, note);
    if (!v) continue;
    ++r.samples;
    r.max_residual = std::max(r.max_residual, *v);
  }
  r.applicable = r.samples > 0;
  if (!r.applicable && note.empty())
    note = "preconditions not met at any sample";
  r.note = note;
  r.pass = !r.applicable || r.max_residual <= tol;
  r.fd_err = sc.ctx.fd_err;
  return r;
}

// ---- value-level checks ----

CheckResult check_nullity(const HyperScenario& sc, double tol) {
  return grid_max(sc, "nullity", tol,
                  [&](const VecN<double, 4>& y,
                      std::string&) -> std::optional<double> {
                    return std::abs(sp(sc, y).C);
                  });
}

CheckResult check_c_range(const HyperScenario& sc, double tol) {
  return grid_max(sc, "c-range", tol,
                  [&](const VecN<double, 4>& y,
                      std::string&) -> std::optional<double> {
                    return std::max(0.0, std::abs(sp(sc, y).C) - 1.0);
                  });
}

CheckResult check_unit_normal(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "unit-normal", tol,
      [&](const VecN<double, 4>& y, std::string&) -> std::optional<double> {
        const auto s = sp(sc, y);
        MatN<double, 4> G(4, 4);
        sc.g->eval_d(s.x, G);
        double r = std::abs(inner(G, s.N, s.N) - 1.0);
        for (int a = 0; a < 3; ++a)
          r = std::max(r,
                       std::abs(inner(G, s.N, frame_col(s.tang, a))));
        return r;
      });
}

CheckResult check_shape_symmetry(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "shape-symmetry", tol,
      [&](const VecN<double, 4>& y, std::string&) -> std::optional<double> {
        const auto d = shape_data(*sc.F, *sc.g, *sc.P, y, sc.ctx, sc.null_tol);
        double r = 0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            r = std::max(r, std::abs(d.a_frame(a, b) - d.a_frame(b, a)));
        return r;
      });
}

CheckResult check_trivial_direction(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "trivial-direction", tol,
      [&](const VecN<double, 4>& y, std::string& note)
          -> std::optional<double> {
        const auto d = shape_data(*sc.F, *sc.g, *sc.P, y, sc.ctx, sc.null_tol);
        if (!d.is_null()) {
          note = "no null samples";
          return std::nullopt;
        }
        // A applied to the tangent part of PN, measured in the induced metric
        const auto& s = d.s;
        const auto hinv = inverse(s.h);
        const auto Xc = tangent_coords(s, *sc.g, s.X);
        VecN<double, 4> ax(3);
        for (int a = 0; a < 3; ++a) {
          double acc = 0;
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
              acc += hinv(a, b) * s.sigma(b, c) * Xc[c];
          ax[a] = acc;
        }
        double n2 = 0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) n2 += s.h(a, b) * ax[a] * ax[b];
        double amax = 0;
        for (double l : d.pd.lambda) amax = std::max(amax, std::abs(l));
        return std::sqrt(std::max(0.0, n2)) / (1.0 + amax);
      });
}

CheckResult check_eigenvalues(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "eigenvalues", tol,
      [&](const VecN<double, 4>& y, std::string&) -> std::optional<double> {
        const auto d = shape_data(*sc.F, *sc.g, *sc.P, y, sc.ctx, sc.null_tol);
        return lambda_match_distance(d.pd.lambda, sc.ref->lambdas(y));
      });
}

CheckResult check_mean_curvature(const HyperScenario& sc, double tol) {
  return grid_max(sc, "mean-curvature", tol,
                  [&](const VecN<double, 4>& y,
                      std::string&) -> std::optional<double> {
                    const auto s = sp(sc, y);
                    return std::abs(std::abs(s.H) - sc.ref->mean_curvature(y));
                  });
}

CheckResult check_principal_angle(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "principal-angle", tol,
      [&](const VecN<double, 4>& y, std::string& note)
          -> std::optional<double> {
        const auto d = shape_data(*sc.F, *sc.g, *sc.P, y, sc.ctx, sc.null_tol);
        if (!d.is_null()) {
          note = "no null samples";
          return std::nullopt;
        }
        return std::max(d.pd.plane_residual, d.pd.x_eigen_gap);
      });
}

// ---- first-order identities ----

// gradient identity: grad C = -2 A X (both sides tangent fields)
CheckResult check_gradient_c(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "gradient-c", tol,
      [&](const VecN<double, 4>& y, std::string&) -> std::optional<double> {
        const auto L = point_lab(sc, y, false);
        const auto& s = L.d.s;
        VecN<double, 4> dC(3);
        for (int a = 0; a < 3; ++a) dC[a] = L.s2.C.g[a];
        const auto gradc = ambient_from_coords(s.tang, solve_vec(s.h, dC));
        VecN<double, 4> axc(3);
        for (int a = 0; a < 3; ++a) {
          double acc = 0;
          for (int b = 0; b < 3; ++b) acc += L.Amix(a, b) * L.Xc[b];
          axc[a] = acc;
        }
        const auto ax = ambient_from_coords(s.tang, axc);
        return gnorm(L.G, gradc + 2.0 * ax);
      });
}

// tangential derivative of X: tan(grad_xi X) = -tan(P A xi) + C A xi
CheckResult check_x_derivative(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "x-derivative", tol,
      [&](const VecN<double, 4>& y, std::string&) -> std::optional<double> {
        const auto L = point_lab(sc, y, false);
        const auto& s = L.d.s;
        auto tangential = [&](const VecN<double, 4>& w) {
          return w - inner(L.G, w, s.N) * s.N;
        };
        double res = 0;
        for (int a = 0; a < 3; ++a) {
          VecN<double, 4> DX(4);
          for (int i = 0; i < 4; ++i) {
            double acc = L.s2.X[i].g[a];
            for (int j = 0; j < 4; ++j)
              for (int k = 0; k < 4; ++k)
                acc += L.gamma(i, j, k) * s.tang(j, a) * s.X[k];
            DX[i] = acc;
          }
          VecN<double, 4> ac(3);
          for (int b = 0; b < 3; ++b) ac[b] = L.Amix(b, a);
          const auto ATa = ambient_from_coords(s.tang, ac);
          const auto PATa = matvec(L.Pm, ATa);
          const auto r =
              tangential(DX) + tangential(PATa) - s.C * ATa;
          res = std::max(res, gnorm(L.G, r));
        }
        return res;
      });
}

// ---- second-order identities ----

// Hessian of C against the coordinate basis:
//   (hess C)_ab = -2 (grad_a sigma)(X, d_b) - 2 C g(A d_a, A d_b)
//                 + 2 g(P A d_a, A d_b)
CheckResult check_hessian_c(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "hessian-c", tol,
      [&](const VecN<double, 4>& y, std::string&) -> std::optional<double> {
        const auto L = point_lab(sc, y, true);
        const auto& s = L.d.s;
        double serr = 0;
        const auto ds = sigma_partials(sc, y, &serr);
        sc.ctx.absorb(serr);
        double res = 0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            double lhs = L.s2.C.hess(a, b);
            for (int c = 0; c < 3; ++c)
              lhs -= L.igamma(c, a, b) * L.s2.C.g[c];
            double t1 = 0;
            for (int c = 0; c < 3; ++c) {
              double covd = ds(a, c, b);
              for (int d = 0; d < 3; ++d)
                covd -= L.igamma(d, a, c) * s.sigma(d, b) +
                        L.igamma(d, a, b) * s.sigma(c, d);
              t1 += L.Xc[c] * covd;
            }
            double t2 = 0, t3 = 0;
            for (int c = 0; c < 3; ++c)
              for (int d = 0; d < 3; ++d) {
                t2 += s.sigma(a, c) * L.hinv(c, d) * s.sigma(d, b);
                t3 += L.Amix(c, a) * L.Q(c, d) * L.Amix(d, b);
              }
            const double rhs = -2.0 * t1 - 2.0 * s.C * t2 + 2.0 * t3;
            res = std::max(res, std::abs(lhs - rhs));
          }
        return res;
      });
}

// trace of the Hessian:
//   lap C = -6 g(X, grad H) - 2 C |sigma|^2 + 2 tr(P A^2)
CheckResult check_laplacian_c(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "laplacian-c", tol,
      [&](const VecN<double, 4>& y, std::string&) -> std::optional<double> {
        const auto L = point_lab(sc, y, true);
        const auto& s = L.d.s;
        double lap = 0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            double hess = L.s2.C.hess(a, b);
            for (int c = 0; c < 3; ++c)
              hess -= L.igamma(c, a, b) * L.s2.C.g[c];
            lap += L.hinv(a, b) * hess;
          }
        double xh = 0;
        for (int a = 0; a < 3; ++a) xh += L.Xc[a] * L.s2.H.g[a];
        const auto A2 = matmul(L.Amix, L.Amix);
        double sig2 = 0;
        for (int a = 0; a < 3; ++a) sig2 += A2(a, a);
        const auto PA2 = matmul(A2, matmul(L.hinv, L.Q));
        double trpa2 = 0;
        for (int a = 0; a < 3; ++a) trpa2 += PA2(a, a);
        const double rhs = -6.0 * xh - 2.0 * s.C * sig2 + 2.0 * trpa2;
        return std::abs(lap - rhs);
      });
}

// ---- scalar-curvature identities ----

CheckResult check_gauss_scalar(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "gauss-scalar", tol,
      [&](const VecN<double, 4>& y, std::string&) -> std::optional<double> {
        const auto d = shape_data(*sc.F, *sc.g, *sc.P, y, sc.ctx, sc.null_tol);
        const double R = induced_scalar(sc, y);
        const double rhs =
            0.5 * sc.rbar + 9.0 * d.s.H * d.s.H - d.sigma_norm2;
        return std::abs(R - rhs);
      });
}

// null points: R = 2 l1 l2 cos(2 theta) - 2 (l1^2 + l2^2) cos^2(theta).
// Valid when the nontrivial curvature data is constant along the X
// direction, which holds for every scenario this check is scoped to.
CheckResult check_null_scalar(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "null-scalar", tol,
      [&](const VecN<double, 4>& y, std::string& note)
          -> std::optional<double> {
        const auto d = shape_data(*sc.F, *sc.g, *sc.P, y, sc.ctx, sc.null_tol);
        if (!d.is_null()) {
          note = "no null samples";
          return std::nullopt;
        }
        const double R = induced_scalar(sc, y);
        const double l1 = d.pd.lambda[0], l2 = d.pd.lambda[1];
        const double c2t = d.pd.cos2theta, ct2 = 0.5 * (1.0 + c2t);
        return std::abs(R - (2.0 * l1 * l2 * c2t -
                             2.0 * (l1 * l1 + l2 * l2) * ct2));
      });
}

// null points: rbar/2 + (l1 + l2)^2 + (l1 - l2)^2 cos(2 theta) = 0
// (same scoping note as the null scalar formula)
CheckResult check_scalar_constraint(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "scalar-constraint", tol,
      [&](const VecN<double, 4>& y, std::string& note)
          -> std::optional<double> {
        const auto d = shape_data(*sc.F, *sc.g, *sc.P, y, sc.ctx, sc.null_tol);
        if (!d.is_null()) {
          note = "no null samples";
          return std::nullopt;
        }
        const double l1 = d.pd.lambda[0], l2 = d.pd.lambda[1];
        return std::abs(0.5 * sc.rbar + (l1 + l2) * (l1 + l2) +
                        (l1 - l2) * (l1 - l2) * d.pd.cos2theta);
      });
}

// CMC null hypersurfaces with H != 0: the principal curvatures are constant
// and the ambient scalar curvature equals -8 l1 l2
CheckResult check_cmc_relation(const HyperScenario& sc, double tol) {
  CheckResult r;
  r.name = "cmc-relation";
  r.tolerance = tol;
  double max_c = 0, hmin = 1e300, hmax = -1e300, hsum = 0;
  double lam_spread = 0, max_dev = 0;
  std::array<double, 3> lam0{};
  bool first = true;
  for (const auto& y : sc.samples) {
    const auto d = shape_data(*sc.F, *sc.g, *sc.P, y, sc.ctx, sc.null_tol);
    ++r.samples;
    max_c = std::max(max_c, std::abs(d.s.C));
    hmin = std::min(hmin, d.s.H);
    hmax = std::max(hmax, d.s.H);
    hsum += d.s.H;
    if (first) {
      lam0 = d.pd.lambda;
      first = false;
    } else {
      lam_spread =
          std::max(lam_spread, lambda_match_distance(d.pd.lambda, lam0));
    }
    max_dev = std::max(
        max_dev,
        std::abs(-8.0 * d.pd.lambda[0] * d.pd.lambda[1] - sc.rbar));
  }
  const double h_spread = hmax - hmin;
  const double h_mean = hsum / std::max(1, r.samples);
  const bool null_ok = max_c <= sc.null_tol;
  const bool cmc_ok = h_spread <= std::max(tol, 1e-7);
  const bool nonminimal = std::abs(h_mean) > std::max(tol, 1e-7);
  r.stats = {{"max_abs_c", max_c},
             {"h_spread", h_spread},
             {"mean_h", h_mean},
             {"lambda_spread", lam_spread},
             {"max_rbar_deviation", max_dev}};
  if (null_ok && cmc_ok && nonminimal) {
    r.applicable = true;
    r.max_residual = std::max(max_dev, lam_spread);
    r.pass = r.max_residual <= tol;
    r.note = "-8 l1 l2 compared against the ambient scalar curvature";
  } else {
    r.applicable = false;
    r.pass = true;
    std::ostringstream os;
    os << "preconditions not met:";
    if (!null_ok) os << " not null (max |C| = " << max_c << ");";
    if (!cmc_ok) os << " H not constant (spread = " << h_spread << ");";
    if (!nonminimal) os << " minimal (mean H = " << h_mean << ");";
    os << " -8 l1 l2 deviates from the ambient scalar curvature by up to "
       << max_dev;
    r.note = os.str();
  }
  r.fd_err = sc.ctx.fd_err;
  return r;
}

// a totally geodesic null hypersurface is scalar flat, and carrying one
// forces the Einstein ambient to be Ricci-flat
CheckResult check_geodesic_scalar_flat(const HyperScenario& sc, double tol) {
  CheckResult r;
  r.name = "geodesic-scalar-flat";
  r.tolerance = tol;
  double max_c = 0, max_sigma = 0, max_R = 0;
  for (const auto& y : sc.samples) {
    const auto s = sp(sc, y);
    ++r.samples;
    max_c = std::max(max_c, std::abs(s.C));
    max_sigma = std::max(max_sigma, max_abs(s.sigma));
  }
  if (max_c > sc.null_tol || max_sigma > 1e-8) {
    r.applicable = false;
    r.pass = true;
    std::ostringstream os;
    os << "preconditions not met: max |C| = " << max_c
       << ", max |sigma| = " << max_sigma;
    r.note = os.str();
    return r;
  }
  for (const auto& y : sc.samples)
    max_R = std::max(max_R, std::abs(induced_scalar(sc, y)));
  r.applicable = true;
  r.max_residual = std::max(max_R, std::abs(sc.rbar));
  r.pass = r.max_residual <= tol;
  r.note = "scalar flatness of the hypersurface and of the ambient space";
  r.fd_err = sc.ctx.fd_err;
  return r;
}

CheckResult check_connection_relations(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "connection-relations", tol,
      [&](const VecN<double, 4>& y, std::string& note)
          -> std::optional<double> {
        const auto n = null_frame_data(sc, y);
        if (!n.valid) {
          note = n.note;
          return std::nullopt;
        }
        const double st = std::sin(n.theta), ct = std::cos(n.theta);
        double res = n.compat_residual;
        res = std::max(res, std::abs(n.omega[0][1][2] - n.lambda1 * st));
        res = std::max(res, std::abs(n.omega[0][0][2] - n.lambda1 * ct));
        res = std::max(res, std::abs(n.omega[1][0][2] - n.lambda2 * st));
        res = std::max(res, std::abs(n.omega[1][1][2] + n.lambda2 * ct));
        res = std::max(res, std::abs(n.omega[2][0][2]));
        res = std::max(res, std::abs(n.omega[2][1][2]));
        res = std::max(res, std::abs(n.k_coef + 0.5 * n.dtheta[0]));
        res = std::max(res, std::abs(n.mu_coef + 0.5 * n.dtheta[1]));
        res = std::max(res, std::abs(n.nu_coef + 0.5 * n.dtheta[2]));
        return res;
      });
}

// the neutral normal direction: recomputed from scratch and compared with
// PN; the causal classification must agree with the sign of C both ways
CheckResult check_null_classification(const HyperScenario& sc, double tol) {
  return grid_max(
      sc, "null-classification", tol,
      [&](const VecN<double, 4>& y, std::string&) -> std::optional<double> {
        const auto s = sp(sc, y);
        MatN<double, 4> G(4, 4), Pm(4, 4);
        sc.g->eval_d(s.x, G);
        sc.P->eval_d(s.x, Pm);
        const auto Gm = matmul(G, Pm);
        const auto ncov = eps_cross(frame_col(s.tang, 0),
                                    frame_col(s.tang, 1),
                                    frame_col(s.tang, 2));
        auto M = solve_vec(Gm, ncov);
        const double mn = gnorm(G, M);
        require(mn > 1e-12, "degenerate neutral normal");
        M = (1.0 / mn) * M;
        if (inner(G, M, s.PN) < 0) M = -1.0 * M;
        const double align = gnorm(G, M - s.PN);
        const double causal = std::abs(inner(Gm, M, M) - s.C);
        return std::max(align, causal);
      });
}

}  // namespace

// ---- shared data builders ----

ShapeData shape_data_from(const SurfPoint<double>& s, const MetricField& g,
                          const EndoField& P, const VecN<double, 4>& y,
                          double null_tol) {
  ShapeData d;
  d.y = y;
  d.s = s;
  d.frame = tangent_frame(s, g);
  std::array<VecN<double, 4>, 3> fc;
  for (int a = 0; a < 3; ++a)
    fc[a] = tangent_coords(s, g, frame_col(d.frame, a));
  d.a_frame = MatN<double, 4>(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double acc = 0;
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
          acc += fc[a][p] * s.sigma(p, q) * fc[b][q];
      d.a_frame(a, b) = acc;
    }
  d.sigma_norm2 = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      d.sigma_norm2 += d.a_frame(a, b) * d.a_frame(a, b);
  d.pd = principal_data(s, g, P);
  d.null_tol = null_tol;
  if (std::abs(s.C) < null_tol) {
    d.eps_minus = 0;
    d.n_minus = s.PN;
  } else {
    d.eps_minus = s.C > 0 ? 1 : -1;
    d.n_minus = (1.0 / std::sqrt(std::abs(s.C))) * s.PN;
    d.c_minus = 1.0 / std::abs(s.C);
  }
  return d;
}

ShapeData shape_data(const Immersion& F, const MetricField& g,
                     const EndoField& P, const VecN<double, 4>& y,
                     DerivCtx& ctx, double null_tol) {
  return shape_data_from(surf_point(F, g, P, y, ctx), g, P, y, null_tol);
}

SurfPoint<Jet2> surf_point_jets(const Immersion& F, const MetricField& g,
                                const EndoField& P, const VecN<double, 4>& y,
                                DerivCtx& ctx) {
  if (ctx.mode == DerivMode::fd) {
    auto f = [&](const VecN<double, 4>& q) {
      DerivCtx inner = ctx;
      const auto v = flatten_sp(surf_point(F, g, P, q, inner));
      ctx.absorb(inner.fd_err);
      return v;
    };
    double err = 0;
    const auto jets = fd_jets(f, y, 3, ctx.h * 16.0, &err);
    ctx.absorb(err);
    return unflatten_sp(jets);
  }
  const auto yl = lift_vars(y, 3);
  return surf_point(F, g, P, yl, ctx);
}

double induced_scalar(const HyperScenario& sc, const VecN<double, 4>& y) {
  InducedMetric im(*sc.F, *sc.g, sc.ctx.mode, sc.ctx.h);
  DerivCtx cctx = sc.ctx;
  const auto rep = curvature(im, y, cctx);
  sc.ctx.absorb(std::max(rep.fd_err, im.fd_err()));
  return rep.scalar;
}

NullFrameData null_frame_data(const HyperScenario& sc,
                              const VecN<double, 4>& y) {
  NullFrameData out;
  const auto s0 = sp(sc, y);
  const auto d0 = shape_data_from(s0, *sc.g, *sc.P, y, sc.null_tol);
  if (!d0.is_null()) {
    out.note = "point is not null";
    return out;
  }
  const double l1 = d0.pd.lambda[0], l2 = d0.pd.lambda[1];
  const bool geodesic = max_abs(s0.sigma) <= 1e-8;
  if (!geodesic &&
      std::abs(l1 - l2) <= 1e-4 * (1.0 + std::abs(l1) + std::abs(l2))) {
    out.note = "principal directions degenerate (l1 = l2)";
    return out;
  }

  // frame field: e3 = X, (e1, e2) the nontrivial principal directions,
  // signs aligned with the base frame so the field is smooth near y
  auto frame_at = [&](const VecN<double, 4>& q, const MatN<double, 4>* base,
                      double theta0, double& theta) {
    DerivCtx ictx = sc.ctx;
    const auto s = surf_point(*sc.F, *sc.g, *sc.P, q, ictx);
    sc.ctx.absorb(ictx.fd_err);
    const auto pd = principal_data(s, *sc.g, *sc.P);
    MatN<double, 4> G(4, 4), Pm(4, 4);
    sc.g->eval_d(s.x, G);
    sc.P->eval_d(s.x, Pm);
    VecN<double, 4> e3 = s.X;
    const double xn = gnorm(G, e3);
    require(xn > 0.5, "frame needs |X| near 1 (null point)");
    e3 = (1.0 / xn) * e3;
    std::array<VecN<double, 4>, 3> e{frame_col(pd.frame, 0),
                                     frame_col(pd.frame, 1), e3};
    for (int i = 0; i < 2; ++i) {
      e[i] = e[i] - inner(G, e[i], e3) * e3;
      for (int j = 0; j < i; ++j) e[i] = e[i] - inner(G, e[i], e[j]) * e[j];
      e[i] = (1.0 / gnorm(G, e[i])) * e[i];
    }
    MatN<double, 4> E(4, 3);
    for (int a = 0; a < 3; ++a) {
      double flip = 1.0;
      if (base && inner(G, e[a], frame_col(*base, a)) < 0) flip = -1.0;
      for (int i = 0; i < 4; ++i) E(i, a) = flip * e[a][i];
    }
    const auto Pe1 = matvec(Pm, frame_col(E, 0));
    theta = std::atan2(inner(G, Pe1, frame_col(E, 1)),
                       inner(G, Pe1, frame_col(E, 0)));
    if (base) theta = theta0 + std::remainder(theta - theta0, 2.0 * kPi);
    return E;
  };

  double th0 = 0;
  const MatN<double, 4> E0 = frame_at(y, nullptr, 0.0, th0);

  auto flat = [&](const VecN<double, 4>& q) {
    double th = 0;
    const auto E = frame_at(q, &E0, th0, th);
    std::vector<double> v(13);
    for (int i = 0; i < 4; ++i)
      for (int a = 0; a < 3; ++a) v[3 * i + a] = E(i, a);
    v[12] = th;
    return v;
  };
  double ferr = 0;
  const double hstep = sc.ctx.mode == DerivMode::fd ? 5e-3 : 1e-4;
  const auto jets = fd_gradients(flat, y, 3, hstep, &ferr);
  sc.ctx.absorb(ferr);

  MatN<double, 4> G(4, 4);
  sc.g->eval_d(s0.x, G);
  const auto gamma = christoffel(*sc.g, s0.x, sc.ctx);
  std::array<VecN<double, 4>, 3> ec;
  for (int a = 0; a < 3; ++a)
    ec[a] = tangent_coords(s0, *sc.g, frame_col(E0, a));

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      VecN<double, 4> D(4);
      for (int l = 0; l < 4; ++l) {
        double acc = 0;
        for (int c = 0; c < 3; ++c) acc += ec[i][c] * jets[3 * l + j].g[c];
        for (int m = 0; m < 4; ++m)
          for (int k = 0; k < 4; ++k)
            acc += gamma(l, m, k) * E0(m, i) * E0(k, j);
        D[l] = acc;
      }
      for (int k = 0; k < 3; ++k)
        out.omega[i][j][k] = inner(G, D, frame_col(E0, k));
    }
    double dth = 0;
    for (int c = 0; c < 3; ++c) dth += ec[i][c] * jets[12].g[c];
    out.dtheta[i] = dth;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        out.compat_residual = std::max(
            out.compat_residual,
            std::abs(out.omega[i][j][k] + out.omega[i][k][j]));
  out.frame = E0;
  out.k_coef = out.omega[0][0][1];
  out.mu_coef = out.omega[1][0][1];
  out.nu_coef = out.omega[2][0][1];
  out.theta = th0;
  out.lambda1 = l1;
  out.lambda2 = l2;
  out.valid = true;
  return out;
}

// ---- registry ----

const std::vector<CheckSpec>& check_registry() {
  static const std::vector<CheckSpec> reg = {
      {"nullity", 1e-7, false, &check_nullity},
      {"c-range", 1e-9, false, &check_c_range},
      {"unit-normal", 1e-9, false, &check_unit_normal},
      {"shape-symmetry", 1e-8, false, &check_shape_symmetry},
      {"trivial-direction", 1e-7, false, &check_trivial_direction},
      {"eigenvalues", 1e-6, true, &check_eigenvalues},
      {"mean-curvature", 1e-7, true, &check_mean_curvature},
      {"principal-angle", 1e-7, false, &check_principal_angle},
      {"gradient-c", 1e-5, false, &check_gradient_c},
      {"x-derivative", 1e-5, false, &check_x_derivative},
      {"hessian-c", 1e-4, false, &check_hessian_c},
      {"laplacian-c", 1e-4, false, &check_laplacian_c},
      {"gauss-scalar", 1e-5, false, &check_gauss_scalar},
      {"null-scalar", 1e-5, false, &check_null_scalar},
      {"scalar-constraint", 1e-5, false, &check_scalar_constraint},
      {"cmc-relation", 1e-5, false, &check_cmc_relation},
      {"geodesic-scalar-flat", 1e-7, false, &check_geodesic_scalar_flat},
      {"connection-relations", 1e-4, false, &check_connection_relations},
      {"null-classification", 1e-7, false, &check_null_classification},
  };
  return reg;
}

std::vector<std::string> check_names() {
  std::vector<std::string> n;
  for (const auto& c : check_registry()) n.push_back(c.name);
  return n;
}

bool is_check_name(const std::string& name) {
  for (const auto& c : check_registry())
    if (c.name == name) return true;
  return false;
}

CheckResult run_check(const HyperScenario& sc, const std::string& name,
                      double tol) {
  for (const auto& c : check_registry()) {
    if (c.name != name) continue;
    const double t = tol < 0 ? c.default_tol : tol;
    if (c.needs_reference && sc.ref == nullptr) {
      CheckResult r;
      r.name = name;
      r.tolerance = t;
      r.applicable = false;
      r.pass = true;
      r.note = "no closed-form reference for this family";
      return r;
    }
    return c.run(sc, t);
  }
  throw std::runtime_error("parageo: unknown check name: " + name);
}

}  // namespace parageo
