#pragma once

// Identity checks for hypersurfaces of an Einstein 4-manifold carrying a
// parallel isometric product structure P.  Each check evaluates a curvature
// identity (or structural fact) over a sample grid and reports the worst
// residual against a tolerance; checks are registered by name so scenario
// configs can compose them.
//
// Conventions: eps_+ = +1 (the ambient metric is Riemannian), C = g(PN, N),
// X = PN - C N, A = -grad N, H = tr(A)/3, lambda_3 = 0 is the X-direction at
// null points.  The principal angle theta satisfies P e1 = cos(theta) e1 +
// sin(theta) e2 on the null plane spanned by the nontrivial directions.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parageo/curvature.hpp"
#include "parageo/models/hypersurfaces.hpp"
#include "parageo/shape.hpp"

namespace parageo {

// per-point extrinsic record w.r.t. both the ambient and the neutral metric
struct ShapeData {
  VecN<double, 4> y;
  SurfPoint<double> s;
  MatN<double, 4> frame;    // 4x3, g-orthonormal tangent frame (Gram-Schmidt)
  MatN<double, 4> a_frame;  // 3x3, sigma in that frame
  double sigma_norm2 = 0.0;
  PrincipalData pd;
  // the neutral-metric normal is proportional to PN; at non-null points it
  // is normalized to unit neutral length, which fixes c_minus = 1/|C|
  VecN<double, 4> n_minus;
  int eps_minus = 0;  // causal type of the neutral normal; 0 = null
  std::optional<double> c_minus;
  double null_tol = 1e-7;
  bool is_null() const { return eps_minus == 0; }
};

ShapeData shape_data_from(const SurfPoint<double>& s, const MetricField& g,
                          const EndoField& P, const VecN<double, 4>& y,
                          double null_tol = 1e-7);
ShapeData shape_data(const Immersion& F, const MetricField& g,
                     const EndoField& P, const VecN<double, 4>& y,
                     DerivCtx& ctx, double null_tol = 1e-7);

// everything a check needs: the geometry, an optional closed-form oracle,
// the sample grid, and the derivative mode
struct HyperScenario {
  const Immersion* F = nullptr;
  const MetricField* g = nullptr;
  const EndoField* P = nullptr;
  double rbar = 0.0;  // ambient scalar curvature (Einstein)
  const ReferenceData* ref = nullptr;
  std::vector<VecN<double, 4>> samples;
  mutable DerivCtx ctx;
  double null_tol = 1e-7;
};

struct CheckResult {
  std::string name;
  int samples = 0;  // points where the check applied
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool applicable = true;  // preconditions held at some sample
  bool pass = false;
  std::string note;
  std::vector<std::pair<std::string, double>> stats;
  double fd_err = 0.0;
};

// pipeline outputs with their first partials along the surface parameters:
// jets run the whole normal/shape computation one layer up; fd mode rebuilds
// the same record from stencils of plain evaluations
SurfPoint<Jet2> surf_point_jets(const Immersion& F, const MetricField& g,
                                const EndoField& P, const VecN<double, 4>& y,
                                DerivCtx& ctx);

// scalar curvature of the induced 3-metric at y
double induced_scalar(const HyperScenario& sc, const VecN<double, 4>& y);

// orthonormal frame (e1, e2, e3 = X) with its connection coefficients
// omega_ij^k = g(grad_{e_i} e_j, e_k) and the frame derivatives of the
// principal angle, obtained by finite differences of the frame field
struct NullFrameData {
  MatN<double, 4> frame;  // 4x3
  double omega[3][3][3] = {};
  double k_coef = 0.0, mu_coef = 0.0, nu_coef = 0.0;  // omega_11^2 etc.
  double theta = 0.0;
  double dtheta[3] = {};  // e_i(theta)
  double lambda1 = 0.0, lambda2 = 0.0;
  double compat_residual = 0.0;  // max |omega_ij^k + omega_ik^j|
  bool valid = false;
  std::string note;
};

NullFrameData null_frame_data(const HyperScenario& sc,
                              const VecN<double, 4>& y);

struct CheckSpec {
  std::string name;
  double default_tol = 1e-6;
  bool needs_reference = false;
  CheckResult (*run)(const HyperScenario&, double) = nullptr;
};

const std::vector<CheckSpec>& check_registry();
std::vector<std::string> check_names();
bool is_check_name(const std::string& name);

// tol < 0 selects the registered default
CheckResult run_check(const HyperScenario& sc, const std::string& name,
                      double tol = -1.0);

// affine change of surface parameters y -> b + M y: the image is unchanged,
// so every gauge-invariant quantity must be too (det M < 0 flips the normal)
class ReparametrizedImmersion : public ImmersionCRTP<ReparametrizedImmersion> {
 public:
  ReparametrizedImmersion(const Immersion& F, const MatN<double, 4>& M,
                          const VecN<double, 4>& b)
      : F_(&F), M_(M), b_(b) {
    require(M.rows == 3 && M.cols == 3 && b.n == 3,
            "reparametrization must be affine on 3 parameters");
    require(std::abs(det(M)) > 1e-8, "reparametrization is singular");
  }

  Box domain() const override { return F_->domain(); }

  // parameters that land on the same ambient point as F at y
  VecN<double, 4> pullback(const VecN<double, 4>& y) const {
    VecN<double, 4> d(3);
    for (int i = 0; i < 3; ++i) d[i] = y[i] - b_[i];
    return solve_vec(M_, d);
  }

  template <class T>
  void eval_impl(const VecN<T, 4>& y, VecN<T, 4>& out) const {
    VecN<T, 4> yy(3);
    for (int i = 0; i < 3; ++i) {
      T acc(b_[i]);
      for (int j = 0; j < 3; ++j) acc += M_(i, j) * y[j];
      yy[i] = acc;
    }
    eval_field(*F_, yy, out);
  }

 private:
  const Immersion* F_;
  MatN<double, 4> M_;
  VecN<double, 4> b_;
};

}  // namespace parageo
