#pragma once

// Almost product structures P (P^2 = Id, tr P = 0), their compatibility with
// a metric, and the associated neutral metric g_-(u,v) = g(Pu, v).

#include <vector>

#include "parageo/curvature.hpp"
#include "parageo/fields.hpp"

namespace parageo {

// (g_-)_{ij} = g_{ik} P^k_j, evaluable wherever g and P are
class NeutralMetric : public MetricFieldCRTP<NeutralMetric> {
 public:
  NeutralMetric(const MetricField& g, const EndoField& P) : g_(&g), P_(&P) {}

  int dim() const override { return g_->dim(); }
  Box domain() const override { return g_->domain(); }

  template <class T>
  void eval_impl(const VecN<T, 4>& x, MatN<T, 4>& out) const {
    const int n = g_->dim();
    MatN<T, 4> G(n, n), P(n, n);
    eval_field(*g_, x, G);
    eval_field(*P_, x, P);
    out = matmul(G, P);
  }

 private:
  const MetricField* g_;
  const EndoField* P_;
};

struct ParacomplexReport {
  double square_residual = 0.0;    // max |P^2 - Id|
  double trace_residual = 0.0;     // max |tr P|
  double isometry_residual = 0.0;  // max |P^T g P - g|
  double parallel_residual = 0.0;  // max |grad P|
  double fd_err = 0.0;

  double worst() const {
    return std::max({square_residual, trace_residual, isometry_residual,
                     parallel_residual});
  }
};

ParacomplexReport verify_paracomplex(const EndoField& P, const MetricField& g,
                                     const std::vector<VecN<double, 4>>& pts,
                                     DerivCtx ctx = {});

struct NeutralReport {
  double christoffel_diff = 0.0;  // between g and g_-
  double ricci_diff = 0.0;
  double scalar_max = 0.0;        // |scalar of g_-|
  double weyl_max = 0.0;          // |Weyl of g_-|
  int sig_pos = 0, sig_neg = 0;
  double fd_err = 0.0;
};

NeutralReport verify_neutral_properties(const MetricField& g,
                                        const EndoField& P,
                                        const std::vector<VecN<double, 4>>& pts,
                                        DerivCtx ctx = {});

}  // namespace parageo
