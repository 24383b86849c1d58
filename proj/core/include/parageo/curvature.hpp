#pragma once

// Levi-Civita connection and curvature of a MetricField, any signature.
//
// Conventions (anchored by unit tests against round spheres):
//   R(u,v)w = grad_u grad_v w - grad_v grad_u w - grad_[u,v] w
//   R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
//               + Gamma^i_{km} Gamma^m_{lj} - Gamma^i_{lm} Gamma^m_{kj}
//   Ric_{jl} = R^i_{jil};  scalar = g^{jl} Ric_{jl}
// With these signs the unit round 2-sphere has scalar curvature +2.

#include <vector>

#include "parageo/fields.hpp"
#include "parageo/finite_diff.hpp"
#include "parageo/linalg.hpp"
#include "parageo/sym_eigen.hpp"

namespace parageo {

template <class T>
struct Tensor3N {
  std::array<T, 64> e{};
  int n = 0;
  T& operator()(int a, int b, int c) { return e[(a * 4 + b) * 4 + c]; }
  const T& operator()(int a, int b, int c) const {
    return e[(a * 4 + b) * 4 + c];
  }
};

struct Tensor4N {
  std::array<double, 256> e{};
  int n = 0;
  double& operator()(int a, int b, int c, int d) {
    return e[((a * 4 + b) * 4 + c) * 4 + d];
  }
  const double& operator()(int a, int b, int c, int d) const {
    return e[((a * 4 + b) * 4 + c) * 4 + d];
  }
};

inline double max_abs(const Tensor4N& t) {
  double m = 0;
  for (double v : t.e) m = std::max(m, std::abs(v));
  return m;
}
template <class T>
double max_abs(const Tensor3N<T>& t) {
  double m = 0;
  for (const auto& v : t.e) m = std::max(m, std::abs(value_of(v)));
  return m;
}

// metric components as one-layer jets at x (value + first/second partials),
// honoring the derivative mode
MatN<Jet2, 4> metric_jets(const MetricField& g, const VecN<double, 4>& x,
                          DerivCtx& ctx);

// Christoffel symbols Gamma^k_{ij}, index order (k,i,j), at scalar level T.
// The fd mode only applies at T = double; jet levels always differentiate
// through the tower.
template <class JT>
Tensor3N<typename JT::scalar> christoffel_from_jets(const MatN<JT, 4>& G) {
  using T = typename JT::scalar;
  const int n = G.rows;
  MatN<T, 4> gval(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gval(i, j) = G(i, j).v;
  const MatN<T, 4> ginv = inverse(gval);
  Tensor3N<T> c;
  c.n = n;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        T acc{};
        for (int l = 0; l < n; ++l)
          acc += ginv(k, l) * (G(j, l).g[i] + G(i, l).g[j] - G(i, j).g[l]);
        c(k, i, j) = 0.5 * acc;
        c(k, j, i) = c(k, i, j);
      }
  return c;
}

template <class T>
Tensor3N<T> christoffel(const MetricField& g, const VecN<T, 4>& x,
                        DerivCtx& ctx) {
  if constexpr (std::is_same_v<T, double>) {
    return christoffel_from_jets(metric_jets(g, x, ctx));
  } else {
    const int n = g.dim();
    auto xl = lift_vars(x, n);
    MatN<lift_t<T>, 4> G(n, n);
    eval_field(g, xl, G);
    return christoffel_from_jets(G);
  }
}

// Gamma together with its first partials (entries are Jet2 over the chart)
Tensor3N<Jet2> christoffel_jets(const MetricField& g, const VecN<double, 4>& x,
                                DerivCtx& ctx);

struct CurvatureReport {
  int dim = 0;
  MatN<double, 4> g, ginv;
  Tensor3N<double> gamma;
  Tensor4N riemann;  // fully lowered R_{ijkl}
  MatN<double, 4> ricci;
  double scalar = 0.0;
  Tensor4N weyl;               // dim 4 only, lowered
  double einstein_residual = 0.0;  // max |Ric - (scalar/dim) g|
  int sig_pos = 0, sig_neg = 0, sig_zero = 0;
  double fd_err = 0.0;
};

CurvatureReport curvature(const MetricField& g, const VecN<double, 4>& x,
                          DerivCtx ctx = {});

struct EinsteinSummary {
  bool einstein = false;
  double rbar = 0.0;            // mean scalar curvature over samples
  double max_residual = 0.0;    // traceless Ricci part
  double scalar_spread = 0.0;   // max |scalar - rbar|
};

EinsteinSummary is_einstein(const MetricField& g,
                            const std::vector<VecN<double, 4>>& pts,
                            double tol = 1e-6, DerivCtx ctx = {});

// (grad_k P)^i_j of an endomorphism field, index order (k,i,j)
Tensor3N<double> covariant_derivative_11(const EndoField& P,
                                         const MetricField& g,
                                         const VecN<double, 4>& x,
                                         DerivCtx ctx = {});

}  // namespace parageo
