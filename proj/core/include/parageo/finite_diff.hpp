#pragma once

// Central finite differences with one Richardson extrapolation level
// (steps h and h/2).  Every result carries an error estimate:
// |extrapolated - finer estimate| plus a rounding floor.

#include <cmath>
#include <vector>

#include "parageo/jet.hpp"
#include "parageo/linalg.hpp"

namespace parageo {

struct Fd1 {
  double value = 0.0;
  double err = 0.0;
};

template <class F>
Fd1 fd_derivative(F&& f, double t0, double h = 2e-3) {
  auto central = [&](double step) {
    return (f(t0 + step) - f(t0 - step)) / (2.0 * step);
  };
  const double d1 = central(h), d2 = central(h / 2);
  const double rich = (4.0 * d2 - d1) / 3.0;
  const double scale = std::max({std::abs(f(t0)), std::abs(d2) * h, 1e-6});
  const double floor = 8.0 * 2.2e-16 * scale / h;
  return {rich, std::max(std::abs(rich - d2), floor)};
}

template <class F>
Fd1 fd_second(F&& f, double t0, double h = 2e-3) {
  const double f0 = f(t0);
  auto central2 = [&](double step) {
    return (f(t0 + step) - 2.0 * f0 + f(t0 - step)) / (step * step);
  };
  const double d1 = central2(h), d2 = central2(h / 2);
  const double rich = (4.0 * d2 - d1) / 3.0;
  const double scale = std::max(std::abs(f0), 1e-6);
  const double floor = 16.0 * 2.2e-16 * scale / (h * h / 4.0);
  return {rich, std::max(std::abs(rich - d2), floor)};
}

// Full second-order jets (arity <= 6) of a vector of components evaluated
// together, so one field evaluation feeds every component's stencil.
// F: (const VecN<double, C>&) -> std::vector<double>, fixed length.
template <int C, class F>
std::vector<Jet2> fd_jets(F&& f, const VecN<double, C>& x, int arity,
                          double h, double* err_out = nullptr) {
  require(arity >= 1 && arity <= 6 && arity <= x.n, "fd_jets: bad arity");
  auto at = [&](int i, double di, int j, double dj) {
    VecN<double, C> y = x;
    y[i] += di;
    if (j >= 0) y[j] += dj;
    return f(y);
  };
  const std::vector<double> f0 = f(x);
  const int m = static_cast<int>(f0.size());
  std::vector<Jet2> out(m);
  for (int c = 0; c < m; ++c) {
    out[c].n = arity;
    out[c].v = f0[c];
  }
  double max_err = 0.0, max_f = 0.0;
  for (double v : f0) max_f = std::max(max_f, std::abs(v));

  struct Pair {
    std::vector<double> plus, minus, plus2, minus2;
  };
  for (int i = 0; i < arity; ++i) {
    const Pair p{at(i, h, -1, 0), at(i, -h, -1, 0), at(i, h / 2, -1, 0),
                 at(i, -h / 2, -1, 0)};
    for (int c = 0; c < m; ++c) {
      const double d1 = (p.plus[c] - p.minus[c]) / (2.0 * h);
      const double d2 = (p.plus2[c] - p.minus2[c]) / h;
      const double g = (4.0 * d2 - d1) / 3.0;
      out[c].g[i] = g;
      max_err = std::max(max_err, std::abs(g - d2));

      const double s1 = (p.plus[c] - 2.0 * f0[c] + p.minus[c]) / (h * h);
      const double s2 =
          (p.plus2[c] - 2.0 * f0[c] + p.minus2[c]) / (h * h / 4.0);
      const double hh = (4.0 * s2 - s1) / 3.0;
      out[c].hess(i, i) = hh;
      max_err = std::max(max_err, std::abs(hh - s2));
    }
  }
  for (int i = 0; i < arity; ++i)
    for (int j = i + 1; j < arity; ++j) {
      auto mixed = [&](double s) {
        const auto pp = at(i, s, j, s), pm = at(i, s, j, -s),
                   mp = at(i, -s, j, s), mm = at(i, -s, j, -s);
        std::vector<double> r(m);
        for (int c = 0; c < m; ++c)
          r[c] = (pp[c] - pm[c] - mp[c] + mm[c]) / (4.0 * s * s);
        return r;
      };
      const auto m1 = mixed(h), m2 = mixed(h / 2);
      for (int c = 0; c < m; ++c) {
        const double v = (4.0 * m2[c] - m1[c]) / 3.0;
        out[c].hess(i, j) = v;
        max_err = std::max(max_err, std::abs(v - m2[c]));
      }
    }
  // rounding floors: eps*|f|/h for gradients, eps*|f|/h^2 for Hessians
  const double eps = 2.2e-16;
  max_err = std::max(max_err, 16.0 * eps * std::max(max_f, 1e-6) /
                                  (h * h / 4.0));
  if (err_out) *err_out = max_err;
  return out;
}

// First partials only (same Richardson scheme, no corner stencils).  The
// returned jets carry value and gradient; Hessian slots stay zero.
template <int C, class F>
std::vector<Jet2> fd_gradients(F&& f, const VecN<double, C>& x, int arity,
                               double h, double* err_out = nullptr) {
  require(arity >= 1 && arity <= 6 && arity <= x.n, "fd_gradients: bad arity");
  auto at = [&](int i, double di) {
    VecN<double, C> y = x;
    y[i] += di;
    return f(y);
  };
  const std::vector<double> f0 = f(x);
  const int m = static_cast<int>(f0.size());
  std::vector<Jet2> out(m);
  for (int c = 0; c < m; ++c) {
    out[c].n = arity;
    out[c].v = f0[c];
  }
  double max_err = 0.0, max_f = 0.0;
  for (double v : f0) max_f = std::max(max_f, std::abs(v));
  for (int i = 0; i < arity; ++i) {
    const auto plus = at(i, h), minus = at(i, -h);
    const auto plus2 = at(i, h / 2), minus2 = at(i, -h / 2);
    for (int c = 0; c < m; ++c) {
      const double d1 = (plus[c] - minus[c]) / (2.0 * h);
      const double d2 = (plus2[c] - minus2[c]) / h;
      const double g = (4.0 * d2 - d1) / 3.0;
      out[c].g[i] = g;
      max_err = std::max(max_err, std::abs(g - d2));
    }
  }
  max_err = std::max(max_err, 8.0 * 2.2e-16 * std::max(max_f, 1e-6) / h);
  if (err_out) *err_out = max_err;
  return out;
}

}  // namespace parageo
