#include "parageo/bivector.hpp"

namespace parageo {

MatN<double, 6> hodge_star_matrix() {
  MatN<double, 6> s(6, 6);
  VecN<double, 6> col(6);
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 6; ++i) col[i] = (i == j) ? 1.0 : 0.0;
    const auto sc = hodge_star(col);
    for (int i = 0; i < 6; ++i) s(i, j) = sc[i];
  }
  return s;
}

PlueckerChart::PlueckerChart(const VecN<double, 6>& base) : base_(base) {
  require(base.n == 6, "plucker chart: base must be a bivector");
  require(quadric_residual(base) <= 1e-10,
          "plucker chart: base point is off the quadric");
  const auto sb = hodge_star(base_);

  // Gram-Schmidt coordinate directions against span{base, *base}; keep the
  // four that survive with enough norm to be numerically safe.
  frame_ = MatN<double, 6>(6, 4);
  int got = 0;
  for (int j = 0; j < 6 && got < 4; ++j) {
    VecN<double, 6> v(6);
    v[j] = 1.0;
    auto drop = [&](const VecN<double, 6>& u) {
      const double c = biv_inner(v, u);
      for (int i = 0; i < 6; ++i) v[i] -= c * u[i];
    };
    drop(base_);
    drop(sb);
    for (int a = 0; a < got; ++a) {
      VecN<double, 6> u(6);
      for (int i = 0; i < 6; ++i) u[i] = frame_(i, a);
      drop(u);
    }
    const double nrm = std::sqrt(biv_inner(v, v));
    if (nrm < 0.25) continue;
    for (int i = 0; i < 6; ++i) frame_(i, got) = v[i] / nrm;
    ++got;
  }
  require(got == 4, "plucker chart: tangent frame construction failed");
}

}  // namespace parageo
