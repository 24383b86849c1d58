#include "parageo/shape.hpp"

namespace parageo {

PrincipalData principal_data(const SurfPoint<double>& s, const MetricField& g,
                             const EndoField& P) {
  PrincipalData out;
  MatN<double, 4> G(4, 4), Pm(4, 4);
  g.eval_d(s.x, G);
  P.eval_d(s.x, Pm);

  // shape operator matrix in a g-orthonormal tangent frame is symmetric
  const auto f = tangent_frame(s, g);
  MatN<double, 4> coef(3, 3);  // frame vector a = coef(c,a) d_c
  for (int a = 0; a < 3; ++a) {
    VecN<double, 4> fa(4);
    for (int i = 0; i < 4; ++i) fa[i] = f(i, a);
    const auto c = tangent_coords(s, g, fa);
    for (int cc = 0; cc < 3; ++cc) coef(cc, a) = c[cc];
  }
  MatN<double, 6> S(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double acc = 0;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          acc += coef(c, a) * coef(d, b) * s.sigma(c, d);
      S(a, b) = acc;
    }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const double m = 0.5 * (S(a, b) + S(b, a));
      S(a, b) = S(b, a) = m;  // symmetric up to roundoff by construction
    }
  const auto eig = sym_eigen(S);

  MatN<double, 4> evec(4, 3);  // ambient eigenvectors
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 4; ++i) {
      double acc = 0;
      for (int a = 0; a < 3; ++a) acc += f(i, a) * eig.vectors(a, k);
      evec(i, k) = acc;
    }

  // which eigendirection is the tangent part of PN?
  const double xnorm2 = inner(G, s.X, s.X);
  int m = 0;
  if (xnorm2 > 1e-12) {
    double best = -1;
    for (int k = 0; k < 3; ++k) {
      VecN<double, 4> ek(4);
      for (int i = 0; i < 4; ++i) ek[i] = evec(i, k);
      const double ov = std::abs(inner(G, ek, s.X)) / std::sqrt(xnorm2);
      if (ov > best) {
        best = ov;
        m = k;
      }
    }
    out.x_eigen_gap = std::abs(1.0 - best);
  } else {
    double best = 1e300;  // |C| = 1: fall back to the smallest curvature
    for (int k = 0; k < 3; ++k)
      if (std::abs(eig.values[k]) < best) {
        best = std::abs(eig.values[k]);
        m = k;
      }
  }
  int rest[2], ri = 0;
  for (int k = 0; k < 3; ++k)
    if (k != m) rest[ri++] = k;
  // lambda1 >= lambda2 on the (e1, e2) plane
  if (eig.values[rest[0]] < eig.values[rest[1]]) std::swap(rest[0], rest[1]);

  out.lambda = {eig.values[rest[0]], eig.values[rest[1]], eig.values[m]};
  out.frame = MatN<double, 4>(4, 3);
  const int order[3] = {rest[0], rest[1], m};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 4; ++i) out.frame(i, k) = evec(i, order[k]);
  out.degenerate_pair =
      std::abs(out.lambda[0] - out.lambda[1]) <=
      1e-8 * std::max(1.0, std::abs(out.lambda[0]) + std::abs(out.lambda[1]));

  VecN<double, 4> e1(4), e2(4);
  for (int i = 0; i < 4; ++i) {
    e1[i] = out.frame(i, 0);
    e2[i] = out.frame(i, 1);
  }
  const auto Pe1 = matvec(Pm, e1);
  const double cth = inner(G, Pe1, e1);
  const double sth = inner(G, Pe1, e2);
  out.theta = std::atan2(sth, cth);
  out.cos2theta = std::cos(2.0 * out.theta);
  const VecN<double, 4> res = Pe1 - (cth * e1 + sth * e2);
  out.plane_residual = std::sqrt(std::abs(inner(G, res, res)));
  return out;
}

}  // namespace parageo
