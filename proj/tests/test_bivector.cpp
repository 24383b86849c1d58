#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "parageo/finite_diff.hpp"
#include "parageo/hyper_checks.hpp"
#include "parageo/models/geodesic_space.hpp"
#include "parageo/parastructure.hpp"

using namespace parageo;

namespace {

constexpr double kPi = std::numbers::pi;

struct GeoRig {
  GeodesicMetric g;
  HodgeStructure P;
  explicit GeoRig(const PlueckerChart& ch) : g(ch), P(ch) {}
};

HyperScenario scenario(const GeoRig& rig, const Immersion& F,
                       const ReferenceData* ref,
                       const std::array<int, 4>& counts) {
  HyperScenario sc;
  sc.F = &F;
  sc.g = &rig.g;
  sc.P = &rig.P;
  sc.rbar = 8.0;
  sc.ref = ref;
  sc.samples = lattice(F.domain(), counts);
  return sc;
}

void expect_pass(const HyperScenario& sc, const std::string& name,
                 double tol = -1.0) {
  const auto r = run_check(sc, name);
  CAPTURE(name);
  CAPTURE(r.max_residual);
  CAPTURE(r.note);
  CHECK(r.applicable);
  CHECK(r.samples > 0);
  if (tol > 0) {
    CHECK(r.max_residual <= tol);
  } else {
    CHECK(r.pass);
  }
}

VecN<double, 6> basis6(int i) {
  VecN<double, 6> v(6);
  v[i] = 1.0;
  return v;
}

VecN<double, 6> random_quadric_point(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  VecN<double, 4> a(4), b(4);
  for (int i = 0; i < 4; ++i) {
    a[i] = nd(rng);
    b[i] = nd(rng);
  }
  double na = 0;
  for (int i = 0; i < 4; ++i) na += a[i] * a[i];
  for (int i = 0; i < 4; ++i) a[i] /= std::sqrt(na);
  double ab = 0;
  for (int i = 0; i < 4; ++i) ab += a[i] * b[i];
  for (int i = 0; i < 4; ++i) b[i] -= ab * a[i];
  double nb = 0;
  for (int i = 0; i < 4; ++i) nb += b[i] * b[i];
  for (int i = 0; i < 4; ++i) b[i] /= std::sqrt(nb);
  return wedge(a, b);
}

// principal curvatures recovered from finite differences of the closed-form
// point and normal: an oracle independent of the stated curvatures
std::array<double, 2> principal_fd(const SurfaceInSpaceForm& s, double al,
                                   double be) {
  VecN<double, 4> x(2);
  x[0] = al;
  x[1] = be;
  const auto jets = fd_jets(
      [&](const VecN<double, 4>& y) {
        VecN<double, 4> p(4), nu(4), e1(4), e2(4);
        s.frame(y[0], y[1], p, nu, e1, e2);
        std::vector<double> out(8);
        for (int i = 0; i < 4; ++i) {
          out[i] = p[i];
          out[4 + i] = nu[i];
        }
        return out;
      },
      x, 2, 1e-3);
  double h[2][2], sg[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      h[a][b] = 0;
      sg[a][b] = 0;
      for (int i = 0; i < 4; ++i) {
        h[a][b] += jets[i].g[a] * jets[i].g[b];
        sg[a][b] -= jets[4 + i].g[a] * jets[i].g[b];
      }
    }
  // eigenvalues of h^{-1/2} sg h^{-1/2}: Lipschitz in the entries, so no
  // sqrt amplification of the fd error at umbilic (double-root) points
  const double sg01 = 0.5 * (sg[0][1] + sg[1][0]);
  const double dh = std::sqrt(h[0][0] * h[1][1] - h[0][1] * h[1][0]);
  const double th = std::sqrt(h[0][0] + h[1][1] + 2.0 * dh);
  const double bi[2][2] = {{(h[1][1] + dh) / (th * dh), -h[0][1] / (th * dh)},
                           {-h[0][1] / (th * dh), (h[0][0] + dh) / (th * dh)}};
  double m[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      m[a][b] = 0;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          const double s_pq = p == q ? sg[p][p] : sg01;
          m[a][b] += bi[a][p] * s_pq * bi[q][b];
        }
    }
  const double mean = 0.5 * (m[0][0] + m[1][1]);
  const double rad =
      std::sqrt(sqr(0.5 * (m[0][0] - m[1][1])) + sqr(0.5 * (m[0][1] + m[1][0])));
  return {mean + rad, mean - rad};
}

}  // namespace

TEST_CASE("hodge star is a trace-free involution pairing dual planes") {
  const auto S = hodge_star_matrix();
  double tr = 0;
  for (int i = 0; i < 6; ++i) tr += S(i, i);
  CHECK(tr == doctest::Approx(0.0).epsilon(1e-15));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      CHECK(S(i, j) == S(j, i));
      double sq = 0;
      for (int k = 0; k < 6; ++k) sq += S(i, k) * S(k, j);
      CHECK(sq == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-15));
    }

  const auto e12 = basis6(0), e34 = basis6(5);
  CHECK(biv_inner(e12, e12) == doctest::Approx(1.0));
  CHECK(biv_inner(e12, e34) == doctest::Approx(0.0));
  const auto star12 = hodge_star(e12);
  for (int i = 0; i < 6; ++i)
    CHECK(star12[i] == doctest::Approx(e34[i]).epsilon(1e-15));

  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    VecN<double, 4> a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = nd(rng);
      b[i] = nd(rng);
    }
    const auto w = wedge(a, b);
    // decomposable bivectors sit on the Plucker cone
    CHECK(std::abs(plucker_form(w)) <= 1e-13 * (1.0 + biv_inner(w, w)));
    // |a^b|^2 = |a|^2 |b|^2 - <a,b>^2
    double aa = 0, bb = 0, ab = 0;
    for (int i = 0; i < 4; ++i) {
      aa += a[i] * a[i];
      bb += b[i] * b[i];
      ab += a[i] * b[i];
    }
    CHECK(biv_inner(w, w) ==
          doctest::Approx(aa * bb - ab * ab).epsilon(1e-12));
    // <xi, *xi> = 2 q(xi) for arbitrary bivectors
    VecN<double, 6> xi(6);
    for (int i = 0; i < 6; ++i) xi[i] = nd(rng);
    CHECK(biv_inner(xi, hodge_star(xi)) ==
          doctest::Approx(2.0 * plucker_form(xi)).epsilon(1e-12));
  }
}

TEST_CASE("quadric retraction: tight constraints, quadratic convergence") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ud(-1e-2, 1e-2);
  for (int trial = 0; trial < 20; ++trial) {
    auto xi = random_quadric_point(rng);
    CHECK(quadric_residual(xi) <= 1e-13);
    for (int i = 0; i < 6; ++i) xi[i] += ud(rng);

    std::vector<double> log;
    const auto out = retract_quadric(xi, &log);
    CHECK(quadric_residual(out) <= 1e-12);
    REQUIRE(log.size() >= 2);
    CHECK(log.size() <= 12);
    for (size_t k = 1; k + 1 < log.size(); ++k) {
      if (log[k] <= 1e-13) break;
      CHECK(log[k + 1] <= 0.1 * log[k]);
    }
  }

  // the projection is differentiable: jet slots match finite differences
  std::vector<double> dummy;
  VecN<double, 6> xi0 = random_quadric_point(rng);
  VecN<double, 4> seed(3);
  seed[0] = 0.004;
  seed[1] = -0.007;
  seed[2] = 0.002;
  auto offset = [&](const VecN<double, 4>& t) {
    VecN<double, 6> p = xi0;
    p[0] += t[0];
    p[2] += t[1] + 0.5 * t[0];
    p[4] += t[2];
    return p;
  };
  double fd_err = 0.0;
  const auto fj = fd_jets(
      [&](const VecN<double, 4>& t) {
        const auto r = retract_quadric(offset(t));
        std::vector<double> out(6);
        for (int i = 0; i < 6; ++i) out[i] = r[i];
        return out;
      },
      seed, 3, 1e-3, &fd_err);
  VecN<Jet2, 6> pj(6);
  {
    const auto base = offset(seed);
    for (int i = 0; i < 6; ++i) pj[i] = Jet2(base[i]);
    pj[0] = pj[0] + jet_var<Jet2>(0.0, 0, 3);
    pj[2] = pj[2] + jet_var<Jet2>(0.0, 1, 3) + 0.5 * jet_var<Jet2>(0.0, 0, 3);
    pj[4] = pj[4] + jet_var<Jet2>(0.0, 2, 3);
  }
  const auto rj = retract_quadric(pj);
  for (int i = 0; i < 6; ++i) {
    CHECK(rj[i].v == doctest::Approx(fj[i].v).epsilon(1e-10));
    for (int a = 0; a < 3; ++a)
      CHECK(std::abs(rj[i].g[a] - fj[i].g[a]) <= std::max(1e-8, 20.0 * fd_err));
  }
}

TEST_CASE("plucker chart: orthonormal frame, roundtrip, guarded base") {
  const auto chart = standard_chart();
  const auto& F = chart.frame();
  const auto sb = hodge_star(chart.base());
  for (int a = 0; a < 4; ++a) {
    VecN<double, 6> fa(6);
    for (int i = 0; i < 6; ++i) fa[i] = F(i, a);
    CHECK(std::abs(biv_inner(fa, chart.base())) <= 1e-14);
    CHECK(std::abs(biv_inner(fa, sb)) <= 1e-14);
    for (int b = 0; b < 4; ++b) {
      VecN<double, 6> fb(6);
      for (int i = 0; i < 6; ++i) fb[i] = F(i, b);
      CHECK(biv_inner(fa, fb) ==
            doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-14));
    }
  }

  const auto at_zero = chart.embed(VecN<double, 4>(4));
  for (int i = 0; i < 6; ++i)
    CHECK(at_zero[i] == doctest::Approx(chart.base()[i]).epsilon(1e-14));

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ud(-0.5, 0.5);
  for (int trial = 0; trial < 12; ++trial) {
    VecN<double, 4> y(4);
    for (int a = 0; a < 4; ++a) y[a] = ud(rng);
    const auto xi = chart.embed(y);
    CHECK(quadric_residual(xi) <= 1e-12);
    const auto back = chart.invert(xi);
    for (int a = 0; a < 4; ++a)
      CHECK(std::abs(back[a] - y[a]) <= 1e-12);
  }

  // embed derivatives: jets against finite differences
  VecN<double, 4> y0(4);
  y0[0] = 0.21;
  y0[1] = -0.33;
  y0[2] = 0.12;
  y0[3] = 0.27;
  double fd_err = 0.0;
  const auto fj = fd_jets(
      [&](const VecN<double, 4>& y) {
        const auto xi = chart.embed(y);
        std::vector<double> out(6);
        for (int i = 0; i < 6; ++i) out[i] = xi[i];
        return out;
      },
      y0, 4, 1e-3, &fd_err);
  const auto xj = chart.embed(lift_vars(y0, 4));
  for (int i = 0; i < 6; ++i)
    for (int a = 0; a < 4; ++a)
      CHECK(std::abs(xj[i].g[a] - fj[i].g[a]) <= std::max(1e-8, 20.0 * fd_err));

  VecN<double, 6> off(6);
  off[0] = 1.1;
  CHECK_THROWS(PlueckerChart(off));
}

TEST_CASE("circle space is Einstein with scalar curvature 8") {
  GeoRig rig(standard_chart());
  const auto pts = lattice(rig.g.domain(), {2, 2, 2, 2});

  const auto es = is_einstein(rig.g, pts, 1e-6);
  CAPTURE(es.max_residual);
  CAPTURE(es.scalar_spread);
  CHECK(es.einstein);
  CHECK(es.rbar == doctest::Approx(8.0).epsilon(1e-8));
  CHECK(es.scalar_spread <= 1e-7);

  VecN<double, 4> y0(4);
  y0[0] = 0.1;
  y0[1] = -0.2;
  y0[2] = 0.15;
  y0[3] = 0.05;
  const auto rep = curvature(rig.g, y0);
  CHECK(rep.sig_pos == 4);
  CHECK(rep.sig_neg == 0);
  CHECK(rep.scalar == doctest::Approx(8.0).epsilon(1e-8));
}

TEST_CASE("hodge structure: parallel paracomplex, neutral metric scalar flat") {
  GeoRig rig(standard_chart());
  const auto pts = lattice(rig.g.domain(), {3, 3, 3, 1});
  REQUIRE(pts.size() == 27);

  const auto rep = verify_paracomplex(rig.P, rig.g, pts);
  CAPTURE(rep.square_residual);
  CAPTURE(rep.isometry_residual);
  CAPTURE(rep.parallel_residual);
  CHECK(rep.square_residual <= 1e-10);
  CHECK(rep.trace_residual <= 1e-10);
  CHECK(rep.isometry_residual <= 1e-10);
  CHECK(rep.parallel_residual <= 1e-7);

  const auto nrep = verify_neutral_properties(rig.g, rig.P, pts);
  CAPTURE(nrep.christoffel_diff);
  CAPTURE(nrep.ricci_diff);
  CAPTURE(nrep.scalar_max);
  CAPTURE(nrep.weyl_max);
  CHECK(nrep.christoffel_diff <= 1e-7);
  CHECK(nrep.ricci_diff <= 1e-6);
  CHECK(nrep.scalar_max <= 1e-6);
  CHECK(nrep.weyl_max <= 1e-6);
  CHECK(nrep.sig_pos == 2);
  CHECK(nrep.sig_neg == 2);

  // the jet tower tops out below this metric's internal lift
  VecN<Jet2c, 4> xc(4);
  MatN<Jet2c, 4> outc;
  CHECK_THROWS(rig.g.eval_jc(xc, outc));
  CHECK_THROWS(rig.P.eval_jc(xc, outc));
}

TEST_CASE("space-form surfaces: unit frames and curvature oracle") {
  for (const auto& s : {SurfaceInSpaceForm::geodesic_sphere(0.6),
                        SurfaceInSpaceForm::geodesic_sphere(kPi / 4.0),
                        SurfaceInSpaceForm::clifford_torus()}) {
    for (const auto& y : lattice(s.domain(), {4, 4, 1, 1})) {
      VecN<double, 4> p(4), nu(4), e1(4), e2(4);
      s.frame(y[0], y[1], p, nu, e1, e2);
      const std::array<VecN<double, 4>, 4> v{p, nu, e1, e2};
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          double d = 0;
          for (int k = 0; k < 4; ++k) d += v[i][k] * v[j][k];
          CHECK(std::abs(d - (i == j ? 1.0 : 0.0)) <= 1e-12);
        }

      auto kap = principal_fd(s, y[0], y[1]);
      auto ref = s.principal();
      std::sort(kap.begin(), kap.end());
      std::sort(ref.begin(), ref.end());
      CHECK(std::abs(kap[0] - ref[0]) <= 1e-8);
      CHECK(std::abs(kap[1] - ref[1]) <= 1e-8);
    }
  }
  CHECK_THROWS(SurfaceInSpaceForm::geodesic_sphere(0.01));
}

TEST_CASE("tangential congruence of the r = pi/4 sphere: null and minimal") {
  const auto surf = SurfaceInSpaceForm::geodesic_sphere(kPi / 4.0);
  TangentialCongruence cong(surf);
  GeoRig rig(cong.chart());
  const auto ref = cong.reference();
  auto sc = scenario(rig, cong, &ref, {5, 1, 8});
  REQUIRE(sc.samples.size() == 40);

  expect_pass(sc, "nullity", 1e-6);
  expect_pass(sc, "c-range");
  expect_pass(sc, "unit-normal");
  expect_pass(sc, "shape-symmetry");
  expect_pass(sc, "trivial-direction");
  expect_pass(sc, "eigenvalues", 1e-4);
  expect_pass(sc, "mean-curvature", 1e-5);
  expect_pass(sc, "principal-angle");
  expect_pass(sc, "null-classification");

  // minimal, so the cmc check has nothing to compare against
  const auto cmc = run_check(sc, "cmc-relation");
  CHECK(!cmc.applicable);
  CHECK(cmc.note.find("minimal") != std::string::npos);

  // a totally geodesic surface has no well-defined tangential congruence
  CHECK_THROWS(TangentialCongruence(SurfaceInSpaceForm::geodesic_sphere(kPi / 2.0)));
}

TEST_CASE("congruence of a non-minimal sphere: cmc holds, stated pair drifts") {
  const double r = 0.6;
  const auto surf = SurfaceInSpaceForm::geodesic_sphere(r);
  TangentialCongruence cong(surf);
  GeoRig rig(cong.chart());
  const auto ref = cong.reference();
  auto sc = scenario(rig, cong, &ref, {3, 1, 6});

  expect_pass(sc, "nullity", 1e-6);
  expect_pass(sc, "unit-normal");
  expect_pass(sc, "shape-symmetry");
  expect_pass(sc, "trivial-direction");
  expect_pass(sc, "null-classification");

  // measured curvatures are {tan r, -cot r, 0}: a constant-mean-curvature
  // null hypersurface, so -8 l1 l2 must reproduce the ambient scalar 8
  const double kt = std::tan(r), kc = 1.0 / std::tan(r);
  for (const auto& y : lattice(cong.domain(), {2, 1, 3})) {
    const auto sd = shape_data(cong, rig.g, rig.P, y, sc.ctx);
    CHECK(lambda_match_distance(sd.pd.lambda, {kt, -kc, 0.0}) <= 1e-6);
    CHECK(std::abs(std::abs(sd.s.H) - (kc - kt) / 3.0) <= 1e-8);
  }
  expect_pass(sc, "cmc-relation");

  // the surface-data prediction {cot r, -cot r} misses the true mean
  // curvature for every radius except pi/4
  const auto ev = run_check(sc, "eigenvalues");
  CHECK(ev.applicable);
  CHECK(!ev.pass);
  CHECK(ev.max_residual == doctest::Approx(kc - kt).epsilon(1e-4));
  const auto mc = run_check(sc, "mean-curvature");
  CHECK(!mc.pass);
  CHECK(mc.max_residual == doctest::Approx((kc - kt) / 3.0).epsilon(1e-4));
}

TEST_CASE("congruence of the Clifford torus: stated pair fails, closed form") {
  const auto surf = SurfaceInSpaceForm::clifford_torus();
  TangentialCongruence cong(surf);
  GeoRig rig(cong.chart());
  const auto ref = cong.reference();
  auto sc = scenario(rig, cong, &ref, {3, 1, 8});

  expect_pass(sc, "nullity", 1e-6);
  expect_pass(sc, "unit-normal");
  expect_pass(sc, "shape-symmetry");
  expect_pass(sc, "trivial-direction");
  expect_pass(sc, "principal-angle");
  expect_pass(sc, "null-classification");

  // true curvatures {cot(pi/4 - th), tan(pi/4 - th), 0}; the stated pair
  // {cos 2th, cos 2th} has the right trace direction only at th = 0
  double worst_gap = 0.0;
  for (const auto& y : lattice(cong.domain(), {2, 1, 6})) {
    const double u = kPi / 4.0 - y[2];
    const std::array<double, 3> truth{std::cos(u) / std::sin(u),
                                      std::sin(u) / std::cos(u), 0.0};
    const auto sd = shape_data(cong, rig.g, rig.P, y, sc.ctx);
    CHECK(lambda_match_distance(sd.pd.lambda, truth) <= 1e-6);
    CHECK(std::abs(std::abs(sd.s.H) - 2.0 / (3.0 * std::cos(2.0 * y[2]))) <=
          1e-8);
    worst_gap = std::max(
        worst_gap, lambda_match_distance(truth, ref.lambdas(y)));
  }
  CHECK(worst_gap > 0.5);

  const auto ev = run_check(sc, "eigenvalues");
  CHECK(ev.applicable);
  CHECK(!ev.pass);
  CHECK(ev.max_residual == doctest::Approx(worst_gap).epsilon(1e-3));
}
