// Microbenchmarks for the hot paths: jet arithmetic, pointwise curvature,
// shape operator extraction, and the congruence chart solve.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "parageo/hyper_checks.hpp"
#include "parageo/models/geodesic_space.hpp"

using namespace parageo;

namespace {

VecN<double, 4> pt4(double a, double b, double c, double d) {
  VecN<double, 4> x(4);
  x[0] = a;
  x[1] = b;
  x[2] = c;
  x[3] = d;
  return x;
}

VecN<double, 4> pt3(double a, double b, double c) {
  VecN<double, 4> y(3);
  y[0] = a;
  y[1] = b;
  y[2] = c;
  return y;
}

const VecN<double, 4> kX = pt4(0.7, 1.1, 0.9, -0.4);
const VecN<double, 4> kY = pt3(0.7, 1.1, 0.3);

void BM_JetArithmetic(benchmark::State& state) {
  const auto a = jet_var<Jet2>(0.7, 0, 4);
  const auto b = jet_var<Jet2>(-0.3, 1, 4);
  for (auto _ : state) {
    const Jet2 r = sin(a * b) + exp(a) * cos(b) - a * a * b;
    benchmark::DoNotOptimize(r.v);
  }
}
BENCHMARK(BM_JetArithmetic);

void BM_NestedJetArithmetic(benchmark::State& state) {
  const auto a = jet_var<Jet2b>(jet_var<Jet2>(0.7, 0, 4), 0, 4);
  const auto b = jet_var<Jet2b>(jet_var<Jet2>(-0.3, 1, 4), 1, 4);
  for (auto _ : state) {
    const Jet2b r = sin(a * b) + exp(a) * cos(b) - a * a * b;
    benchmark::DoNotOptimize(r.v.v);
  }
}
BENCHMARK(BM_NestedJetArithmetic);

void BM_ProductMetricEval(benchmark::State& state) {
  const ProductSpace g(Surf2::sphere, Surf2::sphere);
  MatN<double, 4> G(4, 4);
  for (auto _ : state) {
    eval_field(g, kX, G);
    benchmark::DoNotOptimize(G(0, 0));
  }
}
BENCHMARK(BM_ProductMetricEval);

// includes the Newton solve for the surface chart inverse
void BM_GeodesicMetricEval(benchmark::State& state) {
  const GeodesicMetric g;
  const auto x = pt4(0.4, 0.8, 0.2, 0.0);
  MatN<double, 4> G(4, 4);
  for (auto _ : state) {
    eval_field(g, x, G);
    benchmark::DoNotOptimize(G(0, 0));
  }
}
BENCHMARK(BM_GeodesicMetricEval);

void BM_CurvaturePointJets(benchmark::State& state) {
  const ProductSpace g(Surf2::sphere, Surf2::hyperbolic);
  DerivCtx ctx;
  for (auto _ : state) {
    const auto rep = curvature(g, kX, ctx);
    benchmark::DoNotOptimize(rep.scalar);
  }
}
BENCHMARK(BM_CurvaturePointJets);

void BM_CurvaturePointFd(benchmark::State& state) {
  const ProductSpace g(Surf2::sphere, Surf2::hyperbolic);
  DerivCtx ctx;
  ctx.mode = DerivMode::fd;
  for (auto _ : state) {
    const auto rep = curvature(g, kX, ctx);
    benchmark::DoNotOptimize(rep.scalar);
  }
}
BENCHMARK(BM_CurvaturePointFd);

void BM_GeodesicCurvaturePoint(benchmark::State& state) {
  const GeodesicMetric g;
  const auto x = pt4(0.4, 0.8, 0.2, 0.0);
  DerivCtx ctx;
  for (auto _ : state) {
    const auto rep = curvature(g, x, ctx);
    benchmark::DoNotOptimize(rep.scalar);
  }
}
BENCHMARK(BM_GeodesicCurvaturePoint);

void BM_ShapeDataSigmaJets(benchmark::State& state) {
  const SigmaTSphere F(0.5);
  const ProductSpace g(Surf2::sphere, Surf2::sphere);
  const ProductStructure P;
  DerivCtx ctx;
  for (auto _ : state) {
    const auto sd = shape_data(F, g, P, kY, ctx);
    benchmark::DoNotOptimize(sd.s.H);
  }
}
BENCHMARK(BM_ShapeDataSigmaJets);

void BM_ShapeDataSigmaFd(benchmark::State& state) {
  const SigmaTSphere F(0.5);
  const ProductSpace g(Surf2::sphere, Surf2::sphere);
  const ProductStructure P;
  DerivCtx ctx;
  ctx.mode = DerivMode::fd;
  for (auto _ : state) {
    const auto sd = shape_data(F, g, P, kY, ctx);
    benchmark::DoNotOptimize(sd.s.H);
  }
}
BENCHMARK(BM_ShapeDataSigmaFd);

void BM_ShapeDataCongruence(benchmark::State& state) {
  const TangentialCongruence F(
      SurfaceInSpaceForm::geodesic_sphere(std::numbers::pi / 4));
  const GeodesicMetric g(F.chart());
  const HodgeStructure P(F.chart());
  const auto y = pt3(0.4, 0.0, 0.3);
  DerivCtx ctx;
  for (auto _ : state) {
    const auto sd = shape_data(F, g, P, y, ctx);
    benchmark::DoNotOptimize(sd.s.H);
  }
}
BENCHMARK(BM_ShapeDataCongruence);

void BM_InducedScalarSigma(benchmark::State& state) {
  const SigmaTSphere F(0.5);
  const ProductSpace g(Surf2::sphere, Surf2::sphere);
  const ProductStructure P;
  HyperScenario sc;
  sc.F = &F;
  sc.g = &g;
  sc.P = &P;
  sc.rbar = 4.0;
  for (auto _ : state) {
    const double r = induced_scalar(sc, kY);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_InducedScalarSigma);

}  // namespace

BENCHMARK_MAIN();
