#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parageo/models/product_spaces.hpp"
#include "parageo/parastructure.hpp"

using namespace parageo;

namespace {

// P^2 != Id and not isometric: negative control
struct BadSquare : EndoFieldCRTP<BadSquare> {
  int dim() const override { return 4; }
  template <class T>
  void eval_impl(const VecN<T, 4>&, MatN<T, 4>& P) const {
    P = MatN<T, 4>(4, 4);
    P(0, 0) = T(1.0);
    P(1, 1) = T(2.0);
    P(2, 2) = P(3, 3) = T(-1.0);
  }
};

// pointwise paracomplex + isometric, but rotates with the chart: not parallel
struct Twisted : EndoFieldCRTP<Twisted> {
  int dim() const override { return 4; }
  template <class T>
  void eval_impl(const VecN<T, 4>& x, MatN<T, 4>& P) const {
    P = MatN<T, 4>(4, 4);
    // reflection of the flat (x1,x2)-plane through angle x1
    const T c = cos(x[0]), s = sin(x[0]);
    P(0, 0) = c;
    P(0, 1) = s;
    P(1, 0) = s;
    P(1, 1) = -c;
    P(2, 2) = P(3, 3) = T(-1.0);
  }
};

}  // namespace

TEST_CASE("product structure is paracomplex, isometric, parallel") {
  const std::array<int, 4> counts{3, 3, 3, 3};
  for (auto kind : {Surf2::sphere, Surf2::hyperbolic, Surf2::flat}) {
    ProductSpace g(kind, kind);
    ProductStructure P;
    const auto rep = verify_paracomplex(P, g, lattice(g.domain(), counts));
    CHECK(rep.square_residual <= 1e-12);
    CHECK(rep.trace_residual <= 1e-12);
    CHECK(rep.isometry_residual <= 1e-12);
    CHECK(rep.parallel_residual <= 1e-10);
  }
}

TEST_CASE("neutral metric: shared connection, scalar flat, conformally flat") {
  const std::array<int, 4> counts{3, 3, 3, 3};
  for (auto kind : {Surf2::sphere, Surf2::hyperbolic}) {
    ProductSpace g(kind, kind);
    ProductStructure P;
    const auto rep =
        verify_neutral_properties(g, P, lattice(g.domain(), counts));
    CHECK(rep.christoffel_diff <= 1e-10);
    CHECK(rep.ricci_diff <= 1e-8);
    CHECK(rep.scalar_max <= 1e-8);
    CHECK(rep.weyl_max <= 1e-8);
    CHECK(rep.sig_pos == 2);
    CHECK(rep.sig_neg == 2);
  }
}

TEST_CASE("neutral metric of the mixed product is not scalar flat") {
  // S2 x H2: scalars add instead of cancelling in g_-
  ProductSpace g(Surf2::sphere, Surf2::hyperbolic);
  ProductStructure P;
  const auto rep = verify_neutral_properties(
      g, P, {lattice(g.domain(), {2, 2, 2, 2})});
  CHECK(rep.scalar_max > 3.0);  // = |2 - (-2)| at every point
}

TEST_CASE("negative controls trip the right residuals") {
  ProductSpace g(Surf2::flat, Surf2::flat);
  const auto pts = lattice(g.domain(), {3, 3, 1, 1});

  const auto bad = verify_paracomplex(BadSquare{}, g, pts);
  CHECK(bad.square_residual > 1.0);
  CHECK(bad.trace_residual > 0.5);
  CHECK(bad.isometry_residual > 1.0);

  const auto tw = verify_paracomplex(Twisted{}, g, pts);
  CHECK(tw.square_residual <= 1e-12);
  CHECK(tw.isometry_residual <= 1e-12);
  CHECK(tw.parallel_residual > 0.5);  // flat connection: plain derivative
}
