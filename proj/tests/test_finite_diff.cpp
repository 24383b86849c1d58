#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "parageo/finite_diff.hpp"

using namespace parageo;

TEST_CASE("first derivative of sin at 0.3 with error estimate") {
  const auto d = fd_derivative([](double t) { return std::sin(t); }, 0.3);
  const double exact = std::cos(0.3);  // 0.955336489125606
  CHECK(d.value == doctest::Approx(0.955336489125606).epsilon(1e-12));
  CHECK(std::abs(d.value - exact) <= std::max(d.err, 1e-12));
  CHECK(d.err <= 1e-6);  // estimate is the conservative |rich - d(h/2)|
}

TEST_CASE("second derivative of sin at 0.3") {
  const auto d = fd_second([](double t) { return std::sin(t); }, 0.3);
  const double exact = -std::sin(0.3);
  CHECK(d.value == doctest::Approx(exact).epsilon(1e-7));
  CHECK(std::abs(d.value - exact) <= std::max(d.err * 10, 1e-8));
}

TEST_CASE("fd_jets reproduces analytic gradient and Hessian") {
  // f(x,y,z) = exp(x) sin(y) + x z^2
  auto f = [](const VecN<double, 4>& p) {
    return std::vector<double>{std::exp(p[0]) * std::sin(p[1]) +
                               p[0] * p[2] * p[2]};
  };
  VecN<double, 4> x(3);
  x[0] = 0.4;
  x[1] = 1.1;
  x[2] = -0.8;
  double err = 0.0;
  const auto jets = fd_jets(f, x, 3, 2e-3, &err);
  const Jet2& j = jets[0];
  const double ex = std::exp(0.4), s = std::sin(1.1), c = std::cos(1.1);

  CHECK(j.v == doctest::Approx(ex * s + 0.4 * 0.64).epsilon(1e-14));
  CHECK(std::abs(j.g[0] - (ex * s + 0.64)) <= std::max(10 * err, 1e-10));
  CHECK(std::abs(j.g[1] - ex * c) <= std::max(10 * err, 1e-10));
  CHECK(std::abs(j.g[2] - 0.4 * 2 * -0.8) <= std::max(10 * err, 1e-10));
  CHECK(std::abs(j.hess(0, 0) - ex * s) <= 10 * err);
  CHECK(std::abs(j.hess(0, 1) - ex * c) <= 10 * err);
  CHECK(std::abs(j.hess(0, 2) - 2 * -0.8) <= 10 * err);
  CHECK(std::abs(j.hess(1, 1) - (-ex * s)) <= 10 * err);
  CHECK(std::abs(j.hess(2, 2) - 2 * 0.4) <= 10 * err);
  CHECK(std::abs(j.hess(1, 2)) <= 10 * err);
  CHECK(err <= 1e-6);
}

TEST_CASE("error estimate is honest on a stiff function") {
  // exp(4t) has large high-order derivatives; estimate must cover the error
  const auto d = fd_derivative([](double t) { return std::exp(4 * t); }, 0.5,
                               5e-2);
  const double exact = 4 * std::exp(2.0);
  CHECK(std::abs(d.value - exact) <= 10 * d.err);
  CHECK(d.err > 1e-9);  // must not pretend to be exact
}
