#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "adsmelvin/grid.hpp"
#include "doctest.h"

using namespace adsm;

namespace {

// Max error of the order-o stencil applied to sin(2 pi k x / P).
double trig_err_x(int n, int order, int deriv, int k) {
  const double P = 1.7;
  const auto g = GridSpec::make(n, 8, P, 1.0, order);
  Field f(n, 8), want(n, 8);
  const double w = 2.0 * M_PI * k / P;
  for (int i = 0; i < n; ++i) {
    const double x = i * g.hx;
    for (int j = 0; j < 8; ++j) {
      f(i, j) = std::sin(w * x);
      want(i, j) = deriv == 1 ? w * std::cos(w * x) : -w * w * std::sin(w * x);
    }
  }
  return (diff_x(f, g.hx, order, deriv) - want).abs().maxCoeff();
}

}  // namespace

TEST_CASE("grid spec construction and validation") {
  const auto g = GridSpec::make(32, 48, 2.0, 3.0, 4);
  CHECK(g.hx == doctest::Approx(2.0 / 32).epsilon(1e-15));
  CHECK(g.hy == doctest::Approx(3.0 / 48).epsilon(1e-15));
  CHECK_THROWS_AS(GridSpec::make(4, 48, 2.0, 3.0, 4), std::domain_error);
  CHECK_THROWS_AS(GridSpec::make(32, 4, 2.0, 3.0, 4), std::domain_error);
  CHECK_THROWS_AS(GridSpec::make(32, 48, 2.0, 3.0, 3), std::domain_error);
  CHECK_THROWS_AS(GridSpec::make(32, 48, -1.0, 3.0, 4), std::domain_error);
}

TEST_CASE("derivatives of constants and cross-direction fields vanish") {
  const auto g = GridSpec::make(16, 24, 1.0, 2.0, 6);
  // only round-off remains: the weights cancel up to floating point
  const Field c = Field::Constant(16, 24, 3.25);
  CHECK(diff_x(c, g.hx, 6, 1).abs().maxCoeff() <= 1e-12);
  CHECK(diff_y(c, g.hy, 6, 2).abs().maxCoeff() <= 1e-11);
  const Field fy = coord_y(g).sin();
  CHECK(diff_x(fy, g.hx, 6, 1).abs().maxCoeff() <= 1e-12);
  const Field fx = coord_x(g).cos();
  CHECK(diff_y(fx, g.hy, 4, 1).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("stencil convergence orders") {
  for (int deriv : {1, 2}) {
    for (int order : {2, 4, 6}) {
      const double e1 = trig_err_x(32, order, deriv, 3);
      const double e2 = trig_err_x(64, order, deriv, 3);
      const double measured = std::log2(e1 / e2);
      CHECK(measured >= order - 0.2);
    }
  }
}

TEST_CASE("1d stencils match 2d stencils") {
  const int n = 40;
  const double h = 0.05;
  Field1D f(n);
  for (int i = 0; i < n; ++i) f(i) = std::sin(2.0 * M_PI * i / n) + 0.3 * std::cos(4.0 * M_PI * i / n);
  Field f2(n, 8);
  for (int j = 0; j < 8; ++j) f2.col(j) = f;
  for (int deriv : {1, 2}) {
    const Field1D d1 = diff_1d(f, h, 4, deriv);
    const Field d2 = diff_x(f2, h, 4, deriv);
    for (int i = 0; i < n; ++i) CHECK(d1(i) == doctest::Approx(d2(i, 0)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(diff_1d(f, h, 4, 3), std::domain_error);
  CHECK_THROWS_AS(diff_1d(f, 0.0, 4, 1), std::domain_error);
}

TEST_CASE("periodic trapezoid quadrature is spectrally exact on trig modes") {
  const auto g = GridSpec::make(32, 32, 1.0, 2.0, 4);
  const Field x = coord_x(g), y = coord_y(g);
  // int of a pure nonzero mode over the torus is exactly 0
  const Field mode = (2.0 * M_PI * 3.0 * x / 1.0).cos() * (2.0 * M_PI * 2.0 * y / 2.0).sin();
  CHECK(std::abs(integrate(mode, g.hx, g.hy)) <= 1e-14);
  // constants integrate to value * Px * Py
  CHECK(integrate(Field::Constant(32, 32, 2.5), g.hx, g.hy) ==
        doctest::Approx(2.5 * 1.0 * 2.0).epsilon(1e-14));
  // squared mode integrates to Px Py / 4
  const Field sq = mode.square();
  CHECK(integrate(sq, g.hx, g.hy) == doctest::Approx(0.5).epsilon(1e-13));
  Field1D m1(64);
  for (int i = 0; i < 64; ++i) m1(i) = 1.0 + std::cos(2.0 * M_PI * 5.0 * i / 64.0);
  CHECK(integrate_1d(m1, 0.25) == doctest::Approx(16.0).epsilon(1e-13));
}

TEST_CASE("coordinate fields") {
  const auto g = GridSpec::make(8, 12, 1.0, 3.0, 2);
  const Field x = coord_x(g), y = coord_y(g);
  CHECK(x(0, 0) == 0.0);
  CHECK(x(5, 7) == doctest::Approx(5.0 * g.hx).epsilon(1e-15));
  CHECK(y(5, 7) == doctest::Approx(7.0 * g.hy).epsilon(1e-15));
}
