#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "adsmelvin/surface_io.hpp"
#include "adsmelvin/verify.hpp"
#include "doctest.h"

using namespace adsm;

namespace {

Field wavy_height(const SpaceParams& p, int n, double r0, double amp) {
  const auto g = GridSpec::make(n, n, p.Px, p.Py, 6);
  const Field x = coord_x(g), y = coord_y(g);
  return r0 + amp * (2.0 * M_PI * x / p.Px).cos() * (2.0 * M_PI * y / p.Py).sin() +
         0.5 * amp * (4.0 * M_PI * y / p.Py).cos();
}

double worst(const std::vector<CheckResult>& results) {
  double m = 0.0;
  for (const auto& r : results) m = std::max(m, r.max_rel_err);
  return m;
}

}  // namespace

TEST_CASE("ambient tensors survive finite-difference cross-checks") {
  for (double b : {0.0, 1.0, 3.0}) {
    const auto p = SpaceParams::make(b, 1.0);
    const std::vector<double> radii = {1.05 * p.rs, 1.5 * p.rs, 2.0 * p.rs, 5.0 * p.rs};
    const auto results = ambient_fd_suite(p, radii);
    REQUIRE(!results.empty());
    for (const auto& r : results) {
      INFO(r.name);
      CHECK(r.max_rel_err < 1e-6);
    }
    CHECK(worst(results) < 1e-6);
  }
}

TEST_CASE("fd suite input validation") {
  const auto p = SpaceParams::make(1.0, 1.0);
  CHECK_THROWS_AS(ambient_fd_suite(p, {2.0}, 0.0), std::domain_error);
  // radius so close to rs that the stencil would cross it
  CHECK_THROWS_AS(ambient_fd_suite(p, {p.rs + 1e-5}, 1e-4), std::domain_error);
}

TEST_CASE("patch geometry agrees with the graph machinery") {
  const auto p = SpaceParams::make(1.0, 1.0);
  const int n = 48;
  const Field s = wavy_height(p, n, 2.0, 0.15);
  const auto g = GridSpec::make(n, n, p.Px, p.Py, 6);
  const auto surf = make_surface(p, g, s);
  const auto geom = geometry(surf);

  const auto patch = patch_from_height(p, n, n, s, 6);
  const auto pg = patch_geometry(patch);

  // with xi = eta = 0 the parameters are the graph coordinates, so every
  // field must match to round-off
  CHECK((pg.g11 - geom.gxx).abs().maxCoeff() <= 1e-12);
  CHECK((pg.g12 - geom.gxy).abs().maxCoeff() <= 1e-12);
  CHECK((pg.g22 - geom.gyy).abs().maxCoeff() <= 1e-12);
  CHECK((pg.H - geom.H).abs().maxCoeff() <= 1e-11);
  CHECK((pg.A2 - geom.A2).abs().maxCoeff() <= 1e-11);
  CHECK((pg.ric_nn - geom.ric_nn).abs().maxCoeff() <= 1e-11);
  CHECK(pg.nr.minCoeff() > 0.0);
  // unit length in the ambient metric
  for (int i : {0, 7}) {
    for (int j : {3, 20}) {
      const auto m = metric_diag(p, patch.r(i, j));
      const double len2 = m[0] * pg.nr(i, j) * pg.nr(i, j) +
                          m[1] * pg.nx(i, j) * pg.nx(i, j) +
                          m[2] * pg.ny(i, j) * pg.ny(i, j);
      CHECK(len2 == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("evolution identities: inverse-radius speed") {
  // rho = 1/r is smooth, nonconstant along the flow and has closed spatial
  // derivatives, exercising every correction term.
  const auto p = SpaceParams::make(1.0, 1.0);
  const SpeedFn rho = [](double r, double, double) { return 1.0 / r; };
  double prev = 0.0;
  for (int k = 0; k < 2; ++k) {
    const int n = 32 << k;
    const double dt = 2e-4 / (1 << k);
    const auto patch = patch_from_height(p, n, n, wavy_height(p, n, 2.0, 0.12), 6);
    const auto traj = evolve_patch(patch, rho, dt, 2);
    const auto res = check_evolution_identities(traj, rho, dt);
    const double m = std::max({res.metric, res.area, res.normal, res.second_form,
                               res.mean_curvature});
    if (k == 0) {
      prev = m;
      CHECK(m < 1e-2);
    } else {
      // residuals are spatial-truncation dominated; demand order >= 1.8
      CHECK(std::log2(prev / m) >= 1.8);
    }
  }
}

TEST_CASE("evolution identities: generic periodic speed") {
  const auto p = SpaceParams::make(0.5, 1.0);
  const SpeedFn rho = [&p](double r, double x, double y) {
    return 0.3 + 0.1 * std::sin(2.0 * M_PI * x / p.Px) * std::cos(2.0 * M_PI * y / p.Py) /
                     (1.0 + 0.2 * (r - 2.0));
  };
  double prev = 0.0;
  for (int k = 0; k < 2; ++k) {
    const int n = 32 << k;
    const double dt = 2e-4 / (1 << k);
    const auto patch = patch_from_height(p, n, n, wavy_height(p, n, 2.0 * p.rs, 0.1), 6);
    const auto traj = evolve_patch(patch, rho, dt, 2);
    const auto res = check_evolution_identities(traj, rho, dt);
    const double m = std::max({res.metric, res.area, res.normal, res.second_form,
                               res.mean_curvature});
    if (k == 0) {
      prev = m;
      CHECK(m < 1e-3);
    } else {
      CHECK(std::log2(prev / m) >= 1.8);
    }
  }
}

TEST_CASE("patch evolution leaves the chart when heights dip") {
  const auto p = SpaceParams::make(1.0, 1.0);
  const auto patch = patch_from_height(p, 16, 16, Field::Constant(16, 16, p.rs + 1e-3), 4);
  const SpeedFn inward = [](double, double, double) { return -1.0; };
  CHECK_THROWS_AS(
      [&] {
        auto q = patch;
        for (int k = 0; k < 100; ++k) {
          q = patch_step(q, inward, 1e-3);
          q.check_chart();
        }
      }(),
      std::domain_error);
}

TEST_CASE("monotonicity integrand: divergence identity") {
  const auto p = SpaceParams::make(1.0, 1.0);
  double prev = 0.0;
  for (int k = 0; k < 2; ++k) {
    const int n = 48 << k;
    const auto g = GridSpec::make(n, n, p.Px, p.Py, 6);
    const auto surf = make_surface(p, g, wavy_height(p, n, 2.0, 0.2));
    const auto mc = monotonicity_integrand(surf);
    CHECK(mc.rhs >= 0.0);
    const double err = std::abs(mc.lhs - mc.rhs);
    if (k == 0) {
      prev = err;
      CHECK(err < 1e-4);
      CHECK(mc.lhs == doctest::Approx(mc.rhs).epsilon(1e-3));
    } else {
      CHECK(prev / err >= 8.0);
    }
  }
  // on a torus both sides vanish
  const auto g0 = GridSpec::make(32, 32, p.Px, p.Py, 4);
  const auto mc0 = monotonicity_integrand(make_surface(p, g0, Field::Constant(32, 32, 2.0)));
  CHECK(std::abs(mc0.lhs) <= 1e-9);
  CHECK(std::abs(mc0.rhs) <= 1e-14);
}
