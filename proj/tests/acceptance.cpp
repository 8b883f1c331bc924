// Acceptance gate: one pass/fail line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "adsmelvin/flow.hpp"
#include "adsmelvin/surface_io.hpp"
#include "adsmelvin/variational.hpp"
#include "adsmelvin/verify.hpp"

using namespace adsm;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
void equality_case() {
  double worst = 0.0;
  for (double b : {0.0, 0.5, 1.0, 2.0}) {
    const auto p = SpaceParams::make(b, 1.0);
    const auto g = GridSpec::make(64, 64, p.Px, p.Py, 4);
    for (double f0 : {1.5, 2.0, 4.0}) {
      const auto q = q_functional(make_surface(p, g, Field::Constant(64, 64, f0 * p.rs)));
      worst = std::max(worst, std::abs(q.gap) / (p.Px * p.Py));
    }
  }
  report(1, worst <= 1e-12, "coordinate-torus gap vanishes to round-off",
         "max |gap|/(Px Py) = " + fmt(worst));
}

// ---------------------------------------------------------------- criterion 2
void inequality_corpus() {
  int checked = 0, violations = 0;
  double worst_margin = 1e300;
  for (double b : {0.0, 1.0, 2.0}) {
    const auto p = SpaceParams::make(b, 1.0);
    const double r0 = 2.0 * p.rs;
    const double amp = 0.3 * (r0 - p.rs);
    const auto g_fine = GridSpec::make(96, 96, p.Px, p.Py, 4);
    const auto g_coarse = GridSpec::make(48, 48, p.Px, p.Py, 4);
    for (unsigned seed = 0; seed < 50; ++seed) {
      // generate once on the fine grid; band limit 3 << Nyquist(48), so the
      // strided subsample is the same trigonometric polynomial
      const Field fine = r0 + amp * random_bandlimited(p, g_fine, 3, seed);
      Field coarse(48, 48);
      for (int i = 0; i < 48; ++i) {
        for (int j = 0; j < 48; ++j) coarse(i, j) = fine(2 * i, 2 * j);
      }
      const double gap_c = q_functional(make_surface(p, g_coarse, coarse)).gap;
      const double gap_f = q_functional(make_surface(p, g_fine, fine)).gap;
      const double eps_quad = std::abs(gap_f - gap_c);
      ++checked;
      if (!(gap_c >= -eps_quad && gap_f >= -eps_quad)) ++violations;
      worst_margin = std::min(worst_margin, std::min(gap_c, gap_f) + eps_quad);
    }
  }
  report(2, violations == 0, "random-surface corpus satisfies the gap inequality",
         std::to_string(checked) + " surfaces, " + std::to_string(violations) +
             " violations, tightest margin " + fmt(worst_margin));
}

// ---------------------------------------------------------------- criterion 3
Field1D random_profile(int n, double r0, double amp, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Field1D raw = Field1D::Zero(n);
  for (int k = 1; k <= 4; ++k) {
    const double a = unit(rng), c = unit(rng);
    for (int i = 0; i < n; ++i) {
      const double th = 2.0 * M_PI * k * i / n;
      raw(i) += a * std::cos(th) + c * std::sin(th);
    }
  }
  return r0 + amp * raw / raw.abs().maxCoeff();
}

void symmetric_identity() {
  const auto p = SpaceParams::make(1.0, 1.0);
  double worst_rel = 0.0, worst_sign = 1e300;
  bool ok = true;
  for (Axis axis : {Axis::YSymmetric, Axis::XSymmetric}) {
    for (unsigned seed = 0; seed < 20; ++seed) {
      AxisProfile prof;
      prof.axis = axis;
      prof.params = p;
      prof.order = 6;
      const double r0 = 2.0 * p.rs;
      prof.s = random_profile(512, r0, 0.3 * (r0 - p.rs),
                              seed + (axis == Axis::XSymmetric ? 100u : 0u));
      double direct = 0.0, ibp = 0.0;
      try {
        direct = q_gap_axis_direct(prof);
        ibp = q_gap_axis_ibp(prof);
      } catch (const std::exception&) {
        ok = false;
        continue;
      }
      worst_rel = std::max(worst_rel, std::abs(direct - ibp) / std::max(1e-300, ibp));
      worst_sign = std::min(worst_sign, std::min(direct, ibp));
    }
  }
  ok = ok && worst_rel <= 1e-9 && worst_sign >= 0.0;
  report(3, ok, "1D gap: direct and integrated-by-parts routes agree, both nonnegative",
         "max rel diff " + fmt(worst_rel) + ", min value " + fmt(worst_sign));
}

// ---------------------------------------------------------------- criterion 4
void perturbation() {
  const auto p = SpaceParams::make(1.0, 1.0);
  const auto g = GridSpec::make(64, 64, p.Px, p.Py, 6);
  bool ok = true;
  std::string detail;
  double worst_rel = 0.0, worst_d1 = 0.0;
  try {
    for (unsigned seed = 0; seed < 10; ++seed) {
      PerturbationSpec spec;
      spec.params = p;
      spec.grid = g;
      spec.r0 = 2.0;
      spec.phi = random_bandlimited(p, g, 3, seed);
      const auto res = perturbation_sweep(spec);  // asserts the 1% agreement
      worst_rel = std::max(worst_rel, std::abs(res.d2Q_fd - res.d2Q_form) / res.d2Q_form);
      worst_d1 = std::max(worst_d1, std::abs(res.dQ) / std::abs(res.Q0));
    }
    PerturbationSpec spec;
    spec.params = p;
    spec.grid = g;
    spec.r0 = 2.0;
    spec.phi = (2.0 * M_PI * coord_x(g) / p.Px).cos();
    const auto res = perturbation_sweep(spec);
    const double rel = std::abs(res.d2Q_fd - res.d2Q_form) / res.d2Q_form;
    ok = worst_rel <= 0.01 && rel <= 0.001 && std::abs(res.d2Q_form - 140.5) <= 0.5;
    detail = "10 random directions max rel " + fmt(worst_rel) + ", |dQ|/|Q| <= " +
             fmt(worst_d1) + "; cosine mode rel " + fmt(rel) + ", d2Q = " + fmt(res.d2Q_form);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(4, ok, "second variation matches the closed quadratic form", detail);
}

// ------------------------------------------------------------ criteria 5 and 6
void flow_criteria() {
  const auto p = SpaceParams::make(1.0, 1.0);
  const auto g = GridSpec::make(128, 128, p.Px, p.Py, 6);
  const Field s0 = generate_height_field(p, g, "random:1.5,0.05,3,7");
  FlowConfig cfg;
  cfg.t_end = 30.0;

  FlowDiagnostics d;
  bool ran = true;
  std::string run_err;
  try {
    d = flow_run(make_surface(p, g, s0), cfg);
  } catch (const FlowBreakdown& e) {
    ran = false;
    run_err = e.what();
    d = e.diagnostics;
  } catch (const std::exception& e) {
    ran = false;
    run_err = e.what();
  }

  // criterion 5: monotone Q at every sample plus the limiting value
  if (!ran || d.t.empty()) {
    report(5, false, "flow: Q monotone and reaches the torus value", run_err);
  } else {
    bool monotone = true;
    for (size_t k = 1; k < d.Q.size(); ++k) {
      if (d.Q[k] > d.Q[k - 1] + cfg.mono_tol_rel * std::abs(d.Q[k - 1])) monotone = false;
    }
    const double ratio = std::abs(d.gap.back()) / std::abs(d.gap.front());
    const bool limit = ratio < 0.02;
    report(5, monotone && limit, "flow: Q monotone and reaches the torus value",
           std::string("monotone ") + (monotone ? "yes" : "NO") + ", gap(30)/gap(0) = " +
               fmt(ratio) + " vs required < 0.02");
  }

  // criterion 6: decay exponents and the drift bound, on the same run
  if (!ran || d.t.empty() || d.t.back() < 29.9) {
    report(6, false, "flow: decay exponents and drift bound", run_err);
    return;
  }
  bool ok = true;
  std::string detail;
  try {
    const auto fit = fit_decay(d, 10.0, 30.0);
    size_t k5 = 0;
    while (k5 + 1 < d.t.size() && d.t[k5] < 5.0) ++k5;
    double worst_drift = 0.0;
    for (size_t k = k5; k < d.t.size(); ++k) worst_drift = std::max(worst_drift, d.c0_drift[k]);
    const bool drift_ok = worst_drift <= 2.0 * d.c0_drift[k5];
    ok = fit.z2_exponent >= -4.5 && fit.z2_exponent <= -3.5 && fit.H_exponent >= -3.5 &&
         fit.H_exponent <= -2.5 && drift_ok;
    detail = "z2 exponent " + fmt(fit.z2_exponent) + ", H exponent " + fmt(fit.H_exponent) +
             ", drift(t>=5)/drift(5) = " + fmt(worst_drift / d.c0_drift[k5]);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(6, ok, "flow: decay exponents and drift bound", detail);
}

// ---------------------------------------------------------------- criterion 7
void oracle_suites() {
  bool ok = true;
  std::string detail;
  try {
    // ambient finite-difference cross-checks
    double worst_fd = 0.0;
    for (double b : {0.0, 1.0, 2.0}) {
      const auto p = SpaceParams::make(b, 1.0);
      for (const auto& r :
           ambient_fd_suite(p, {1.05 * p.rs, 1.5 * p.rs, 2.0 * p.rs, 5.0 * p.rs})) {
        worst_fd = std::max(worst_fd, r.max_rel_err);
      }
    }
    ok = ok && worst_fd < 1e-6;

    // evolution identities refine at order >= 1.8 under (dt,h) -> (dt/2,h/2)
    const auto p = SpaceParams::make(1.0, 1.0);
    const SpeedFn rho = [](double r, double, double) { return 1.0 / r; };
    double res_c = 0.0, res_f = 0.0;
    for (int k = 0; k < 2; ++k) {
      const int n = 32 << k;
      const auto gr = GridSpec::make(n, n, p.Px, p.Py, 6);
      const Field x = coord_x(gr), y = coord_y(gr);
      const Field s = 2.0 + 0.12 * (2.0 * M_PI * x / p.Px).cos() * (2.0 * M_PI * y / p.Py).sin();
      const auto traj = evolve_patch(patch_from_height(p, n, n, s, 6), rho, 2e-4 / (1 << k), 2);
      const auto res = check_evolution_identities(traj, rho, 2e-4 / (1 << k));
      const double m = std::max({res.metric, res.area, res.normal, res.second_form,
                                 res.mean_curvature});
      (k == 0 ? res_c : res_f) = m;
    }
    const double order = std::log2(res_c / res_f);
    ok = ok && order >= 1.8;

    // intrinsic/extrinsic residuals drop >= 8x when the grid doubles
    double gauss_ratio = 0.0, lap_ratio = 0.0;
    {
      double gauss_c = 0.0, lap_c = 0.0;
      for (int k = 0; k < 2; ++k) {
        const int n = 48 << k;
        const auto gr = GridSpec::make(n, n, p.Px, p.Py, 4);
        const Field x = coord_x(gr), y = coord_y(gr);
        const Field s =
            2.0 + 0.15 * (2.0 * M_PI * x / p.Px).cos() * (2.0 * M_PI * y / p.Py).cos();
        const auto surf = make_surface(p, gr, s);
        const auto geom = geometry(surf);
        const Field Rbar = -6.0 + 2.0 * p.b * surf.s.pow(-4);
        const double gauss =
            (2.0 * geom.K - (Rbar - 2.0 * geom.ric_nn + geom.H.square() - geom.A2))
                .abs()
                .maxCoeff();
        const double lap =
            (geom.lap_r - laplacian_intrinsic(surf, geom, surf.s)).abs().maxCoeff();
        if (k == 0) {
          gauss_c = gauss;
          lap_c = lap;
        } else {
          gauss_ratio = gauss_c / gauss;
          lap_ratio = lap_c / lap;
        }
      }
    }
    ok = ok && gauss_ratio >= 8.0 && lap_ratio >= 8.0;
    detail = "fd max rel " + fmt(worst_fd) + ", evolution order " + fmt(order) +
             ", refinement ratios " + fmt(gauss_ratio) + " / " + fmt(lap_ratio);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(7, ok, "independent oracle suites", detail);
}

// ---------------------------------------------------------------- criterion 8
void static_inequality() {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> b_dist(0.0, 5.0);
  std::uniform_real_distribution<double> f_dist(1.05, 6.0);
  double worst_eig = 0.0, worst_id = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double b = b_dist(rng);
    const auto p = SpaceParams::make(b, 1.0);
    const double r = f_dist(rng) * p.rs;
    const auto eig = static_tensor_eigenvalues(p, r);
    const double lo = *std::min_element(eig.begin(), eig.end());
    worst_eig = std::max(worst_eig, std::abs(lo - (-2.0 * b / (r * r * r))));
    const auto e = eval_profile(b, r);
    worst_id = std::max(worst_id,
                        std::abs(2.0 * e.dF + 0.5 * r * e.d2F + 2.0 * b * std::pow(r, -5.0)));
  }
  report(8, worst_eig <= 1e-12 && worst_id <= 1e-13,
         "static tensor bound and profile identity",
         "max eigenvalue error " + fmt(worst_eig) + ", max identity residual " + fmt(worst_id));
}

}  // namespace

int main() {
  equality_case();
  inequality_corpus();
  symmetric_identity();
  perturbation();
  flow_criteria();
  oracle_suites();
  static_inequality();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
