#include "adsmelvin/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adsm {

void FlowConfig::validate() const {
  if (!(t_end > 0.0)) throw std::domain_error("FlowConfig: t_end must be positive");
  if (!(dt_init > 0.0)) throw std::domain_error("FlowConfig: dt_init must be positive");
  if (!(safety > 0.0 && safety <= 1.0)) throw std::domain_error("FlowConfig: safety in (0,1]");
  if (sample_every < 1) throw std::domain_error("FlowConfig: sample_every must be positive");
}

Field flow_rhs(const GraphSurface& surf) { return flow_rhs(surf, geometry(surf)); }

Field flow_rhs(const GraphSurface& surf, const GeometryField& geom) {
  const Field rhs = surf.s * geom.F * geom.N;
  // Equivalent speed form F^1/2 z, checked pointwise.
  const Field alt = geom.F.sqrt() * geom.z2.sqrt();
  const double err = ((rhs - alt).abs() / (1.0 + alt)).maxCoeff();
  if (!(err < 1e-12)) {
    throw std::logic_error("flow_rhs: sFN != F^1/2 z, scaled err " + std::to_string(err));
  }
  return rhs;
}

namespace {

Field rk4_increment(const GraphSurface& surf, double dt) {
  const auto rhs_at = [&](const Field& s) {
    GraphSurface tmp = surf;
    tmp.s = s;
    return flow_rhs(tmp);
  };
  const Field k1 = rhs_at(surf.s);
  const Field k2 = rhs_at(surf.s + 0.5 * dt * k1);
  const Field k3 = rhs_at(surf.s + 0.5 * dt * k2);
  const Field k4 = rhs_at(surf.s + dt * k3);
  return (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

GraphSurface flow_step(const GraphSurface& surf, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("flow_step: dt must be positive");
  GraphSurface next = surf;
  next.s = surf.s + rk4_increment(surf, dt);
  next.check_heights();
  return next;
}

namespace {

struct Sample {
  double Q, gap, z2m, hpm, drift, smin;
};

Sample sample_surface(const GraphSurface& surf, double t, double c0) {
  const auto geom = geometry(surf);
  const auto q = q_functional(surf, geom);
  Sample s;
  s.Q = q.Q;
  s.gap = q.gap;
  s.z2m = geom.z2.maxCoeff() - 1.0;
  s.hpm = std::max(0.0, geom.H.maxCoeff() - 2.0);
  s.drift = (surf.s - t - c0).abs().maxCoeff();
  s.smin = surf.s.minCoeff() - surf.params.rs;
  return s;
}

}  // namespace

FlowDiagnostics flow_run(const GraphSurface& surf0, const FlowConfig& config) {
  config.validate();
  FlowDiagnostics diag;
  GraphSurface surf = surf0;
  double t = 0.0;
  diag.c0 = surf.s.mean();

  const auto record = [&](double tt) {
    const Sample s = sample_surface(surf, tt, diag.c0);
    diag.t.push_back(tt);
    diag.Q.push_back(s.Q);
    diag.gap.push_back(s.gap);
    diag.z2max_minus_1.push_back(s.z2m);
    diag.Hminus2_pos_max.push_back(s.hpm);
    diag.c0_drift.push_back(s.drift);
    diag.smin_minus_rs.push_back(s.smin);
    // Q monotone nonincreasing up to tolerance (pro:monotonicity).
    const size_t n = diag.Q.size();
    if (n >= 2) {
      const double prev = diag.Q[n - 2];
      const double cur = diag.Q[n - 1];
      if (cur > prev + config.mono_tol_rel * std::abs(prev)) {
        throw PropertyViolation("flow_run: Q increased between t=" + std::to_string(diag.t[n - 2]) +
                                " and t=" + std::to_string(tt) + " (" + std::to_string(prev) +
                                " -> " + std::to_string(cur) + ")");
      }
    }
  };

  record(0.0);
  const double min_h = std::min(surf.grid.hx, surf.grid.hy);
  long steps_since_sample = 0;
  for (long step = 0; step < config.max_steps && t < config.t_end; ++step) {
    double dt = config.dt_init;
    // Try the step, halving on geometry/margin failures.
    bool accepted = false;
    while (!accepted) {
      try {
        const double rmax = flow_rhs(surf).maxCoeff();
        dt = std::min({dt, config.safety * min_h / std::max(rmax, 1e-30), config.t_end - t});
        surf = flow_step(surf, dt);
        accepted = true;
      } catch (const std::domain_error& e) {
        dt *= 0.5;
        if (dt < config.dt_min) {
          throw FlowBreakdown("flow breakdown at t=" + std::to_string(t) + ": " + e.what(), t,
                              diag);
        }
      }
    }
    t += dt;
    if (++steps_since_sample >= config.sample_every || t >= config.t_end) {
      record(t);
      steps_since_sample = 0;
    }
  }
  if (t < config.t_end) {
    throw FlowBreakdown("flow_run: max_steps reached at t=" + std::to_string(t), t, diag);
  }

  diag.dQdt.assign(diag.t.size(), 0.0);
  for (size_t k = 0; k < diag.t.size(); ++k) {
    const size_t lo = (k == 0) ? 0 : k - 1;
    const size_t hi = (k + 1 == diag.t.size()) ? k : k + 1;
    if (hi > lo) diag.dQdt[k] = (diag.Q[hi] - diag.Q[lo]) / (diag.t[hi] - diag.t[lo]);
  }
  return diag;
}

SlopeFit fit_log_slope(const std::vector<double>& t, const std::vector<double>& series) {
  if (t.size() != series.size() || t.size() < 2) {
    throw std::domain_error("fit_log_slope: need at least two samples");
  }
  const size_t n = t.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t k = 0; k < n; ++k) {
    if (!(series[k] > 0.0)) {
      throw std::domain_error("fit_log_slope: series must be positive on the window");
    }
    const double x = std::log1p(t[k]);
    const double y = std::log(series[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  SlopeFit fit;
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw std::domain_error("fit_log_slope: degenerate window");
  fit.slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const double res = std::log(series[k]) - (intercept + fit.slope * std::log1p(t[k]));
    ss += res * res;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

DecayFit fit_decay(const FlowDiagnostics& diag, double t_lo, double t_hi) {
  if (!(t_lo < t_hi)) throw std::domain_error("fit_decay: need t_lo < t_hi");
  std::vector<double> t, z2, hp;
  for (size_t k = 0; k < diag.t.size(); ++k) {
    if (diag.t[k] < t_lo || diag.t[k] > t_hi) continue;
    t.push_back(diag.t[k]);
    z2.push_back(diag.z2max_minus_1[k]);
    hp.push_back(diag.Hminus2_pos_max[k] / (1.0 + std::log1p(diag.t[k])));
  }
  if (t.size() < 3) throw std::domain_error("fit_decay: window contains fewer than 3 samples");
  DecayFit fit;
  const auto fz = fit_log_slope(t, z2);
  fit.z2_exponent = fz.slope;
  fit.z2_residual = fz.residual;
  const auto fh = fit_log_slope(t, hp);
  fit.H_exponent = fh.slope;
  fit.H_residual = fh.residual;
  return fit;
}

}  // namespace adsm
