#pragma once

#include <stdexcept>
#include <vector>

#include "adsmelvin/errors.hpp"
#include "adsmelvin/graph_surface.hpp"

// Weighted normal flow dphi/dt = r^-1 nu, integrated as the scalar PDE
// ds/dt = s F N on the height field, with monotonicity and decay monitoring.

namespace adsm {

struct FlowConfig {
  double t_end = 30.0;
  double dt_init = 1e-2;
  double safety = 0.8;          // CFL-style cap: max|rhs| dt <= safety min(hx,hy)
  int sample_every = 10;        // diagnostics cadence, in accepted steps
  long max_steps = 2'000'000;
  double dt_min = 1e-12;
  double mono_tol_rel = 1e-8;   // Q may increase by at most this times |Q|

  void validate() const;
};

struct FlowDiagnostics {
  std::vector<double> t;
  std::vector<double> Q;
  std::vector<double> gap;
  std::vector<double> dQdt;              // centered difference of sampled Q
  std::vector<double> z2max_minus_1;
  std::vector<double> Hminus2_pos_max;   // max over grid of (H-2)_+
  std::vector<double> c0_drift;          // max|s - t - c0|
  std::vector<double> smin_minus_rs;
  double c0 = 0.0;                       // mean(s) - t at the first sample
};

// Numerical breakdown of the time stepper; carries partial diagnostics.
struct FlowBreakdown : std::runtime_error {
  FlowBreakdown(const std::string& msg, double t_break, FlowDiagnostics partial)
      : std::runtime_error(msg), t(t_break), diagnostics(std::move(partial)) {}
  double t;
  FlowDiagnostics diagnostics;
};

// Flow speed ds/dt = s F N, asserted equal to F^1/2 z pointwise to 1e-12.
Field flow_rhs(const GraphSurface& surf);
Field flow_rhs(const GraphSurface& surf, const GeometryField& geom);

// One classical RK4 step of the height field.
GraphSurface flow_step(const GraphSurface& surf, double dt);

FlowDiagnostics flow_run(const GraphSurface& surf, const FlowConfig& config);

struct DecayFit {
  double z2_exponent = 0.0;       // slope of log(max z^2-1) vs log(1+t)
  double z2_residual = 0.0;       // rms fit residual
  double H_exponent = 0.0;        // slope of log(max(H-2)_+/(1+log(1+t))) vs log(1+t)
  double H_residual = 0.0;
};

DecayFit fit_decay(const FlowDiagnostics& diag, double t_lo, double t_hi);

// Least-squares slope of log(series) against log(1+t); shared by fit_decay
// and its self-tests.
struct SlopeFit {
  double slope = 0.0;
  double residual = 0.0;
};
SlopeFit fit_log_slope(const std::vector<double>& t, const std::vector<double>& series);

}  // namespace adsm
