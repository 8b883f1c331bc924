#pragma once

#include "adsmelvin/errors.hpp"
#include "adsmelvin/graph_surface.hpp"

// Symmetric 1D reductions of the gap integral (with the lambda substitution
// and its integration-by-parts form) and the perturbation expansion about a
// coordinate torus.

namespace adsm {

enum class Axis {
  YSymmetric,  // s depends on x only, period Px
  XSymmetric,  // s depends on y only, period Py
};

struct AxisProfile {
  Axis axis = Axis::YSymmetric;
  SpaceParams params;
  int order = 4;
  Field1D s;              // periodic 1D height profile
  double margin = 1e-6;

  double period() const { return axis == Axis::YSymmetric ? params.Px : params.Py; }
  double spacing() const { return period() / static_cast<double>(s.size()); }
  void check_heights() const;
};

// Gap = Q - PxPy(2 rs^3 - 1/2) via the 1D specialization of the mean
// curvature formula.
double q_gap_axis_direct(const AxisProfile& profile);

// Same gap after the integration by parts; the integrand is pointwise
// nonnegative and the operation asserts this.
double q_gap_axis_ibp(const AxisProfile& profile);

// Max pointwise residual of the identity
//   H s^4 F N - 2 s^3 + 1/2 = -r^2 F^(1/2) lambda'' / (1 + lambda'^2)
// (y-symmetric; the x-symmetric analogue drops the F^(1/2)), with the two
// sides built independently.
double integrand_identity_residual(const AxisProfile& profile);

// Lift a 1D profile to the full 2D surface for cross-module checks.
GraphSurface lift_profile(const AxisProfile& profile, int n_other);

struct PerturbationSpec {
  SpaceParams params;
  GridSpec grid;
  double r0 = 2.0;
  Field phi;              // perturbation direction on the grid
  double eps0 = 0.0;      // base step; default 1e-2 (r0 - rs) if zero
  double margin = 1e-6;

  double eps_base() const { return eps0 > 0.0 ? eps0 : 1e-2 * (r0 - params.rs); }
  void validate() const;
};

// Closed-form second variation of Q about the coordinate torus r = r0:
//   2 int [ (4F0 + r0 F0')/(2 r0 F0) phi_x^2 + 2F0/(r0 F0^2) phi_y^2 ]
double second_variation_form(const PerturbationSpec& spec);

struct SweepResult {
  double Q0 = 0.0;        // Q at eps = 0
  double dQ = 0.0;        // Richardson-refined first derivative at eps = 0
  double d2Q_fd = 0.0;    // Richardson-refined second derivative
  double d2Q_form = 0.0;  // closed-form quadratic form, for the report
};

// Central-difference sweep over eps in {0, +-eps0, +-eps0/2}. Asserts
// |dQ| <= 1e-7 |Q| and |d2Q_fd - d2Q_form| <= 1% relative (for non-constant
// phi), throwing PropertyViolation otherwise.
SweepResult perturbation_sweep(const PerturbationSpec& spec);

}  // namespace adsm
