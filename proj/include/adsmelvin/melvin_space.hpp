#pragma once

#include <array>

// Closed-form geometry of the AdS-Melvin space
//
//   gbar = r^-2 F^-1 dr^2 + r^2 dx^2 + r^2 F dy^2,   F(r) = 1 - r^-3 - b r^-4
//
// on the solid torus r > rs, x ~ x + Px, y ~ y + Py. All quantities here are
// exact closed forms; finite differences appear only in the verify oracles.

namespace adsm {

struct ProfileEval {
  double F;
  double dF;
  double d2F;
};

// F, F', F'' at radius r. Throws std::domain_error for r <= 0.
ProfileEval eval_profile(double b, double r);

// Largest positive root of F, i.e. the root of r^4 - r - b in [1, inf).
// |F(rs)| <= 1e-13 on return. Throws std::domain_error for b < 0.
double solve_soliton_radius(double b);

// Smoothness period of the y-circle, P_y = 4 pi / (rs^2 F'(rs)).
double period_y(double b);

struct SpaceParams {
  double b = 0.0;
  double Px = 1.0;
  double rs = 1.0;  // derived
  double Py = 0.0;  // derived

  static SpaceParams make(double b, double Px);
};

// Metric diagonal (g_rr, g_xx, g_yy) at radius r. Requires r > rs.
std::array<double, 3> metric_diag(const SpaceParams& p, double r);

// The five nonzero Christoffel symbols of gbar.
struct ChristoffelTable {
  double r_rr;  // Gamma^r_rr = -1/r - F'/(2F)
  double r_xx;  // Gamma^r_xx = -r^3 F
  double r_yy;  // Gamma^r_yy = -r^3 F^2 - r^4 F F'/2
  double x_rx;  // Gamma^x_rx = 1/r
  double y_ry;  // Gamma^y_ry = 1/r + F'/(2F)
};
ChristoffelTable christoffels(const SpaceParams& p, double r);

// Ricci tensor: diagonal lower-index components plus eigenvalues relative to
// gbar, ordered (r, x, y). The r and y eigenvalues coincide.
struct RicciDiag {
  double rr;
  double xx;
  double yy;
  std::array<double, 3> eigenvalues;
};
RicciDiag ricci(const SpaceParams& p, double r);

// Scalar curvature, -6 + 2b/r^4.
double scalar_curvature(const SpaceParams& p, double r);

// Ambient Hessian of the coordinate function r (diagonal, = -Gamma^r_ab) and
// its trace 3rF + r^2 F'.
struct HessianR {
  double rr;
  double xx;
  double yy;
  double laplacian;
};
HessianR hessian_r(const SpaceParams& p, double r);

// Eigenvalues of Hess(r) - (Lap r) gbar - r Ric relative to gbar, ordered
// (r, x, y). Exactly (-2b/r^3, 0, -2b/r^3).
std::array<double, 3> static_tensor_eigenvalues(const SpaceParams& p, double r);

// Independent lower-index Riemann components; everything else vanishes or
// follows by symmetry.
struct RiemannDiag {
  double rxrx;  // -1 - r F'/(2F)
  double ryry;  // -F - 2rF' - r^2 F''/2
  double yxyx;  // -r^4 F^2 - r^5 F F'/2
};
RiemannDiag riemann(const SpaceParams& p, double r);

// Full lower-index Riemann component R_abcd, indices 0=r, 1=x, 2=y, with the
// convention R(X,Y,Z,W) = gbar(Riem(Z,W)Y, X) fixed so that
// Ric_bd = g^{ac} R_abcd matches ricci() above.
double riemann_component(const SpaceParams& p, double r, int a, int b, int c, int d);

}  // namespace adsm
