#pragma once

#include <functional>
#include <string>
#include <vector>

#include "adsmelvin/graph_surface.hpp"

// Independent oracle harness: evolution-equation checks on a Lagrangian
// parameter patch, the monotonicity integrand identity, and finite-difference
// cross-checks of every closed-form ambient tensor.

namespace adsm {

using SpeedFn = std::function<double(double r, double x, double y)>;

// A periodic parameter patch (u,v) carrying an embedded surface
//   phi(u,v) = ( r(u,v), u + xi(u,v), v + eta(u,v) )
// whose points evolve as particles under dphi/dt = rho nu.
struct LagrangianPatch {
  SpaceParams params;
  int nu = 0, nv = 0;
  int order = 6;          // parameter-derivative stencil order
  double hu = 0.0, hv = 0.0;
  double margin = 1e-6;
  Field r, xi, eta;       // xi, eta periodic displacement fields

  void check_chart() const;  // throws if any point left r > rs + margin
};

LagrangianPatch patch_from_height(const SpaceParams& params, int nu, int nv, const Field& s,
                                  int order = 6);

// Full extrinsic/intrinsic geometry of the patch, all derivatives taken in
// the (u,v) parameters.
struct PatchGeometry {
  Field g11, g12, g22;     // induced metric
  Field gi11, gi12, gi22;  // inverse
  Field sqrtg;
  Field nr, nx, ny;        // unit outward normal components (nr > 0)
  Field h11, h12, h22;     // second fundamental form
  Field H, A2;
  Field ric_nn;            // ambient Ric(nu,nu)
};
PatchGeometry patch_geometry(const LagrangianPatch& patch);

LagrangianPatch patch_step(const LagrangianPatch& patch, const SpeedFn& rho, double dt);
std::vector<LagrangianPatch> evolve_patch(const LagrangianPatch& patch, const SpeedFn& rho,
                                          double dt, int steps);

// Max residuals of the five evolution identities, centered time differences
// at the middle sample of a >=3-sample trajectory against the analytic right
// sides. Residuals are scaled by the magnitude of the right side.
struct EvolutionResiduals {
  double metric = 0.0;          // d g_ij/dt = 2 rho h_ij
  double area = 0.0;            // d sqrt(det g)/dt = rho H sqrt(det g)
  double normal = 0.0;          // gbar(dnu/dt + grad rho, E_i) = 0
  double second_form = 0.0;     // d h_ij/dt = -Hess rho + rho Rbar(.,nu,nu,.) + rho h^2
  double mean_curvature = 0.0;  // dH/dt = -Lap rho - rho Ric(nu,nu) - rho |A|^2
};
EvolutionResiduals check_evolution_identities(const std::vector<LagrangianPatch>& trajectory,
                                              const SpeedFn& rho, double dt);

// Discrete assembly of the divergence identity behind the monotonicity proof:
//   lhs = int (2 Lap r / r + 2K) dA,  rhs = int 2 |grad r|^2 / r^2 dA,
// equal and nonnegative. Lap r is the closed form, K the intrinsic Gaussian
// curvature, so agreement ties extrinsic and intrinsic routes together.
struct MonotoneCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};
MonotoneCheck monotonicity_integrand(const GraphSurface& surf);

// Finite-difference cross-checks of the melvin_space closed forms.
struct CheckResult {
  std::string name;
  double max_rel_err = 0.0;
};
std::vector<CheckResult> ambient_fd_suite(const SpaceParams& params,
                                          const std::vector<double>& radii, double h = 1e-4);

}  // namespace adsm
