#pragma once

#include "adsmelvin/grid.hpp"
#include "adsmelvin/melvin_space.hpp"

// Discrete geometry of a graph surface Sigma = { r = s(x,y) } over the torus.

namespace adsm {

struct GraphSurface {
  SpaceParams params;
  GridSpec grid;
  Field s;                // height values, nx x ny, periodic
  double margin = 1e-6;   // required clearance above rs

  // Throws std::domain_error naming the offending grid point if the height
  // field dips below rs + margin.
  void check_heights() const;
};

GraphSurface make_surface(const SpaceParams& params, const GridSpec& grid, Field s,
                          double margin = 1e-6);

struct DerivativeFields {
  Field sx, sy, sxx, sxy, syy;
};

// Periodic central differences of the height field at the grid's stencil order.
DerivativeFields differentiate(const GraphSurface& surf);

// Per-point geometric quantities of Sigma. All fields are nx x ny.
struct GeometryField {
  DerivativeFields d;
  Field F, dF;              // profile and derivative evaluated at s
  Field gxx, gxy, gyy;      // induced metric
  Field gixx, gixy, giyy;   // inverse metric
  Field detg;               // = s^6 F^2 N^2
  Field N;                  // lapse-like factor, N^2 = s^-2 F^-1 z^2
  Field z2;                 // z^2 = 1 + s^-4 F^-1 sx^2 + s^-4 F^-2 sy^2
  Field hxx, hxy, hyy;      // second fundamental form
  Field H;                  // mean curvature (closed form; asserted == tr h)
  Field A2;                 // |A|^2
  Field area_density;       // s^3 F N
  Field grad_r2;            // |grad r|^2 = s^2 F (1 - z^-2)
  Field grad_y2;            // |grad y|^2
  Field lap_r;              // closed-form Delta r
  Field ric_nn;             // ambient Ric(nu,nu)
  Field K;                  // intrinsic Gaussian curvature (Brioschi from g)
  Field gap_density;        // H r dA/dxdy - 2 s^3 + 1/2, organized so the
                            // torus part cancels algebraically (exact zero
                            // on constant height fields)
};

GeometryField geometry(const GraphSurface& surf);

// Divergence-form Laplace-Beltrami of a scalar field on Sigma:
//   Delta f = detg^-1/2 d_i ( g^ij detg^1/2 d_j f )
Field laplacian_intrinsic(const GraphSurface& surf, const GeometryField& geom, const Field& f);

struct QResult {
  double Q = 0.0;
  double gap = 0.0;  // Q - Px Py (2 rs^3 - 1/2)
};

// The Minkowski-type functional Q(Sigma) = int H r dA - 6 int_Omega r dV and
// its gap above the coordinate-torus value. Cross-computed along two routes
// which must agree to 1e-10 relative.
QResult q_functional(const GraphSurface& surf);
QResult q_functional(const GraphSurface& surf, const GeometryField& geom);

}  // namespace adsm
