#pragma once

#include <Eigen/Core>

// Uniform periodic grid over the torus [0,Px) x [0,Py) and the central
// finite-difference stencils used throughout. Fields are stored as
// Eigen::ArrayXXd with row index i along x and column index j along y;
// periodicity is implicit (indices wrap).

namespace adsm {

using Field = Eigen::ArrayXXd;
using Field1D = Eigen::ArrayXd;

struct GridSpec {
  int nx = 0;
  int ny = 0;
  int order = 4;  // stencil order: 2, 4 or 6
  double hx = 0.0;
  double hy = 0.0;

  static GridSpec make(int nx, int ny, double Px, double Py, int order = 4);
};

// Periodic central difference along x (rows) or y (columns).
// deriv is 1 or 2; order is 2, 4 or 6.
Field diff_x(const Field& f, double h, int order, int deriv);
Field diff_y(const Field& f, double h, int order, int deriv);

// Same stencils on a 1D periodic array.
Field1D diff_1d(const Field1D& f, double h, int order, int deriv);

// Periodic trapezoid rule (= plain scaled sum), fixed summation order.
double integrate(const Field& f, double hx, double hy);
double integrate_1d(const Field1D& f, double h);

// Coordinate fields x(i,j) = i*hx, y(i,j) = j*hy.
Field coord_x(const GridSpec& g);
Field coord_y(const GridSpec& g);

}  // namespace adsm
