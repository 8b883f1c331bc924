#include "adsmelvin/grid.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace adsm {

GridSpec GridSpec::make(int nx, int ny, double Px, double Py, int order) {
  if (nx < 8 || ny < 8) {
    throw std::domain_error("GridSpec: need nx, ny >= 8");
  }
  if (order != 2 && order != 4 && order != 6) {
    throw std::domain_error("GridSpec: stencil order must be 2, 4 or 6");
  }
  if (!(Px > 0.0 && Py > 0.0)) {
    throw std::domain_error("GridSpec: periods must be positive");
  }
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.order = order;
  g.hx = Px / nx;
  g.hy = Py / ny;
  return g;
}

namespace {

struct Stencil {
  int half;                     // stencil reach
  std::array<double, 7> coeff;  // offsets -half..+half
};

Stencil stencil(int order, int deriv) {
  // Classical central-difference weights (before division by h^deriv).
  if (deriv == 1) {
    switch (order) {
      case 2: return {1, {-0.5, 0.0, 0.5}};
      case 4: return {2, {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12}};
      case 6:
        return {3, {-1.0 / 60, 9.0 / 60, -45.0 / 60, 0.0, 45.0 / 60, -9.0 / 60, 1.0 / 60}};
    }
  } else if (deriv == 2) {
    switch (order) {
      case 2: return {1, {1.0, -2.0, 1.0}};
      case 4: return {2, {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12}};
      case 6:
        return {3, {2.0 / 180, -27.0 / 180, 270.0 / 180, -490.0 / 180, 270.0 / 180,
                    -27.0 / 180, 2.0 / 180}};
    }
  }
  throw std::domain_error("stencil: unsupported order/derivative");
}

inline int wrap(int i, int n) {
  i %= n;
  return i < 0 ? i + n : i;
}

void require_spacing(double h) {
  if (!(h > 0.0)) {
    throw std::domain_error("diff: grid spacing must be positive");
  }
}

}  // namespace

// The stencils are applied in symmetric-difference form,
//   deriv 1:  sum_k c_k (f(i+k) - f(i-k)),
//   deriv 2:  sum_k c_k (f(i+k) - 2 f(i) + f(i-k)),
// so constant fields are annihilated exactly, not just to round-off.

Field diff_x(const Field& f, double h, int order, int deriv) {
  require_spacing(h);
  const auto st = stencil(order, deriv);
  const double scale = 1.0 / std::pow(h, deriv);
  const int nx = static_cast<int>(f.rows());
  const int ny = static_cast<int>(f.cols());
  Field out = Field::Zero(nx, ny);
  for (int k = 1; k <= st.half; ++k) {
    const double c = st.coeff[k + st.half];
    for (int i = 0; i < nx; ++i) {
      const int ip = wrap(i + k, nx);
      const int im = wrap(i - k, nx);
      if (deriv == 1) {
        for (int j = 0; j < ny; ++j) out(i, j) += c * (f(ip, j) - f(im, j));
      } else {
        for (int j = 0; j < ny; ++j) out(i, j) += c * (f(ip, j) - 2.0 * f(i, j) + f(im, j));
      }
    }
  }
  return out * scale;
}

Field diff_y(const Field& f, double h, int order, int deriv) {
  require_spacing(h);
  const auto st = stencil(order, deriv);
  const double scale = 1.0 / std::pow(h, deriv);
  const int ny = static_cast<int>(f.cols());
  Field out = Field::Zero(f.rows(), ny);
  for (int k = 1; k <= st.half; ++k) {
    const double c = st.coeff[k + st.half];
    for (int j = 0; j < ny; ++j) {
      const int jp = wrap(j + k, ny);
      const int jm = wrap(j - k, ny);
      if (deriv == 1) {
        out.col(j) += c * (f.col(jp) - f.col(jm));
      } else {
        out.col(j) += c * (f.col(jp) - 2.0 * f.col(j) + f.col(jm));
      }
    }
  }
  return out * scale;
}

Field1D diff_1d(const Field1D& f, double h, int order, int deriv) {
  require_spacing(h);
  const auto st = stencil(order, deriv);
  const double scale = 1.0 / std::pow(h, deriv);
  const int n = static_cast<int>(f.size());
  Field1D out = Field1D::Zero(n);
  for (int k = 1; k <= st.half; ++k) {
    const double c = st.coeff[k + st.half];
    for (int i = 0; i < n; ++i) {
      const double fp = f(wrap(i + k, n)), fm = f(wrap(i - k, n));
      out(i) += deriv == 1 ? c * (fp - fm) : c * (fp - 2.0 * f(i) + fm);
    }
  }
  return out * scale;
}

double integrate(const Field& f, double hx, double hy) {
  // Sequential accumulation in a fixed order for bit-reproducibility.
  double acc = 0.0;
  for (int j = 0; j < f.cols(); ++j) {
    for (int i = 0; i < f.rows(); ++i) {
      acc += f(i, j);
    }
  }
  return acc * hx * hy;
}

double integrate_1d(const Field1D& f, double h) {
  double acc = 0.0;
  for (int i = 0; i < f.size(); ++i) acc += f(i);
  return acc * h;
}

Field coord_x(const GridSpec& g) {
  Field out(g.nx, g.ny);
  for (int i = 0; i < g.nx; ++i) out.row(i).setConstant(i * g.hx);
  return out;
}

Field coord_y(const GridSpec& g) {
  Field out(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j) out.col(j).setConstant(j * g.hy);
  return out;
}

}  // namespace adsm
