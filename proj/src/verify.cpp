#include "adsmelvin/verify.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adsm {

namespace {

void require_shape(const Field& f, int nu, int nv, const char* what) {
  if (f.rows() != nu || f.cols() != nv) {
    throw std::domain_error(std::string("LagrangianPatch: ") + what + " shape mismatch");
  }
}

// Derivative bundle of the embedding in the (u,v) parameters. X = u + xi and
// Y = v + eta, so X_u = 1 + xi_u etc. while all second derivatives are pure
// derivatives of the periodic displacement fields.
struct PatchDerivs {
  Field ru, rv, ruu, ruv, rvv;
  Field Xu, Xv, Xuu, Xuv, Xvv;
  Field Yu, Yv, Yuu, Yuv, Yvv;
};

PatchDerivs patch_derivs(const LagrangianPatch& p) {
  PatchDerivs d;
  d.ru = diff_x(p.r, p.hu, p.order, 1);
  d.rv = diff_y(p.r, p.hv, p.order, 1);
  d.ruu = diff_x(p.r, p.hu, p.order, 2);
  d.rvv = diff_y(p.r, p.hv, p.order, 2);
  d.ruv = diff_y(d.ru, p.hv, p.order, 1);
  d.Xu = 1.0 + diff_x(p.xi, p.hu, p.order, 1);
  d.Xv = diff_y(p.xi, p.hv, p.order, 1);
  d.Xuu = diff_x(p.xi, p.hu, p.order, 2);
  d.Xvv = diff_y(p.xi, p.hv, p.order, 2);
  d.Xuv = diff_y(diff_x(p.xi, p.hu, p.order, 1), p.hv, p.order, 1);
  d.Yu = diff_x(p.eta, p.hu, p.order, 1);
  d.Yv = 1.0 + diff_y(p.eta, p.hv, p.order, 1);
  d.Yuu = diff_x(p.eta, p.hu, p.order, 2);
  d.Yvv = diff_y(p.eta, p.hv, p.order, 2);
  d.Yuv = diff_y(diff_x(p.eta, p.hu, p.order, 1), p.hv, p.order, 1);
  return d;
}

}  // namespace

void LagrangianPatch::check_chart() const {
  const double floor_val = params.rs + margin;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      if (!(r(i, j) > floor_val)) {
        throw std::domain_error("LagrangianPatch: radius " + std::to_string(r(i, j)) +
                                " at (" + std::to_string(i) + "," + std::to_string(j) +
                                ") is below rs + margin");
      }
    }
  }
}

LagrangianPatch patch_from_height(const SpaceParams& params, int nu, int nv, const Field& s,
                                  int order) {
  if (nu < 8 || nv < 8) throw std::domain_error("LagrangianPatch: need nu, nv >= 8");
  if (order != 2 && order != 4 && order != 6) {
    throw std::domain_error("LagrangianPatch: order must be 2, 4 or 6");
  }
  LagrangianPatch p;
  p.params = params;
  p.nu = nu;
  p.nv = nv;
  p.order = order;
  p.hu = params.Px / static_cast<double>(nu);
  p.hv = params.Py / static_cast<double>(nv);
  require_shape(s, nu, nv, "height field");
  p.r = s;
  p.xi = Field::Zero(nu, nv);
  p.eta = Field::Zero(nu, nv);
  p.check_chart();
  return p;
}

PatchGeometry patch_geometry(const LagrangianPatch& p) {
  p.check_chart();
  const PatchDerivs d = patch_derivs(p);

  PatchGeometry g;
  g.g11.resize(p.nu, p.nv);
  g.g12.resize(p.nu, p.nv);
  g.g22.resize(p.nu, p.nv);
  g.gi11.resize(p.nu, p.nv);
  g.gi12.resize(p.nu, p.nv);
  g.gi22.resize(p.nu, p.nv);
  g.sqrtg.resize(p.nu, p.nv);
  g.nr.resize(p.nu, p.nv);
  g.nx.resize(p.nu, p.nv);
  g.ny.resize(p.nu, p.nv);
  g.h11.resize(p.nu, p.nv);
  g.h12.resize(p.nu, p.nv);
  g.h22.resize(p.nu, p.nv);
  g.H.resize(p.nu, p.nv);
  g.A2.resize(p.nu, p.nv);
  g.ric_nn.resize(p.nu, p.nv);

  for (int i = 0; i < p.nu; ++i) {
    for (int j = 0; j < p.nv; ++j) {
      const double r = p.r(i, j);
      const auto gbar = metric_diag(p.params, r);
      const auto chr = christoffels(p.params, r);
      const double e1[3] = {d.ru(i, j), d.Xu(i, j), d.Yu(i, j)};
      const double e2[3] = {d.rv(i, j), d.Xv(i, j), d.Yv(i, j)};

      const double g11 = gbar[0] * e1[0] * e1[0] + gbar[1] * e1[1] * e1[1] + gbar[2] * e1[2] * e1[2];
      const double g12 = gbar[0] * e1[0] * e2[0] + gbar[1] * e1[1] * e2[1] + gbar[2] * e1[2] * e2[2];
      const double g22 = gbar[0] * e2[0] * e2[0] + gbar[1] * e2[1] * e2[1] + gbar[2] * e2[2] * e2[2];
      const double det = g11 * g22 - g12 * g12;
      if (!(det > 0.0)) {
        throw std::logic_error("patch_geometry: induced metric degenerate");
      }
      g.g11(i, j) = g11;
      g.g12(i, j) = g12;
      g.g22(i, j) = g22;
      g.gi11(i, j) = g22 / det;
      g.gi12(i, j) = -g12 / det;
      g.gi22(i, j) = g11 / det;
      g.sqrtg(i, j) = std::sqrt(det);

      // Covariant normal up to scale: m_a = (E1 x E2)_a with the bare
      // permutation symbol; raise with gbar and normalize.
      const double m[3] = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                           e1[0] * e2[1] - e1[1] * e2[0]};
      if (!(m[0] > 0.0)) {
        throw std::logic_error("patch_geometry: surface is no longer graph-like (m_r <= 0)");
      }
      double nvec[3];
      double norm2 = 0.0;
      for (int a = 0; a < 3; ++a) {
        nvec[a] = m[a] / gbar[a];
        norm2 += m[a] * m[a] / gbar[a];
      }
      const double norm = std::sqrt(norm2);
      for (auto& c : nvec) c /= norm;
      g.nr(i, j) = nvec[0];
      g.nx(i, j) = nvec[1];
      g.ny(i, j) = nvec[2];

      // h_ij = gbar(nabla_{E_i} E_j, -nu); the ambient correction uses the
      // five nonzero Christoffel symbols.
      const double sec[3][3] = {{d.ruu(i, j), d.ruv(i, j), d.rvv(i, j)},
                                {d.Xuu(i, j), d.Xuv(i, j), d.Xvv(i, j)},
                                {d.Yuu(i, j), d.Yuv(i, j), d.Yvv(i, j)}};
      double h[3];  // h11, h12, h22
      const int idx1[3] = {0, 0, 1}, idx2[3] = {0, 1, 1};
      for (int k = 0; k < 3; ++k) {
        const double* a = (idx1[k] == 0) ? e1 : e2;
        const double* b = (idx2[k] == 0) ? e1 : e2;
        const double wr = sec[0][k] + chr.r_rr * a[0] * b[0] + chr.r_xx * a[1] * b[1] +
                          chr.r_yy * a[2] * b[2];
        const double wx = sec[1][k] + chr.x_rx * (a[0] * b[1] + a[1] * b[0]);
        const double wy = sec[2][k] + chr.y_ry * (a[0] * b[2] + a[2] * b[0]);
        h[k] = -(gbar[0] * wr * nvec[0] + gbar[1] * wx * nvec[1] + gbar[2] * wy * nvec[2]);
      }
      g.h11(i, j) = h[0];
      g.h12(i, j) = h[1];
      g.h22(i, j) = h[2];
      g.H(i, j) = g.gi11(i, j) * h[0] + 2.0 * g.gi12(i, j) * h[1] + g.gi22(i, j) * h[2];
      const double m11 = g.gi11(i, j) * h[0] + g.gi12(i, j) * h[1];
      const double m12 = g.gi11(i, j) * h[1] + g.gi12(i, j) * h[2];
      const double m21 = g.gi12(i, j) * h[0] + g.gi22(i, j) * h[1];
      const double m22 = g.gi12(i, j) * h[1] + g.gi22(i, j) * h[2];
      g.A2(i, j) = m11 * m11 + 2.0 * m12 * m21 + m22 * m22;

      const auto ric = ricci(p.params, r);
      g.ric_nn(i, j) = ric.rr * nvec[0] * nvec[0] + ric.xx * nvec[1] * nvec[1] +
                       ric.yy * nvec[2] * nvec[2];
    }
  }
  return g;
}

namespace {

struct Velocity {
  Field vr, vx, vy;  // dphi/dt = rho nu, ambient components
  Field rho;         // rho evaluated along the patch
};

Velocity patch_velocity(const LagrangianPatch& p, const PatchGeometry& g, const SpeedFn& rho) {
  Velocity v;
  v.rho.resize(p.nu, p.nv);
  for (int i = 0; i < p.nu; ++i) {
    for (int j = 0; j < p.nv; ++j) {
      const double x = static_cast<double>(i) * p.hu + p.xi(i, j);
      const double y = static_cast<double>(j) * p.hv + p.eta(i, j);
      v.rho(i, j) = rho(p.r(i, j), x, y);
    }
  }
  v.vr = v.rho * g.nr;
  v.vx = v.rho * g.nx;
  v.vy = v.rho * g.ny;
  return v;
}

LagrangianPatch advanced(const LagrangianPatch& base, const Velocity& v, double dt) {
  LagrangianPatch q = base;
  q.r = base.r + dt * v.vr;
  q.xi = base.xi + dt * v.vx;
  q.eta = base.eta + dt * v.vy;
  return q;
}

}  // namespace

LagrangianPatch patch_step(const LagrangianPatch& p, const SpeedFn& rho, double dt) {
  const Velocity k1 = patch_velocity(p, patch_geometry(p), rho);
  const LagrangianPatch p2 = advanced(p, k1, 0.5 * dt);
  const Velocity k2 = patch_velocity(p2, patch_geometry(p2), rho);
  const LagrangianPatch p3 = advanced(p, k2, 0.5 * dt);
  const Velocity k3 = patch_velocity(p3, patch_geometry(p3), rho);
  const LagrangianPatch p4 = advanced(p, k3, dt);
  const Velocity k4 = patch_velocity(p4, patch_geometry(p4), rho);

  LagrangianPatch out = p;
  out.r = p.r + (dt / 6.0) * (k1.vr + 2.0 * k2.vr + 2.0 * k3.vr + k4.vr);
  out.xi = p.xi + (dt / 6.0) * (k1.vx + 2.0 * k2.vx + 2.0 * k3.vx + k4.vx);
  out.eta = p.eta + (dt / 6.0) * (k1.vy + 2.0 * k2.vy + 2.0 * k3.vy + k4.vy);
  out.check_chart();
  return out;
}

std::vector<LagrangianPatch> evolve_patch(const LagrangianPatch& patch, const SpeedFn& rho,
                                          double dt, int steps) {
  if (steps < 0) throw std::domain_error("evolve_patch: steps must be nonnegative");
  std::vector<LagrangianPatch> traj;
  traj.reserve(static_cast<size_t>(steps) + 1);
  traj.push_back(patch);
  for (int k = 0; k < steps; ++k) {
    traj.push_back(patch_step(traj.back(), rho, dt));
  }
  return traj;
}

namespace {

double scaled_max_err(const Field& lhs, const Field& rhs) {
  const double scale = rhs.abs().maxCoeff() + 1e-12;
  return (lhs - rhs).abs().maxCoeff() / scale;
}

}  // namespace

EvolutionResiduals check_evolution_identities(const std::vector<LagrangianPatch>& trajectory,
                                              const SpeedFn& rho, double dt) {
  if (trajectory.size() < 3) {
    throw std::domain_error("check_evolution_identities: need at least 3 samples");
  }
  const size_t k = trajectory.size() / 2;
  const LagrangianPatch& pm = trajectory[k - 1];
  const LagrangianPatch& p0 = trajectory[k];
  const LagrangianPatch& pp = trajectory[k + 1];
  const PatchGeometry gm = patch_geometry(pm);
  const PatchGeometry g0 = patch_geometry(p0);
  const PatchGeometry gp = patch_geometry(pp);
  const Velocity v0 = patch_velocity(p0, g0, rho);
  const double inv2dt = 1.0 / (2.0 * dt);

  EvolutionResiduals res;

  // d g_ij / dt = 2 rho h_ij
  {
    const double e11 = scaled_max_err((gp.g11 - gm.g11) * inv2dt, 2.0 * v0.rho * g0.h11);
    const double e12 = scaled_max_err((gp.g12 - gm.g12) * inv2dt, 2.0 * v0.rho * g0.h12);
    const double e22 = scaled_max_err((gp.g22 - gm.g22) * inv2dt, 2.0 * v0.rho * g0.h22);
    res.metric = std::max({e11, e12, e22});
  }

  // d sqrt(det g) / dt = rho H sqrt(det g)
  res.area = scaled_max_err((gp.sqrtg - gm.sqrtg) * inv2dt, v0.rho * g0.H * g0.sqrtg);

  // Intrinsic pieces at the middle sample: rho along the patch, its parameter
  // derivatives, the intrinsic Christoffel symbols and the Hessian of rho.
  const PatchDerivs d0 = patch_derivs(p0);
  const Field rho1 = diff_x(v0.rho, p0.hu, p0.order, 1);
  const Field rho2 = diff_y(v0.rho, p0.hv, p0.order, 1);
  const Field rho11 = diff_x(v0.rho, p0.hu, p0.order, 2);
  const Field rho22 = diff_y(v0.rho, p0.hv, p0.order, 2);
  const Field rho12 = diff_y(rho1, p0.hv, p0.order, 1);

  const Field d1g11 = diff_x(g0.g11, p0.hu, p0.order, 1);
  const Field d2g11 = diff_y(g0.g11, p0.hv, p0.order, 1);
  const Field d1g12 = diff_x(g0.g12, p0.hu, p0.order, 1);
  const Field d2g12 = diff_y(g0.g12, p0.hv, p0.order, 1);
  const Field d1g22 = diff_x(g0.g22, p0.hu, p0.order, 1);
  const Field d2g22 = diff_y(g0.g22, p0.hv, p0.order, 1);

  // Lower-index Christoffel sums c_l(i,j) = (d_i g_lj + d_j g_il - d_l g_ij)/2.
  const Field c1_11 = 0.5 * d1g11;
  const Field c2_11 = d1g12 - 0.5 * d2g11;
  const Field c1_12 = 0.5 * d2g11;
  const Field c2_12 = 0.5 * d1g22;
  const Field c1_22 = d2g12 - 0.5 * d1g22;
  const Field c2_22 = 0.5 * d2g22;
  const Field G1_11 = g0.gi11 * c1_11 + g0.gi12 * c2_11;
  const Field G2_11 = g0.gi12 * c1_11 + g0.gi22 * c2_11;
  const Field G1_12 = g0.gi11 * c1_12 + g0.gi12 * c2_12;
  const Field G2_12 = g0.gi12 * c1_12 + g0.gi22 * c2_12;
  const Field G1_22 = g0.gi11 * c1_22 + g0.gi12 * c2_22;
  const Field G2_22 = g0.gi12 * c1_22 + g0.gi22 * c2_22;

  const Field hess11 = rho11 - G1_11 * rho1 - G2_11 * rho2;
  const Field hess12 = rho12 - G1_12 * rho1 - G2_12 * rho2;
  const Field hess22 = rho22 - G1_22 * rho1 - G2_22 * rho2;
  const Field lap_rho = g0.gi11 * hess11 + 2.0 * g0.gi12 * hess12 + g0.gi22 * hess22;

  // Tangential gradient of rho in ambient components.
  const Field c1 = g0.gi11 * rho1 + g0.gi12 * rho2;
  const Field c2 = g0.gi12 * rho1 + g0.gi22 * rho2;
  const Field grad_r = c1 * d0.ru + c2 * d0.rv;
  const Field grad_x = c1 * d0.Xu + c2 * d0.Xv;
  const Field grad_y = c1 * d0.Yu + c2 * d0.Yv;

  // gbar(covariant d nu/dt + grad rho, E_i) = 0. The centered component
  // difference needs the connection correction Gamma^a_bc V^b nu^c.
  {
    Field res1(p0.nu, p0.nv), res2(p0.nu, p0.nv);
    for (int i = 0; i < p0.nu; ++i) {
      for (int j = 0; j < p0.nv; ++j) {
        const double r = p0.r(i, j);
        const auto gbar = metric_diag(p0.params, r);
        const auto chr = christoffels(p0.params, r);
        const double nu0[3] = {g0.nr(i, j), g0.nx(i, j), g0.ny(i, j)};
        const double V[3] = {v0.vr(i, j), v0.vx(i, j), v0.vy(i, j)};
        const double dnu[3] = {(gp.nr(i, j) - gm.nr(i, j)) * inv2dt,
                               (gp.nx(i, j) - gm.nx(i, j)) * inv2dt,
                               (gp.ny(i, j) - gm.ny(i, j)) * inv2dt};
        double W[3];
        W[0] = dnu[0] + chr.r_rr * V[0] * nu0[0] + chr.r_xx * V[1] * nu0[1] +
               chr.r_yy * V[2] * nu0[2] + grad_r(i, j);
        W[1] = dnu[1] + chr.x_rx * (V[0] * nu0[1] + V[1] * nu0[0]) + grad_x(i, j);
        W[2] = dnu[2] + chr.y_ry * (V[0] * nu0[2] + V[2] * nu0[0]) + grad_y(i, j);
        const double e1[3] = {d0.ru(i, j), d0.Xu(i, j), d0.Yu(i, j)};
        const double e2[3] = {d0.rv(i, j), d0.Xv(i, j), d0.Yv(i, j)};
        res1(i, j) = gbar[0] * W[0] * e1[0] + gbar[1] * W[1] * e1[1] + gbar[2] * W[2] * e1[2];
        res2(i, j) = gbar[0] * W[0] * e2[0] + gbar[1] * W[1] * e2[1] + gbar[2] * W[2] * e2[2];
      }
    }
    const double scale = std::max(rho1.abs().maxCoeff(), rho2.abs().maxCoeff()) + 1.0;
    res.normal = std::max(res1.abs().maxCoeff(), res2.abs().maxCoeff()) / scale;
  }

  // Ambient curvature term Rbar(E_i, nu, nu, E_j) and the h^2 term.
  Field R11(p0.nu, p0.nv), R12(p0.nu, p0.nv), R22(p0.nu, p0.nv);
  for (int i = 0; i < p0.nu; ++i) {
    for (int j = 0; j < p0.nv; ++j) {
      const double r = p0.r(i, j);
      const double nu0[3] = {g0.nr(i, j), g0.nx(i, j), g0.ny(i, j)};
      const double e1[3] = {d0.ru(i, j), d0.Xu(i, j), d0.Yu(i, j)};
      const double e2[3] = {d0.rv(i, j), d0.Xv(i, j), d0.Yv(i, j)};
      double s11 = 0.0, s12 = 0.0, s22 = 0.0;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          if (a == b) continue;
          for (int c = 0; c < 3; ++c) {
            for (int dd = 0; dd < 3; ++dd) {
              if (c == dd) continue;
              const double Rc = riemann_component(p0.params, r, a, b, c, dd);
              if (Rc == 0.0) continue;
              const double mid = nu0[b] * nu0[c];
              s11 += Rc * e1[a] * mid * e1[dd];
              s12 += Rc * e1[a] * mid * e2[dd];
              s22 += Rc * e2[a] * mid * e2[dd];
            }
          }
        }
      }
      R11(i, j) = s11;
      R12(i, j) = s12;
      R22(i, j) = s22;
    }
  }
  const Field hsq11 = g0.h11 * (g0.gi11 * g0.h11 + g0.gi12 * g0.h12) +
                      g0.h12 * (g0.gi12 * g0.h11 + g0.gi22 * g0.h12);
  const Field hsq12 = g0.h11 * (g0.gi11 * g0.h12 + g0.gi12 * g0.h22) +
                      g0.h12 * (g0.gi12 * g0.h12 + g0.gi22 * g0.h22);
  const Field hsq22 = g0.h12 * (g0.gi11 * g0.h12 + g0.gi12 * g0.h22) +
                      g0.h22 * (g0.gi12 * g0.h12 + g0.gi22 * g0.h22);

  // d h_ij / dt = -Hess_ij rho + rho Rbar(E_i, nu, nu, E_j) + rho (h^2)_ij
  {
    const double e11 = scaled_max_err((gp.h11 - gm.h11) * inv2dt,
                                      -hess11 + v0.rho * R11 + v0.rho * hsq11);
    const double e12 = scaled_max_err((gp.h12 - gm.h12) * inv2dt,
                                      -hess12 + v0.rho * R12 + v0.rho * hsq12);
    const double e22 = scaled_max_err((gp.h22 - gm.h22) * inv2dt,
                                      -hess22 + v0.rho * R22 + v0.rho * hsq22);
    res.second_form = std::max({e11, e12, e22});
  }

  // dH/dt = -Lap rho - rho (Ric(nu,nu) + |A|^2)
  res.mean_curvature = scaled_max_err((gp.H - gm.H) * inv2dt,
                                      -lap_rho - v0.rho * (g0.ric_nn + g0.A2));
  return res;
}

MonotoneCheck monotonicity_integrand(const GraphSurface& surf) {
  const GeometryField geom = geometry(surf);
  MonotoneCheck out;
  out.lhs = integrate((2.0 * geom.lap_r / surf.s + 2.0 * geom.K) * geom.area_density,
                      surf.grid.hx, surf.grid.hy);
  out.rhs = integrate(2.0 * geom.grad_r2 / surf.s.square() * geom.area_density, surf.grid.hx,
                      surf.grid.hy);
  return out;
}

namespace {

double rel_err(double got, double want, double floor_scale) {
  return std::abs(got - want) / std::max(std::abs(want), floor_scale);
}

}  // namespace

std::vector<CheckResult> ambient_fd_suite(const SpaceParams& params,
                                          const std::vector<double>& radii, double h) {
  if (!(h > 0.0)) throw std::domain_error("ambient_fd_suite: h must be positive");
  std::vector<CheckResult> out = {
      {"christoffel", 0.0}, {"riemann", 0.0}, {"ricci", 0.0},
      {"scalar", 0.0},      {"hessian_r", 0.0},
  };

  for (const double r : radii) {
    if (!(r - 2.0 * h > params.rs)) {
      throw std::domain_error("ambient_fd_suite: radius too close to rs for the stencil");
    }

    // Gamma^a_bc = g^{ad}(d_b g_dc + d_c g_bd - d_d g_bc)/2; only the radial
    // derivative of the diagonal metric survives. 4th-order stencil in r.
    const auto d_metric = [&](int a) {
      const auto gp2 = metric_diag(params, r + 2.0 * h);
      const auto gp1 = metric_diag(params, r + h);
      const auto gm1 = metric_diag(params, r - h);
      const auto gm2 = metric_diag(params, r - 2.0 * h);
      return (-gp2[a] + 8.0 * gp1[a] - 8.0 * gm1[a] + gm2[a]) / (12.0 * h);
    };
    const auto g0 = metric_diag(params, r);
    const double dgrr = d_metric(0), dgxx = d_metric(1), dgyy = d_metric(2);
    const auto chr = christoffels(params, r);
    {
      const double fd_r_rr = 0.5 * dgrr / g0[0];
      const double fd_r_xx = -0.5 * dgxx / g0[0];
      const double fd_r_yy = -0.5 * dgyy / g0[0];
      const double fd_x_rx = 0.5 * dgxx / g0[1];
      const double fd_y_ry = 0.5 * dgyy / g0[2];
      double e = rel_err(fd_r_rr, chr.r_rr, 1.0);
      e = std::max(e, rel_err(fd_r_xx, chr.r_xx, 1.0));
      e = std::max(e, rel_err(fd_r_yy, chr.r_yy, 1.0));
      e = std::max(e, rel_err(fd_x_rx, chr.x_rx, 1.0));
      e = std::max(e, rel_err(fd_y_ry, chr.y_ry, 1.0));
      out[0].max_rel_err = std::max(out[0].max_rel_err, e);
    }

    // R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db
    //         - Gamma^a_de Gamma^e_cb, with closed-form Gamma sampled at
    // r +- h, +- 2h for the radial derivative.
    const auto gamma_at = [&](double rr) {
      const auto c = christoffels(params, rr);
      double G[3][3][3] = {};
      G[0][0][0] = c.r_rr;
      G[0][1][1] = c.r_xx;
      G[0][2][2] = c.r_yy;
      G[1][0][1] = G[1][1][0] = c.x_rx;
      G[2][0][2] = G[2][2][0] = c.y_ry;
      struct Wrap {
        double v[3][3][3];
      } w;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c2 = 0; c2 < 3; ++c2) w.v[a][b][c2] = G[a][b][c2];
      return w;
    };
    const auto Gm2 = gamma_at(r - 2.0 * h), Gm1 = gamma_at(r - h);
    const auto Gp1 = gamma_at(r + h), Gp2 = gamma_at(r + 2.0 * h);
    const auto G0w = gamma_at(r);
    double dG[3][3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          dG[a][b][c] = (-Gp2.v[a][b][c] + 8.0 * Gp1.v[a][b][c] - 8.0 * Gm1.v[a][b][c] +
                         Gm2.v[a][b][c]) /
                        (12.0 * h);

    double R_up[3][3][3][3];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          for (int d = 0; d < 3; ++d) {
            double v = 0.0;
            if (c == 0) v += dG[a][d][b];  // only d/dr is nonzero
            if (d == 0) v -= dG[a][c][b];
            for (int e = 0; e < 3; ++e) {
              v += G0w.v[a][c][e] * G0w.v[e][d][b] - G0w.v[a][d][e] * G0w.v[e][c][b];
            }
            R_up[a][b][c][d] = v;
          }
        }
      }
    }
    {
      double e = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c)
            for (int d = 0; d < 3; ++d) {
              const double fd_low = g0[a] * R_up[a][b][c][d];
              e = std::max(e, rel_err(fd_low, riemann_component(params, r, a, b, c, d), 1.0));
            }
      out[1].max_rel_err = std::max(out[1].max_rel_err, e);
    }
    {
      const auto ric = ricci(params, r);
      double fd[3][3] = {};
      for (int b = 0; b < 3; ++b)
        for (int d = 0; d < 3; ++d)
          for (int a = 0; a < 3; ++a) fd[b][d] += R_up[a][b][a][d];
      const double want[3] = {ric.rr, ric.xx, ric.yy};
      double e = 0.0;
      for (int b = 0; b < 3; ++b)
        for (int d = 0; d < 3; ++d)
          e = std::max(e, rel_err(fd[b][d], b == d ? want[b] : 0.0, 1.0));
      out[2].max_rel_err = std::max(out[2].max_rel_err, e);

      double trace = 0.0;
      for (int a = 0; a < 3; ++a) trace += fd[a][a] / g0[a];
      out[3].max_rel_err =
          std::max(out[3].max_rel_err, rel_err(trace, scalar_curvature(params, r), 1.0));
    }
    {
      const auto hess = hessian_r(params, r);
      double e = rel_err(-G0w.v[0][0][0], hess.rr, 1.0);
      e = std::max(e, rel_err(-G0w.v[0][1][1], hess.xx, 1.0));
      e = std::max(e, rel_err(-G0w.v[0][2][2], hess.yy, 1.0));
      const double trace = -G0w.v[0][0][0] / g0[0] - G0w.v[0][1][1] / g0[1] -
                           G0w.v[0][2][2] / g0[2];
      e = std::max(e, rel_err(trace, hess.laplacian, 1.0));
      out[4].max_rel_err = std::max(out[4].max_rel_err, e);
    }
  }
  return out;
}

}  // namespace adsm
