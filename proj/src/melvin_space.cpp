#include "adsmelvin/melvin_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adsm {

ProfileEval eval_profile(double b, double r) {
  if (!(r > 0.0)) {
    throw std::domain_error("eval_profile: r must be positive, got r=" + std::to_string(r));
  }
  const double r3 = r * r * r;
  const double r4 = r3 * r;
  const double r5 = r4 * r;
  const double r6 = r5 * r;
  ProfileEval e;
  e.F = 1.0 - 1.0 / r3 - b / r4;
  e.dF = 3.0 / r4 + 4.0 * b / r5;
  e.d2F = -12.0 / r5 - 20.0 * b / r6;
  return e;
}

double solve_soliton_radius(double b) {
  if (!(b >= 0.0)) {
    throw std::domain_error("solve_soliton_radius: b must be nonnegative, got b=" + std::to_string(b));
  }
  // p(r) = r^4 - r - b is increasing on [1, inf) with p(1) = -b <= 0 and
  // p(2 + b) > 0; bracketed Newton stays inside [lo, hi].
  double lo = 1.0;
  double hi = 2.0 + b;
  double r = std::max(1.0, std::pow(1.0 + b, 0.25));
  for (int it = 0; it < 200; ++it) {
    const double p = ((r * r * r * r) - r) - b;
    const double dp = 4.0 * r * r * r - 1.0;
    if (p > 0.0) {
      hi = r;
    } else {
      lo = r;
    }
    double next = r - p / dp;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - r) < 1e-15 * r) {
      r = next;
      break;
    }
    r = next;
  }
  return r;
}

double period_y(double b) {
  const double rs = solve_soliton_radius(b);
  const double dF = eval_profile(b, rs).dF;
  return 4.0 * M_PI / (rs * rs * dF);
}

SpaceParams SpaceParams::make(double b, double Px) {
  if (!(Px > 0.0)) {
    throw std::domain_error("SpaceParams: Px must be positive");
  }
  SpaceParams p;
  p.b = b;
  p.Px = Px;
  p.rs = solve_soliton_radius(b);
  p.Py = period_y(b);
  return p;
}

namespace {
void require_outside_soliton(const SpaceParams& p, double r, const char* who) {
  if (!(r > p.rs)) {
    throw std::domain_error(std::string(who) + ": metric degenerates at r <= rs (r=" +
                            std::to_string(r) + ", rs=" + std::to_string(p.rs) + ")");
  }
}
}  // namespace

std::array<double, 3> metric_diag(const SpaceParams& p, double r) {
  require_outside_soliton(p, r, "metric_diag");
  const double F = eval_profile(p.b, r).F;
  return {1.0 / (r * r * F), r * r, r * r * F};
}

ChristoffelTable christoffels(const SpaceParams& p, double r) {
  require_outside_soliton(p, r, "christoffels");
  const auto e = eval_profile(p.b, r);
  const double F = e.F;
  const double dF = e.dF;
  ChristoffelTable c;
  c.r_rr = -1.0 / r - 0.5 * dF / F;
  c.r_xx = -r * r * r * F;
  c.r_yy = -r * r * r * F * F - 0.5 * r * r * r * r * F * dF;
  c.x_rx = 1.0 / r;
  c.y_ry = 1.0 / r + 0.5 * dF / F;
  return c;
}

RicciDiag ricci(const SpaceParams& p, double r) {
  require_outside_soliton(p, r, "ricci");
  const auto e = eval_profile(p.b, r);
  const double F = e.F;
  const double dF = e.dF;
  const double d2F = e.d2F;
  RicciDiag R;
  R.rr = -2.0 / (r * r) - 2.5 * dF / (r * F) - 0.5 * d2F / F;
  R.xx = -2.0 * r * r * F - r * r * r * dF;
  R.yy = -2.0 * r * r * F * F - 2.5 * r * r * r * F * dF - 0.5 * r * r * r * r * F * d2F;
  const double r3 = r * r * r;
  const double r4 = r3 * r;
  const double lam_ry = -2.0 + 0.5 / r3 + 2.0 * p.b / r4;
  const double lam_x = -2.0 - 1.0 / r3 - 2.0 * p.b / r4;
  R.eigenvalues = {lam_ry, lam_x, lam_ry};
  return R;
}

double scalar_curvature(const SpaceParams& p, double r) {
  require_outside_soliton(p, r, "scalar_curvature");
  return -6.0 + 2.0 * p.b / (r * r * r * r);
}

HessianR hessian_r(const SpaceParams& p, double r) {
  require_outside_soliton(p, r, "hessian_r");
  const auto e = eval_profile(p.b, r);
  const double F = e.F;
  const double dF = e.dF;
  HessianR H;
  H.rr = 1.0 / r + 0.5 * dF / F;
  H.xx = r * r * r * F;
  H.yy = r * r * r * F * F + 0.5 * r * r * r * r * F * dF;
  H.laplacian = 3.0 * r * F + r * r * dF;
  return H;
}

std::array<double, 3> static_tensor_eigenvalues(const SpaceParams& p, double r) {
  const auto hess = hessian_r(p, r);
  const auto ric = ricci(p, r);
  const auto g = metric_diag(p, r);
  // S_ab = Hess_ab - (Lap r) g_ab - r Ric_ab, relative eigenvalues S_aa/g_aa.
  const double lam_r = hess.rr / g[0] - hess.laplacian - r * ric.eigenvalues[0];
  const double lam_x = hess.xx / g[1] - hess.laplacian - r * ric.eigenvalues[1];
  const double lam_y = hess.yy / g[2] - hess.laplacian - r * ric.eigenvalues[2];
  return {lam_r, lam_x, lam_y};
}

RiemannDiag riemann(const SpaceParams& p, double r) {
  require_outside_soliton(p, r, "riemann");
  const auto e = eval_profile(p.b, r);
  const double F = e.F;
  const double dF = e.dF;
  const double d2F = e.d2F;
  RiemannDiag R;
  R.rxrx = -1.0 - 0.5 * r * dF / F;
  R.ryry = -F - 2.0 * r * dF - 0.5 * r * r * d2F;
  R.yxyx = -r * r * r * r * F * F - 0.5 * r * r * r * r * r * F * dF;
  return R;
}

double riemann_component(const SpaceParams& p, double r, int a, int b, int c, int d) {
  if (a == b || c == d) return 0.0;
  // The component vanishes unless {a,b} = {c,d} as index pairs.
  const int lo1 = std::min(a, b), hi1 = std::max(a, b);
  const int lo2 = std::min(c, d), hi2 = std::max(c, d);
  if (lo1 != lo2 || hi1 != hi2) return 0.0;
  const auto R = riemann(p, r);
  double k = 0.0;
  if (lo1 == 0 && hi1 == 1) k = R.rxrx;
  else if (lo1 == 0 && hi1 == 2) k = R.ryry;
  else k = R.yxyx;
  return (a == c) ? k : -k;
}

}  // namespace adsm
