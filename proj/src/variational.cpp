#include "adsmelvin/variational.hpp"

#include <cmath>
#include <string>

namespace adsm {

void AxisProfile::check_heights() const {
  const double floor_val = params.rs + margin;
  for (int i = 0; i < s.size(); ++i) {
    if (!(s(i) > floor_val)) {
      throw std::domain_error("AxisProfile: height " + std::to_string(s(i)) + " at index " +
                              std::to_string(i) + " is below rs + margin");
    }
  }
}

namespace {

struct ProfileFields {
  Field1D F, dF, ds, d2s;
  double h;
};

ProfileFields profile_fields(const AxisProfile& p) {
  p.check_heights();
  ProfileFields f;
  f.h = p.spacing();
  const Field1D s3 = p.s.cube();
  const Field1D s4 = s3 * p.s;
  f.F = 1.0 - s3.inverse() - p.params.b * s4.inverse();
  f.dF = 3.0 * s4.inverse() + 4.0 * p.params.b * (s4 * p.s).inverse();
  f.ds = diff_1d(p.s, f.h, p.order, 1);
  f.d2s = diff_1d(p.s, f.h, p.order, 2);
  return f;
}

// Gap integrand H s^4 F N - 2 s^3 + 1/2 from the 1D-specialized mean
// curvature formula.
Field1D direct_integrand(const AxisProfile& p, const ProfileFields& f) {
  const Field1D& s = p.s;
  const Field1D s2 = s.square(), s3 = s.cube(), s4 = s3 * s;
  const Field1D Fi = f.F.inverse();
  Field1D N2, numer;
  if (p.axis == Axis::YSymmetric) {
    N2 = Fi / s2 * (1.0 + Fi * f.ds.square() / s4);
    numer = 2.0 * s3 * f.F + 0.5 * s4 * f.dF - f.d2s +
            Fi / s * (4.0 * f.F + s * f.dF) * f.ds.square();
  } else {
    N2 = Fi / s2 * (1.0 + Fi.square() * f.ds.square() / s4);
    numer = 2.0 * s3 * f.F + 0.5 * s4 * f.dF - Fi * f.d2s +
            (8.0 * f.F + 3.0 * s * f.dF) * Fi.square() / (2.0 * s) * f.ds.square();
  }
  const Field1D N = N2.sqrt();
  const Field1D H = numer / (s4 * s2 * f.F.square() * N.cube());
  return H * s4 * f.F * N - 2.0 * s3 + 0.5;
}

}  // namespace

double q_gap_axis_direct(const AxisProfile& profile) {
  const auto f = profile_fields(profile);
  const Field1D integrand = direct_integrand(profile, f);
  const double other = profile.axis == Axis::YSymmetric ? profile.params.Py : profile.params.Px;
  return other * integrate_1d(integrand, f.h);
}

double q_gap_axis_ibp(const AxisProfile& profile) {
  const auto f = profile_fields(profile);
  const Field1D& s = profile.s;
  const Field1D s2 = s.square();
  Field1D integrand;
  if (profile.axis == Axis::YSymmetric) {
    // lambda' = s^-2 F^-1/2 s',  integrand = lambda' s^2 sqrt(F) d/ds(s^2 sqrt(F)) arctan(lambda')
    const Field1D sqrtF = f.F.sqrt();
    const Field1D lam = f.ds / (s2 * sqrtF);
    const Field1D dds = 2.0 * s * sqrtF + 0.5 * s2 * f.dF / sqrtF;  // d/ds (s^2 sqrt F)
    integrand = lam * s2 * sqrtF * dds * lam.atan();
  } else {
    // lambda' = s^-2 F^-1 s',  integrand = 2 s^3 F lambda' arctan(lambda')
    const Field1D lam = f.ds / (s2 * f.F);
    integrand = 2.0 * s.cube() * f.F * lam * lam.atan();
  }
  const double floor_val = integrand.minCoeff();
  if (floor_val < -1e-13 * std::max(1.0, integrand.abs().maxCoeff())) {
    throw PropertyViolation("q_gap_axis_ibp: integrand went negative (" +
                            std::to_string(floor_val) + ")");
  }
  const double other = profile.axis == Axis::YSymmetric ? profile.params.Py : profile.params.Px;
  return other * integrate_1d(integrand, f.h);
}

double integrand_identity_residual(const AxisProfile& profile) {
  const auto f = profile_fields(profile);
  const Field1D lhs = direct_integrand(profile, f);
  const Field1D& s = profile.s;
  const Field1D s2 = s.square();
  Field1D rhs;
  if (profile.axis == Axis::YSymmetric) {
    const Field1D lam = f.ds / (s2 * f.F.sqrt());
    const Field1D lam2 = diff_1d(lam, f.h, profile.order, 1);
    rhs = -s2 * f.F.sqrt() * lam2 / (1.0 + lam.square());
  } else {
    const Field1D lam = f.ds / (s2 * f.F);
    const Field1D lam2 = diff_1d(lam, f.h, profile.order, 1);
    rhs = -s2 * lam2 / (1.0 + lam.square());
  }
  return (lhs - rhs).abs().maxCoeff();
}

GraphSurface lift_profile(const AxisProfile& profile, int n_other) {
  const int n = static_cast<int>(profile.s.size());
  GridSpec grid;
  Field s2d;
  if (profile.axis == Axis::YSymmetric) {
    grid = GridSpec::make(n, n_other, profile.params.Px, profile.params.Py, profile.order);
    s2d.resize(n, n_other);
    for (int i = 0; i < n; ++i) s2d.row(i).setConstant(profile.s(i));
  } else {
    grid = GridSpec::make(n_other, n, profile.params.Px, profile.params.Py, profile.order);
    s2d.resize(n_other, n);
    for (int j = 0; j < n; ++j) s2d.col(j).setConstant(profile.s(j));
  }
  return make_surface(profile.params, grid, std::move(s2d), profile.margin);
}

void PerturbationSpec::validate() const {
  if (!(r0 > params.rs + margin)) {
    throw std::domain_error("PerturbationSpec: r0 must exceed rs + margin");
  }
  if (phi.rows() != grid.nx || phi.cols() != grid.ny) {
    throw std::domain_error("PerturbationSpec: phi shape does not match grid");
  }
  const double range = phi.maxCoeff() - phi.minCoeff();
  if (eps_base() * range >= r0 - params.rs - margin) {
    throw std::domain_error("PerturbationSpec: eps sweep would dip below rs + margin");
  }
}

double second_variation_form(const PerturbationSpec& spec) {
  spec.validate();
  const auto e = eval_profile(spec.params.b, spec.r0);
  const double F0 = e.F, dF0 = e.dF, r0 = spec.r0;
  const double cx = (4.0 * F0 + r0 * dF0) / (2.0 * r0 * F0);
  const double cy = 2.0 * F0 / (r0 * F0 * F0);
  const Field px = diff_x(spec.phi, spec.grid.hx, spec.grid.order, 1);
  const Field py = diff_y(spec.phi, spec.grid.hy, spec.grid.order, 1);
  return 2.0 * integrate(cx * px.square() + cy * py.square(), spec.grid.hx, spec.grid.hy);
}

SweepResult perturbation_sweep(const PerturbationSpec& spec) {
  spec.validate();
  const double h = spec.eps_base();
  const auto q_at = [&](double eps) {
    const Field s = spec.r0 + eps * spec.phi;
    return q_functional(make_surface(spec.params, spec.grid, s, spec.margin)).Q;
  };
  const double q0 = q_at(0.0);
  const double qp = q_at(h), qm = q_at(-h);
  const double qp2 = q_at(0.5 * h), qm2 = q_at(-0.5 * h);

  // Richardson refinement of centered first/second differences.
  const double d1_h = (qp - qm) / (2.0 * h);
  const double d1_h2 = (qp2 - qm2) / h;
  const double d2_h = (qp - 2.0 * q0 + qm) / (h * h);
  const double d2_h2 = (qp2 - 2.0 * q0 + qm2) / (0.25 * h * h);

  SweepResult res;
  res.Q0 = q0;
  res.dQ = (4.0 * d1_h2 - d1_h) / 3.0;
  res.d2Q_fd = (4.0 * d2_h2 - d2_h) / 3.0;
  res.d2Q_form = second_variation_form(spec);

  if (!(std::abs(res.dQ) <= 1e-7 * std::abs(res.Q0))) {
    throw PropertyViolation("perturbation_sweep: first variation " + std::to_string(res.dQ) +
                            " exceeds 1e-7 |Q| = " + std::to_string(1e-7 * std::abs(res.Q0)));
  }
  const double phi_range = spec.phi.maxCoeff() - spec.phi.minCoeff();
  if (phi_range > 0.0) {
    const double rel = std::abs(res.d2Q_fd - res.d2Q_form) / std::max(1e-300, res.d2Q_form);
    if (!(rel <= 0.01)) {
      throw PropertyViolation("perturbation_sweep: d2Q mismatch, fd=" +
                              std::to_string(res.d2Q_fd) + " form=" +
                              std::to_string(res.d2Q_form));
    }
  }
  return res;
}

}  // namespace adsm
