// Command-line front end: build or load surfaces, evaluate the functional,
// run the flow, sweep perturbations and run the oracle suites.
//
// Exit codes: 0 success, 1 validation error, 2 numerical breakdown,
// 3 property violation.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adsmelvin/flow.hpp"
#include "adsmelvin/surface_io.hpp"
#include "adsmelvin/variational.hpp"
#include "adsmelvin/verify.hpp"

using namespace adsm;
using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Options {
  double b = 0.0;
  double px = 1.0;
  int nx = 64, ny = 64;
  int order = 4;
  double margin = 1e-6;
  unsigned seed = 0;
  std::string out;
  std::string format = "csv";
  std::string gen;
  std::string input;

  // subcommand-specific
  double t_end = 30.0;
  double dt_init = 1e-2;
  int sample_every = 10;
  double r0 = 2.0;
  double eps = 0.0;
  std::string phi = "cos:1,0";
  std::string axis = "y";
  int n1d = 512;
  std::string suite = "all";
};

// All output is assembled in memory and written in one shot at the end, so a
// failing computation never leaves a partial output file behind.
void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(opt.out);
  if (!os) throw std::runtime_error("cannot open output file: " + opt.out);
  os << text;
}

GraphSurface build_surface(const Options& opt) {
  if (!opt.input.empty()) return load_surface(opt.input, opt.order, opt.margin);
  if (opt.gen.empty()) {
    throw std::domain_error("need a surface: pass --input FILE or --gen SPEC");
  }
  const auto p = SpaceParams::make(opt.b, opt.px);
  const auto g = GridSpec::make(opt.nx, opt.ny, p.Px, p.Py, opt.order);
  return make_surface(p, g, generate_height_field(p, g, opt.gen), opt.margin);
}

int cmd_space(const Options& opt) {
  if (opt.b < 0.0) throw std::domain_error("space: b must satisfy b >= 0");
  const auto p = SpaceParams::make(opt.b, opt.px);
  const std::vector<double> factors = {1.1, 1.5, 2.0, 4.0};

  std::ostringstream os;
  if (opt.format == "json") {
    json j;
    j["b"] = p.b;
    j["Px"] = p.Px;
    j["rs"] = p.rs;
    j["Py"] = p.Py;
    json samples = json::array();
    for (double f : factors) {
      const double r = f * p.rs;
      const auto e = eval_profile(p.b, r);
      const auto ric = ricci(p, r);
      samples.push_back({{"r", r},
                         {"F", e.F},
                         {"dF", e.dF},
                         {"scalar_curvature", scalar_curvature(p, r)},
                         {"ricci_eigenvalues", ric.eigenvalues},
                         {"laplacian_r", hessian_r(p, r).laplacian}});
    }
    j["samples"] = samples;
    os << j.dump(2) << "\n";
  } else {
    os << "quantity,value\n";
    os << "b," << num(p.b) << "\nPx," << num(p.Px) << "\nrs," << num(p.rs) << "\nPy,"
       << num(p.Py) << "\n\n";
    os << "r,F,dF,scalar_curvature,ricci_eig_r,ricci_eig_x,ricci_eig_y,laplacian_r\n";
    for (double f : factors) {
      const double r = f * p.rs;
      const auto e = eval_profile(p.b, r);
      const auto ric = ricci(p, r);
      os << num(r) << ',' << num(e.F) << ',' << num(e.dF) << ','
         << num(scalar_curvature(p, r)) << ',' << num(ric.eigenvalues[0]) << ','
         << num(ric.eigenvalues[1]) << ',' << num(ric.eigenvalues[2]) << ','
         << num(hessian_r(p, r).laplacian) << "\n";
    }
  }
  emit(opt, os.str());
  return 0;
}

int cmd_q(const Options& opt) {
  const auto surf = build_surface(opt);
  const auto q = q_functional(surf);
  const auto& p = surf.params;
  const double tol = 1e-9 * p.Px * p.Py;
  std::string verdict;
  int code = 0;
  if (std::abs(q.gap) <= tol) {
    verdict = "equality (coordinate torus)";
  } else if (q.gap > 0.0) {
    verdict = "satisfied";
  } else {
    verdict = "violated";
    code = 3;
  }

  std::ostringstream os;
  if (opt.format == "json") {
    os << json{{"Q", q.Q}, {"gap", q.gap}, {"torus_value", q.Q - q.gap}, {"verdict", verdict}}
              .dump(2)
       << "\n";
  } else {
    os << "Q,gap,torus_value,verdict\n"
       << num(q.Q) << ',' << num(q.gap) << ',' << num(q.Q - q.gap) << ',' << verdict << "\n";
  }
  emit(opt, os.str());
  return code;
}

int cmd_flow(const Options& opt) {
  const auto surf = build_surface(opt);
  FlowConfig cfg;
  cfg.t_end = opt.t_end;
  cfg.dt_init = opt.dt_init;
  cfg.sample_every = opt.sample_every;
  cfg.validate();
  const auto d = flow_run(surf, cfg);

  std::ostringstream os;
  if (opt.format == "json") {
    json j;
    j["c0"] = d.c0;
    j["t"] = d.t;
    j["Q"] = d.Q;
    j["gap"] = d.gap;
    j["dQdt"] = d.dQdt;
    j["z2max_minus_1"] = d.z2max_minus_1;
    j["Hminus2_pos_max"] = d.Hminus2_pos_max;
    j["c0_drift"] = d.c0_drift;
    j["smin_minus_rs"] = d.smin_minus_rs;
    os << j.dump(2) << "\n";
  } else {
    os << "t,Q,gap,dQdt,z2max_minus_1,Hminus2_pos_max,c0_drift,smin_minus_rs\n";
    for (size_t k = 0; k < d.t.size(); ++k) {
      os << num(d.t[k]) << ',' << num(d.Q[k]) << ',' << num(d.gap[k]) << ',' << num(d.dQdt[k])
         << ',' << num(d.z2max_minus_1[k]) << ',' << num(d.Hminus2_pos_max[k]) << ','
         << num(d.c0_drift[k]) << ',' << num(d.smin_minus_rs[k]) << "\n";
    }
  }
  emit(opt, os.str());
  return 0;
}

int cmd_perturb(const Options& opt) {
  const auto p = SpaceParams::make(opt.b, opt.px);
  const auto g = GridSpec::make(opt.nx, opt.ny, p.Px, p.Py, opt.order);

  // --phi cos:kx,ky  or  --phi random:bandlimit (seeded by --seed)
  Field phi;
  const auto colon = opt.phi.find(':');
  const std::string kind = opt.phi.substr(0, colon);
  if (kind == "cos") {
    double kx = 1.0, ky = 0.0;
    if (colon != std::string::npos &&
        std::sscanf(opt.phi.c_str() + colon + 1, "%lf,%lf", &kx, &ky) != 2) {
      throw std::domain_error("perturb: --phi cos:kx,ky takes two numbers");
    }
    const Field x = coord_x(g), y = coord_y(g);
    phi = (2.0 * M_PI * (kx * x / p.Px + ky * y / p.Py)).cos();
  } else if (kind == "random") {
    int band = 3;
    if (colon != std::string::npos &&
        std::sscanf(opt.phi.c_str() + colon + 1, "%d", &band) != 1) {
      throw std::domain_error("perturb: --phi random:bandlimit takes one integer");
    }
    phi = random_bandlimited(p, g, band, opt.seed);
  } else {
    throw std::domain_error("perturb: unknown --phi '" + kind + "' (expected cos or random)");
  }

  PerturbationSpec spec;
  spec.params = p;
  spec.grid = g;
  spec.r0 = opt.r0;
  spec.phi = std::move(phi);
  spec.eps0 = opt.eps;
  spec.margin = opt.margin;
  const auto res = perturbation_sweep(spec);

  std::ostringstream os;
  if (opt.format == "json") {
    os << json{{"Q0", res.Q0},
               {"dQ", res.dQ},
               {"d2Q_fd", res.d2Q_fd},
               {"d2Q_form", res.d2Q_form},
               {"eps", spec.eps_base()}}
              .dump(2)
       << "\n";
  } else {
    os << "Q0,dQ,d2Q_fd,d2Q_form,eps\n"
       << num(res.Q0) << ',' << num(res.dQ) << ',' << num(res.d2Q_fd) << ','
       << num(res.d2Q_form) << ',' << num(spec.eps_base()) << "\n";
  }
  emit(opt, os.str());
  return 0;
}

int cmd_symmetric(const Options& opt) {
  const auto p = SpaceParams::make(opt.b, opt.px);
  AxisProfile prof;
  prof.axis = opt.axis == "x" ? Axis::XSymmetric : Axis::YSymmetric;
  prof.params = p;
  prof.order = opt.order;
  prof.margin = opt.margin;

  // 1D generators: const:r0 | cos:r0,a,k | random:r0,amp,bandlimit
  const int n = opt.n1d;
  const auto colon = opt.gen.find(':');
  const std::string kind = opt.gen.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(opt.gen.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
  }
  if (kind == "const" && args.size() == 1) {
    prof.s = Field1D::Constant(n, args[0]);
  } else if (kind == "cos" && args.size() == 3) {
    prof.s.resize(n);
    for (int i = 0; i < n; ++i) {
      prof.s(i) = args[0] + args[1] * std::cos(2.0 * M_PI * args[2] * i / n);
    }
  } else if (kind == "random" && args.size() == 3) {
    std::mt19937 rng(opt.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Field1D raw = Field1D::Zero(n);
    for (int k = 1; k <= static_cast<int>(args[2]); ++k) {
      const double a = unit(rng), c = unit(rng);
      for (int i = 0; i < n; ++i) {
        const double th = 2.0 * M_PI * k * i / n;
        raw(i) += a * std::cos(th) + c * std::sin(th);
      }
    }
    const double m = raw.abs().maxCoeff();
    prof.s = args[0] + (m > 0.0 ? args[1] / m : 0.0) * raw;
  } else {
    throw std::domain_error(
        "symmetric: --gen must be const:r0, cos:r0,a,k or random:r0,amp,bandlimit");
  }

  const double direct = q_gap_axis_direct(prof);
  const double ibp = q_gap_axis_ibp(prof);
  const double residual = integrand_identity_residual(prof);

  std::ostringstream os;
  if (opt.format == "json") {
    os << json{{"axis", opt.axis},
               {"gap_direct", direct},
               {"gap_ibp", ibp},
               {"identity_residual", residual}}
              .dump(2)
       << "\n";
  } else {
    os << "axis,gap_direct,gap_ibp,identity_residual\n"
       << opt.axis << ',' << num(direct) << ',' << num(ibp) << ',' << num(residual) << "\n";
  }
  emit(opt, os.str());
  return 0;
}

int cmd_verify(const Options& opt) {
  const auto p = SpaceParams::make(opt.b, opt.px);
  json checks = json::array();
  bool all_pass = true;
  const auto add = [&](const std::string& name, double value, double threshold, bool pass) {
    checks.push_back({{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", pass}});
    all_pass = all_pass && pass;
  };
  const bool want_all = opt.suite == "all";

  if (want_all || opt.suite == "ambient") {
    for (const auto& r :
         ambient_fd_suite(p, {1.05 * p.rs, 1.5 * p.rs, 2.0 * p.rs, 5.0 * p.rs})) {
      add("ambient/" + r.name, r.max_rel_err, 1e-6, r.max_rel_err < 1e-6);
    }
  }

  if (want_all || opt.suite == "surface") {
    // Gauss-equation and Laplacian-relation residuals must drop >= 8x when
    // the grid doubles (order >= 3 with the order-4 stencils).
    double gauss_prev = 0.0, lap_prev = 0.0;
    for (int k = 0; k < 2; ++k) {
      const int n = 48 << k;
      const auto g = GridSpec::make(n, n, p.Px, p.Py, 4);
      const Field x = coord_x(g), y = coord_y(g);
      const Field s =
          opt.r0 + 0.15 * (2.0 * M_PI * x / p.Px).cos() * (2.0 * M_PI * y / p.Py).cos();
      const auto surf = make_surface(p, g, s, opt.margin);
      const auto geom = geometry(surf);
      const Field Rbar = -6.0 + 2.0 * p.b * surf.s.pow(-4);
      const double gauss =
          (2.0 * geom.K - (Rbar - 2.0 * geom.ric_nn + geom.H.square() - geom.A2))
              .abs()
              .maxCoeff();
      const double lap = (geom.lap_r - laplacian_intrinsic(surf, geom, surf.s)).abs().maxCoeff();
      if (k == 0) {
        gauss_prev = gauss;
        lap_prev = lap;
      } else {
        add("surface/gauss_refinement", gauss_prev / gauss, 8.0, gauss_prev / gauss >= 8.0);
        add("surface/laplacian_refinement", lap_prev / lap, 8.0, lap_prev / lap >= 8.0);
      }
    }
  }

  if (want_all || opt.suite == "evolution") {
    const std::vector<std::pair<std::string, SpeedFn>> speeds = {
        {"inverse_radius", [](double r, double, double) { return 1.0 / r; }},
        {"generic",
         [&p](double r, double x, double y) {
           return 0.3 + 0.1 * std::sin(2.0 * M_PI * x / p.Px) * std::cos(2.0 * M_PI * y / p.Py) /
                            (1.0 + 0.2 * (r - 2.0));
         }}};
    for (const auto& [name, rho] : speeds) {
      double coarse = 0.0, fine = 0.0;
      for (int k = 0; k < 2; ++k) {
        const int n = 32 << k;
        const double dt = 2e-4 / (1 << k);
        const auto g = GridSpec::make(n, n, p.Px, p.Py, 6);
        const Field x = coord_x(g), y = coord_y(g);
        const Field s =
            opt.r0 + 0.1 * (2.0 * M_PI * x / p.Px).cos() * (2.0 * M_PI * y / p.Py).sin();
        const auto traj = evolve_patch(patch_from_height(p, n, n, s, 6), rho, dt, 2);
        const auto res = check_evolution_identities(traj, rho, dt);
        const double m = std::max(
            {res.metric, res.area, res.normal, res.second_form, res.mean_curvature});
        (k == 0 ? coarse : fine) = m;
      }
      const double order = std::log2(coarse / fine);
      add("evolution/" + name + "_order", order, 1.8, order >= 1.8);
    }
  }

  if (want_all || opt.suite == "monotone") {
    const auto g = GridSpec::make(96, 96, p.Px, p.Py, 6);
    const Field x = coord_x(g), y = coord_y(g);
    const Field s =
        opt.r0 + 0.2 * (2.0 * M_PI * x / p.Px).cos() * (2.0 * M_PI * y / p.Py).sin();
    const auto mc = monotonicity_integrand(make_surface(p, g, s, opt.margin));
    const double rel = std::abs(mc.lhs - mc.rhs) / std::max(1e-300, std::abs(mc.rhs));
    add("monotone/divergence_identity", rel, 1e-3, rel <= 1e-3);
    add("monotone/rhs_nonnegative", mc.rhs, 0.0, mc.rhs >= 0.0);
  }

  if (checks.empty()) {
    throw std::domain_error(
        "verify: --suite must be ambient, surface, evolution, monotone or all");
  }

  json report;
  report["suite"] = opt.suite;
  report["checks"] = checks;
  report["pass"] = all_pass;
  emit(opt, report.dump(2) + "\n");
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of the AdS-Melvin solid torus: functional, flow and oracles"};
  app.require_subcommand(1);
  // global options may appear after the subcommand name
  app.fallthrough();

  Options opt;
  app.add_option("--b", opt.b, "profile parameter b (>= 0)");
  app.add_option("--px", opt.px, "period of the x-circle");
  app.add_option("--nx", opt.nx, "grid points in x");
  app.add_option("--ny", opt.ny, "grid points in y");
  app.add_option("--order", opt.order, "stencil order (2, 4 or 6)");
  app.add_option("--margin", opt.margin, "required height clearance above rs");
  app.add_option("--seed", opt.seed, "seed for the random generators without an explicit one");
  app.add_option("--out", opt.out, "write output to this file instead of stdout");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sp_space = app.add_subcommand("space", "soliton radius, periods and curvature table");
  auto* sp_q = app.add_subcommand("q", "evaluate the functional Q and its gap on a surface");
  sp_q->add_option("--input", opt.input, "surface JSON file");
  sp_q->add_option("--gen", opt.gen, "surface generator (const:..., cos:..., random:...)");
  auto* sp_flow = app.add_subcommand("flow", "run the weighted normal flow, emit diagnostics");
  sp_flow->add_option("--input", opt.input, "surface JSON file");
  sp_flow->add_option("--gen", opt.gen, "surface generator");
  sp_flow->add_option("--t-end", opt.t_end, "final flow time");
  sp_flow->add_option("--dt-init", opt.dt_init, "initial time step");
  sp_flow->add_option("--sample-every", opt.sample_every, "diagnostics cadence in steps");
  auto* sp_pert = app.add_subcommand("perturb", "perturbation sweep about a coordinate torus");
  sp_pert->add_option("--r0", opt.r0, "torus radius");
  sp_pert->add_option("--eps", opt.eps, "base sweep step (default 1e-2 (r0 - rs))");
  sp_pert->add_option("--phi", opt.phi, "direction: cos:kx,ky or random:bandlimit");
  auto* sp_sym = app.add_subcommand("symmetric", "1D reductions of the gap integral");
  sp_sym->add_option("--axis", opt.axis, "symmetry axis")->check(CLI::IsMember({"x", "y"}));
  sp_sym->add_option("--n", opt.n1d, "profile resolution");
  sp_sym->add_option("--gen", opt.gen, "1D generator: const:r0, cos:r0,a,k, random:r0,amp,band");
  auto* sp_ver = app.add_subcommand("verify", "oracle suites, JSON report");
  sp_ver->add_option("--suite", opt.suite, "ambient, surface, evolution, monotone or all");
  sp_ver->add_option("--r0", opt.r0, "base radius of the test surfaces");

  try {
    app.parse(argc, argv);
    if (sp_space->parsed()) return cmd_space(opt);
    if (sp_q->parsed()) return cmd_q(opt);
    if (sp_flow->parsed()) return cmd_flow(opt);
    if (sp_pert->parsed()) return cmd_perturb(opt);
    if (sp_sym->parsed()) return cmd_symmetric(opt);
    if (sp_ver->parsed()) return cmd_verify(opt);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return 3;
  } catch (const FlowBreakdown& e) {
    std::cerr << "numerical breakdown at t = " << e.t << ": " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "numerical breakdown: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
