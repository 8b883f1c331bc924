#include "adsmelvin/surface_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace adsm {

using nlohmann::json;

GraphSurface load_surface(const std::string& path, int order, double margin) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open surface file: " + path);
  json j;
  in >> j;
  const double b = j.at("b").get<double>();
  const double Px = j.at("Px").get<double>();
  const int nx = j.at("nx").get<int>();
  const int ny = j.at("ny").get<int>();
  const auto& vals = j.at("s");
  if (static_cast<int>(vals.size()) != nx * ny) {
    throw std::runtime_error("surface file: s has " + std::to_string(vals.size()) +
                             " entries, expected nx*ny = " + std::to_string(nx * ny));
  }
  const auto params = SpaceParams::make(b, Px);
  const auto grid = GridSpec::make(nx, ny, params.Px, params.Py, order);
  Field s(nx, ny);
  for (int i = 0; i < nx; ++i) {
    for (int jj = 0; jj < ny; ++jj) {
      s(i, jj) = vals[i * ny + jj].get<double>();
    }
  }
  return make_surface(params, grid, std::move(s), margin);
}

void save_surface(const GraphSurface& surf, const std::string& path) {
  json j;
  j["b"] = surf.params.b;
  j["Px"] = surf.params.Px;
  j["nx"] = surf.grid.nx;
  j["ny"] = surf.grid.ny;
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(surf.grid.nx) * surf.grid.ny);
  for (int i = 0; i < surf.grid.nx; ++i) {
    for (int jj = 0; jj < surf.grid.ny; ++jj) {
      vals.push_back(surf.s(i, jj));
    }
  }
  j["s"] = vals;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write surface file: " + path);
  out << j.dump() << "\n";
}

void write_geometry_csv(std::ostream& os, const GraphSurface& surf, const GeometryField& geom) {
  os << "i,j,x,y,s,H,z2,K,area_density\n";
  char buf[256];
  for (int i = 0; i < surf.grid.nx; ++i) {
    for (int j = 0; j < surf.grid.ny; ++j) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, j,
                    i * surf.grid.hx, j * surf.grid.hy, surf.s(i, j), geom.H(i, j),
                    geom.z2(i, j), geom.K(i, j), geom.area_density(i, j));
      os << buf;
    }
  }
}

Field random_bandlimited(const SpaceParams& params, const GridSpec& grid, int bandlimit,
                         unsigned seed) {
  if (bandlimit < 1) throw std::domain_error("random_bandlimited: bandlimit must be >= 1");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp_dist(-1.0, 1.0);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * M_PI);

  const Field x = coord_x(grid);
  const Field y = coord_y(grid);
  Field f = Field::Zero(grid.nx, grid.ny);
  const double Px = params.Px, Py = params.Py;
  for (int kx = -bandlimit; kx <= bandlimit; ++kx) {
    for (int ky = 0; ky <= bandlimit; ++ky) {
      if (kx == 0 && ky == 0) continue;
      if (ky == 0 && kx < 0) continue;  // conjugate of (−kx, 0)
      const double a = amp_dist(rng);
      const double phase = phase_dist(rng);
      f += a * (2.0 * M_PI * (kx * x / Px + ky * y / Py) + phase).cos();
    }
  }
  f -= f.mean();
  const double m = f.abs().maxCoeff();
  if (m > 0.0) f /= m;
  return f;
}

Field generate_height_field(const SpaceParams& params, const GridSpec& grid,
                            const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
  }

  if (kind == "const") {
    if (args.size() != 1) throw std::domain_error("generator const:r0 takes one argument");
    return Field::Constant(grid.nx, grid.ny, args[0]);
  }
  if (kind == "cos") {
    if (args.size() != 5) throw std::domain_error("generator cos:r0,ax,kx,ay,ky takes five arguments");
    const double r0 = args[0], ax = args[1], kx = args[2], ay = args[3], ky = args[4];
    const Field x = coord_x(grid);
    const Field y = coord_y(grid);
    return r0 + ax * (2.0 * M_PI * kx * x / params.Px).cos() +
           ay * (2.0 * M_PI * ky * y / params.Py).cos();
  }
  if (kind == "random") {
    if (args.size() != 4) {
      throw std::domain_error("generator random:r0,amp,bandlimit,seed takes four arguments");
    }
    const double r0 = args[0], amp = args[1];
    const int bandlimit = static_cast<int>(args[2]);
    const unsigned seed = static_cast<unsigned>(args[3]);
    return r0 + amp * random_bandlimited(params, grid, bandlimit, seed);
  }
  throw std::domain_error("unknown generator '" + kind + "' (expected const, cos or random)");
}

}  // namespace adsm
