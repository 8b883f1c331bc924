#pragma once

#include <iosfwd>
#include <string>

#include "adsmelvin/graph_surface.hpp"

// JSON surface files, CSV geometry dumps and the built-in surface generators.
//
// Surface format:   { "b": real, "Px": real, "nx": int, "ny": int,
//                     "s": row-major array of nx*ny reals }
// Profile format:   { "b": real, "Px": real, "axis": "x"|"y", "n": int,
//                     "s": array of n reals }

namespace adsm {

GraphSurface load_surface(const std::string& path, int order = 4, double margin = 1e-6);
void save_surface(const GraphSurface& surf, const std::string& path);

// Geometry dump: one row per grid point with header
//   i,j,x,y,s,H,z2,K,area_density
void write_geometry_csv(std::ostream& os, const GraphSurface& surf, const GeometryField& geom);

// Built-in generators (used by the CLI --gen option and by tests):
//   const:r0
//   cos:r0,ax,kx,ay,ky       s = r0 + ax cos(2 pi kx x/Px) + ay cos(2 pi ky y/Py)
//   random:r0,amp,bandlimit,seed   band-limited trigonometric polynomial with
//                                  max|s - r0| = amp, deterministic in seed
Field generate_height_field(const SpaceParams& params, const GridSpec& grid,
                            const std::string& spec);

// Band-limited random field with zero mean and unit max-abs, modes |kx|,|ky| <= bandlimit.
Field random_bandlimited(const SpaceParams& params, const GridSpec& grid, int bandlimit,
                         unsigned seed);

}  // namespace adsm
