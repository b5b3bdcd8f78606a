#include "rsw/core.hpp"

#include <algorithm>
#include <cmath>

namespace rsw {

void Grid::validate() const {
  if (nx < 3 || ny < 3) throw ConfigError("grid: need nx >= 3 and ny >= 3");
  if (!(hx > 0.0) || !(hy > 0.0)) throw ConfigError("grid: need hx > 0 and hy > 0");
}

Bathymetry Bathymetry::from_analytic(const Grid& grid,
                                     std::function<double(double, double)> fn) {
  Bathymetry b;
  b.z = Field2D(grid.nx, grid.ny);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) b.z(i, j) = fn(grid.xc(i), grid.yc(j));
  b.analytic = std::move(fn);
  return b;
}

Bathymetry Bathymetry::flat(const Grid& grid, double z0) {
  return from_analytic(grid, [z0](double, double) { return z0; });
}

Field2D total_depth(const FlowState& state, const Bathymetry& bathy) {
  const Field2D& eta = state.eta;
  if (!eta.same_shape(bathy.z))
    throw ConfigError("total_depth: eta and z shapes differ");
  Field2D h(eta.nx(), eta.ny());
  for (int j = 0; j < eta.ny(); ++j) {
    for (int i = 0; i < eta.nx(); ++i) {
      const double d = eta(i, j) - bathy.z(i, j);
      if (!(d > 0.0)) throw PositivityError(i, j, d, "total_depth");
      h(i, j) = d;
    }
  }
  return h;
}

std::array<double, 3> physical_flux(const std::array<double, 3>& q,
                                    const PhysConsts& consts, Axis axis) {
  const double h = q[0], u_fl = q[1], v_fl = q[2];
  const double p = 0.5 * consts.g * h * h;
  if (axis == Axis::X) return {u_fl, u_fl * u_fl / h + p, u_fl * v_fl / h};
  return {v_fl, u_fl * v_fl / h, v_fl * v_fl / h + p};
}

WaveSpeeds max_wave_speed(const FlowState& state, const Bathymetry& bathy,
                          const PhysConsts& consts) {
  WaveSpeeds s;
  for (int j = 0; j < state.eta.ny(); ++j) {
    for (int i = 0; i < state.eta.nx(); ++i) {
      const double h = state.eta(i, j) - bathy.z(i, j);
      if (!(h > 0.0)) throw PositivityError(i, j, h, "max_wave_speed");
      const double c = std::sqrt(consts.g * h);
      s.sx = std::max(s.sx, std::abs(state.u_flux(i, j)) / h + c);
      s.sy = std::max(s.sy, std::abs(state.v_flux(i, j)) / h + c);
    }
  }
  return s;
}

double cfl_timestep(const FlowState& state, const Bathymetry& bathy,
                    const PhysConsts& consts, const Grid& grid, double cfl,
                    double dt_max) {
  if (!(cfl > 0.0) || cfl > 1.0) throw ConfigError("cfl_timestep: cfl must be in (0, 1]");
  const WaveSpeeds s = max_wave_speed(state, bathy, consts);
  if (s.sx == 0.0 && s.sy == 0.0) return dt_max;  // static flow, no wave scale
  double dt = 1e300;
  if (s.sx > 0.0) dt = std::min(dt, cfl * grid.hx / s.sx);
  if (s.sy > 0.0) dt = std::min(dt, cfl * grid.hy / s.sy);
  return dt;
}

}  // namespace rsw
