#ifndef RSW_CORE_HPP_
#define RSW_CORE_HPP_

#include <array>
#include <functional>

#include "rsw/errors.hpp"
#include "rsw/field.hpp"

namespace rsw {

//! Uniform Cartesian mesh. Cell (i,j) covers [x0+i*hx, x0+(i+1)*hx] x
//! [y0+j*hy, y0+(j+1)*hy]; its centre is at (x0+(i+1/2)*hx, y0+(j+1/2)*hy).
struct Grid {
  int nx = 0;
  int ny = 0;
  double hx = 0.0;
  double hy = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  bool periodic_x = false;
  bool periodic_y = false;

  double xc(int i) const { return x0 + (i + 0.5) * hx; }
  double yc(int j) const { return y0 + (j + 0.5) * hy; }
  double xf(int i) const { return x0 + i * hx; }  // face/node coordinate
  double yf(int j) const { return y0 + j * hy; }
  double lx() const { return nx * hx; }
  double ly() const { return ny * hy; }

  void validate() const;
};

struct PhysConsts {
  double g = 9.81;  // gravity, m/s^2
  double f = 0.0;   // Coriolis parameter, 1/s
};

enum class Layout { CellCentred, BGridStaggered };

//! (eta, U, V) on a grid. Cell averages for the finite-volume scheme,
//! staggered point values for the finite-difference scheme.
struct FlowState {
  Field2D eta;     // surface elevation, m
  Field2D u_flux;  // x volume-flux U = H u, m^2/s
  Field2D v_flux;  // y volume-flux V = H v, m^2/s
  Layout layout = Layout::CellCentred;
  double time = 0.0;
};

//! Bottom elevation (negative below datum). Keeps the analytic definition,
//! when there is one, next to the sampled field so quadrature-point values
//! need no interpolation.
struct Bathymetry {
  Field2D z;                                        // sampled at eta points
  std::function<double(double, double)> analytic;   // optional z(x,y)

  bool has_analytic() const { return static_cast<bool>(analytic); }
  double at(double x, double y) const { return analytic(x, y); }

  static Bathymetry from_analytic(const Grid& grid,
                                  std::function<double(double, double)> fn);
  static Bathymetry flat(const Grid& grid, double z0);
};

//! H = eta - z, checked positive everywhere.
Field2D total_depth(const FlowState& state, const Bathymetry& bathy);

//! Flux of the conservative system in one coordinate direction, evaluated
//! from point values q = (H, U, V).
enum class Axis { X, Y };
std::array<double, 3> physical_flux(const std::array<double, 3>& q,
                                    const PhysConsts& consts, Axis axis);

//! Largest |u| + sqrt(gH) and |v| + sqrt(gH) over all cells.
struct WaveSpeeds {
  double sx = 0.0;
  double sy = 0.0;
};
WaveSpeeds max_wave_speed(const FlowState& state, const Bathymetry& bathy,
                          const PhysConsts& consts);

//! dt = cfl * min(hx/sx, hy/sy); falls back to dt_max when both speeds vanish.
double cfl_timestep(const FlowState& state, const Bathymetry& bathy,
                    const PhysConsts& consts, const Grid& grid, double cfl,
                    double dt_max = 1.0);

}  // namespace rsw

#endif  // RSW_CORE_HPP_
