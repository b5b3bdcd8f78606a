#ifndef RSW_FV_SCHEME_HPP_
#define RSW_FV_SCHEME_HPP_

#include <array>
#include <functional>
#include <vector>

#include "rsw/boundary.hpp"
#include "rsw/core.hpp"
#include "rsw/field.hpp"
#include "rsw/weno.hpp"

namespace rsw {

//! Cell averages of the semi-discrete right-hand side.
struct SemiDiscreteRhs {
  Field2D d_eta;
  Field2D d_u;
  Field2D d_v;
};

//! Fourth-order well-balanced source rule on one cell line: point values of
//! eta and z at the left end, centre and right end. Returns the approximation
//! of the integral of -g H z_x over the line (flux units). The weights use
//! the total depth d = eta - z; see the lake-at-rest identity in the tests.
double well_balanced_source_1d(double eta_l, double eta_c, double eta_r,
                               double z_l, double z_c, double z_r, double g);

//! Classical four-stage Runge-Kutta step of d(state)/dt = rhs(state, t).
//! The rhs callback fills the three derivative fields.
using RhsFn = std::function<void(const FlowState&, double t, Field2D&, Field2D&, Field2D&)>;
FlowState rk4_step(const FlowState& state, double dt, const RhsFn& rhs);

// ---------------------------------------------------------------------------

//! High-order finite-volume scheme: dimension-by-dimension WENO5
//! reconstruction, Roe fluxes with 2-point Gauss face quadrature, the
//! well-balanced geometric source rule and the Coriolis source, advanced
//! with RK4. Holds the static bathymetry quadrature tables and scratch
//! space; one instance per (grid, bathymetry, boundary) configuration.
class FvScheme {
 public:
  FvScheme(const Grid& grid, const PhysConsts& consts, const Bathymetry& bathy,
           const BoundarySet& bcs);

  const Grid& grid() const { return grid_; }
  const PhysConsts& consts() const { return consts_; }
  const Bathymetry& bathymetry() const { return bathy_; }

  //! Semi-discrete right-hand side at boundary-condition time t.
  SemiDiscreteRhs rhs(const FlowState& state, double t);

  //! One RK4 step; advances state.time by dt.
  FlowState step(const FlowState& state, double dt);

  //! In-cell point values reconstructed for one cell (diagnostic access,
  //! used by the tests; the stepping loop keeps everything in bulk arrays).
  struct ReconstructedCell {
    // face values at the two transverse Gauss points, one-sided from this cell
    std::array<double, 2> west, east, south, north;   // per Gauss point
    std::array<double, 2> centre_x;  // (x_c, y_alpha) line centres
    std::array<double, 2> centre_y;  // (x_alpha, y_c)
  };
  ReconstructedCell reconstruct_cell(const FlowState& state, int i, int j,
                                     int component);

  int threads = 1;  // row-parallelism; 1 = deterministic reference mode

 private:
  struct VarRecon;  // per-variable reconstruction workspace

  void fill_ghosts(const FlowState& state);
  void fill_scalar_ghosts(Field2D& ext, const Field2D& interior, bool flip_u,
                          bool flip_v) const;
  void reconstruct_all();
  void compute_fluxes(double t);
  void apply_boundary_fluxes(double t);
  void accumulate(SemiDiscreteRhs& out) const;

  std::array<double, 3> interior_trace(Edge edge, int k, int a) const;
  std::array<double, 3> boundary_flux_point(const BoundarySpec& spec, Edge edge,
                                            const std::array<double, 3>& q_int,
                                            double eta_int, double tang_coord,
                                            double t, const double* balanced_eta,
                                            int point_index);

  Grid grid_;
  PhysConsts consts_;
  Bathymetry bathy_;
  BoundarySet bcs_;

  static constexpr int kNg = 3;  // ghost layers
  weno::Target tgt_left_, tgt_centre_, tgt_right_, tgt_gauss_[2];

  // extended cell-average arrays, (nx + 2 kNg) x (ny + 2 kNg)
  Field2D ext_[3];

  // stage A: per variable, line averages at in-cell x offsets (XL, XC, XR)
  // and y offsets (YB, YC, YT); XC/YC kept for eta only.
  Field2D xl_[3], xr_[3], yb_[3], yt_[3], xc_, yc_;

  // stage B: one-sided face values at the two transverse Gauss points
  // gl/gr: this cell's west/east face; gb/gt: south/north face.
  Field2D gl_[3][2], gr_[3][2], gb_[3][2], gt_[3][2];
  Field2D cx_[2], cy_[2];  // eta at (x_c, y_alpha) and (x_alpha, y_c)

  // static bathymetry at quadrature points
  Field2D zxf_[2];  // x-face Gauss points, (nx+1) x ny
  Field2D zyf_[2];  // y-face Gauss points, nx x (ny+1)
  Field2D zxc_[2];  // (x_c, y_alpha)
  Field2D zyc_[2];  // (x_alpha, y_c)

  // assembled face fluxes
  Field2D fx_[3];  // (nx+1) x ny
  Field2D gy_[3];  // nx x (ny+1)

  // balanced-inflow previous boundary trace (per edge): cell-average
  // tangential velocity and its sample time
  struct EdgeTrace {
    bool valid = false;
    double time = 0.0;
    std::vector<double> u;
  };
  std::array<EdgeTrace, 4> prev_trace_;
  void record_traces(const FlowState& state);

  void build_bathymetry_tables();
};

}  // namespace rsw

#endif  // RSW_FV_SCHEME_HPP_
