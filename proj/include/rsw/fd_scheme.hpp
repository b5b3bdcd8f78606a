#ifndef RSW_FD_SCHEME_HPP_
#define RSW_FD_SCHEME_HPP_

#include "rsw/boundary.hpp"
#include "rsw/core.hpp"
#include "rsw/field.hpp"

namespace rsw {

//! Staggered B-grid state: volume-fluxes U, V live on the (nx+1) x (ny+1)
//! nodes (i h, j h) at integer time levels, the surface elevation on the
//! nx x ny cell centres ((i+1/2) h, (j+1/2) h) half a step behind in time.
struct BGridState {
  Field2D eta;     // cell centres
  Field2D u_flux;  // nodes
  Field2D v_flux;  // nodes
  double time = 0.0;      // time level of U, V
  double eta_time = 0.0;  // time level of eta (== time when co-located)
};

//! The scheme's differencing and averaging operators on the half-index
//! lattice. Arguments are callables f(i, j) on (half-)integer positions;
//! each operator's result is shifted by half a step relative to f.
struct StencilOps {
  double h = 1.0;
  template <class F>
  auto delta_x(F f) const {
    return [f, ih = 1.0 / h](double i, double j) {
      return (f(i + 0.5, j) - f(i - 0.5, j)) * ih;
    };
  }
  template <class F>
  auto delta_y(F f) const {
    return [f, ih = 1.0 / h](double i, double j) {
      return (f(i, j + 0.5) - f(i, j - 0.5)) * ih;
    };
  }
  template <class F>
  auto mu_x(F f) const {
    return [f](double i, double j) { return 0.5 * (f(i + 0.5, j) + f(i - 0.5, j)); };
  }
  template <class F>
  auto mu_y(F f) const {
    return [f](double i, double j) { return 0.5 * (f(i, j + 0.5) + f(i, j - 0.5)); };
  }
};

enum class SmagorinskyForm {
  Off,
  Paper,     // nu = q l^2 sqrt(ux^2 + (ux+vy)^2 + vy^2), as printed
  Standard,  // nu = q l^2 sqrt((ux-vy)^2 + (uy+vx)^2), Smagorinsky's D_T/D_S
};

//! The classical B-grid finite-difference scheme with the optional
//! second-order-in-time correction and Smagorinsky eddy-viscosity damping.
class FdScheme {
 public:
  FdScheme(const Grid& grid, const PhysConsts& consts, const Bathymetry& bathy,
           const BoundarySet& bcs);

  int order = 2;  // 1: original scheme, 2: time-corrected variant
  SmagorinskyForm damping = SmagorinskyForm::Off;
  double q_smag = 0.1;  // diffusion parameter

  const Grid& grid() const { return grid_; }

  //! One full step: eta half-step, flux update (with optional correction),
  //! boundary rows, damping. The first call seeds the staggered eta level.
  BGridState step(const BGridState& state, double dt);

  //! Advance eta to the U,V time level (for output and error measurement).
  void finalize_eta(BGridState& state) const;

  //! Eddy viscosity at the flux nodes for the current damping form.
  Field2D smagorinsky_viscosity(const BGridState& state) const;

  //! mu_x mu_y co-location of the staggered fluxes to cell centres.
  FlowState collocate(const BGridState& state) const;

  //! Rest-consistent initial state from analytic fields sampled on the
  //! staggered layout.
  BGridState init_state(const std::function<double(double, double)>& eta0,
                        const std::function<double(double, double)>& u_flux0,
                        const std::function<double(double, double)>& v_flux0) const;

 private:
  void fill_eta_ext(const Field2D& eta, Field2D& ext) const;
  void fill_node_ext(const Field2D& u, const Field2D& v, Field2D& ue,
                     Field2D& ve) const;
  // advective + Coriolis part (Omega, Psi) and pressure part (Phi) at nodes
  void flux_terms(const Field2D& ue, const Field2D& ve, const Field2D& etae,
                  Field2D& omega, Field2D& psi, Field2D& phix, Field2D& phiy) const;
  void eta_divergence(const Field2D& u, const Field2D& v, Field2D& div) const;
  void apply_boundary(BGridState& state, double t) const;
  void apply_damping(BGridState& state, double dt) const;

  Grid grid_;
  PhysConsts consts_;
  Bathymetry bathy_;
  BoundarySet bcs_;
  double h_ = 0.0;
  Field2D z_node_;      // bottom elevation at flux nodes
  Field2D z_cell_ext_;  // at eta points, one ghost ring
};

//! Boundary rows of a B-grid state per the edge specs: reflective walls,
//! Flather radiation, no-slip/free-slip jet inflow.
void fd_boundary_apply(BGridState& state, const Bathymetry& bathy,
                       const PhysConsts& consts, const Grid& grid,
                       const BoundarySet& bcs, const Field2D& z_node, double t);

}  // namespace rsw

#endif  // RSW_FD_SCHEME_HPP_
