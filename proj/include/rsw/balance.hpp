#ifndef RSW_BALANCE_HPP_
#define RSW_BALANCE_HPP_

#include "rsw/core.hpp"
#include "rsw/field.hpp"

namespace rsw {

//! q = (v_x - u_y + f) / H with centred differences (periodic wrap where the
//! grid is periodic, second-order one-sided at open edges).
Field2D potential_vorticity(const FlowState& state, const Bathymetry& bathy,
                            const PhysConsts& consts, const Grid& grid);

//! Piecewise-linear double-jet potential vorticity profile on (-pi, pi)^2
//! with a sinusoidally displaced centreline.
struct DritschelParams {
  double q_bar = 0.0;  // background PV
  double q_amp = 0.0;  // slope Q; extremes are q_bar +- q_amp * a
  double a = 0.5;      // half-width of each jet flank
  int m = 2, n = 3;    // perturbation wavenumbers
  double c_m = -0.1, c_n = 0.1;
};
double dritschel_pv(double x, double y, const DritschelParams& p);

//! Geostrophic balance problem on a doubly periodic grid: find the depth
//! field H whose induced velocities carry the prescribed PV.
struct BalanceProblem {
  Field2D q;
  PhysConsts consts;
  Grid grid;
  double tol = 1e-10;  // relative residual
  int max_iter = 200000;
};

//! Solve the discrete linear balance (Helmholtz) equation with a matrix-free
//! MINRES iteration; returns H. Note the equation is used in the form
//! -lap H + (f q/g) H = f^2/g, the sign for which the PV of the balanced
//! state reproduces q (round-trip test is the arbiter).
Field2D solve_balance(const BalanceProblem& problem);

//! u = -(g/f) dH/dy, v = (g/f) dH/dx, centred periodic differences.
void velocities_from_balance(const Field2D& depth, const PhysConsts& consts,
                             const Grid& grid, Field2D& u, Field2D& v);

}  // namespace rsw

#endif  // RSW_BALANCE_HPP_
