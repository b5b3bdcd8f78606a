#include "rsw/fd_scheme.hpp"

#include <algorithm>
#include <cmath>

namespace rsw {

FdScheme::FdScheme(const Grid& grid, const PhysConsts& consts,
                   const Bathymetry& bathy, const BoundarySet& bcs)
    : grid_(grid), consts_(consts), bathy_(bathy), bcs_(bcs) {
  grid_.validate();
  bcs_.validate(grid_);
  if (std::abs(grid_.hx - grid_.hy) > 1e-12 * grid_.hx)
    throw ConfigError("fd scheme: requires hx == hy");
  h_ = grid_.hx;

  z_node_ = Field2D(grid_.nx + 1, grid_.ny + 1);
  if (bathy_.has_analytic()) {
    for (int j = 0; j <= grid_.ny; ++j)
      for (int i = 0; i <= grid_.nx; ++i)
        z_node_(i, j) = bathy_.at(grid_.xf(i), grid_.yf(j));
  } else {
    auto zc = [&](int i, int j) {
      i = std::min(std::max(i, 0), grid_.nx - 1);
      j = std::min(std::max(j, 0), grid_.ny - 1);
      return bathy_.z(i, j);
    };
    for (int j = 0; j <= grid_.ny; ++j)
      for (int i = 0; i <= grid_.nx; ++i)
        z_node_(i, j) = 0.25 * (zc(i - 1, j - 1) + zc(i, j - 1) + zc(i - 1, j) + zc(i, j));
  }

  // extended cell bathymetry ring, consistent with the eta ghost rule
  const int nx = grid_.nx, ny = grid_.ny;
  z_cell_ext_ = Field2D(nx + 2, ny + 2);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) z_cell_ext_(i + 1, j + 1) = bathy_.z(i, j);
  auto kind = [&](Edge e) { return bcs_[e].kind; };
  for (int j = 1; j <= ny; ++j) {
    z_cell_ext_(0, j) = kind(Edge::West) == BcKind::Periodic ? z_cell_ext_(nx, j)
                                                             : z_cell_ext_(1, j);
    z_cell_ext_(nx + 1, j) = kind(Edge::East) == BcKind::Periodic
                                 ? z_cell_ext_(1, j)
                                 : z_cell_ext_(nx, j);
  }
  for (int i = 0; i <= nx + 1; ++i) {
    z_cell_ext_(i, 0) = kind(Edge::South) == BcKind::Periodic ? z_cell_ext_(i, ny)
                                                              : z_cell_ext_(i, 1);
    z_cell_ext_(i, ny + 1) = kind(Edge::North) == BcKind::Periodic
                                 ? z_cell_ext_(i, 1)
                                 : z_cell_ext_(i, ny);
  }
}

// --- ghost rings -------------------------------------------------------------

void FdScheme::fill_eta_ext(const Field2D& eta, Field2D& ext) const {
  const int nx = grid_.nx, ny = grid_.ny;
  if (ext.nx() != nx + 2) ext = Field2D(nx + 2, ny + 2);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) ext(i + 1, j + 1) = eta(i, j);

  auto kind = [&](Edge e) { return bcs_[e].kind; };
  for (int j = 1; j <= ny; ++j) {
    ext(0, j) = kind(Edge::West) == BcKind::Periodic ? ext(nx, j) : ext(1, j);
    ext(nx + 1, j) = kind(Edge::East) == BcKind::Periodic ? ext(1, j) : ext(nx, j);
  }
  for (int i = 0; i <= nx + 1; ++i) {
    ext(i, 0) = kind(Edge::South) == BcKind::Periodic ? ext(i, ny) : ext(i, 1);
    ext(i, ny + 1) = kind(Edge::North) == BcKind::Periodic ? ext(i, 1) : ext(i, ny);
  }
}

void FdScheme::fill_node_ext(const Field2D& u, const Field2D& v, Field2D& ue,
                             Field2D& ve) const {
  const int nx = grid_.nx, ny = grid_.ny;
  if (ue.nx() != nx + 3) {
    ue = Field2D(nx + 3, ny + 3);
    ve = Field2D(nx + 3, ny + 3);
  }
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      ue(i + 1, j + 1) = u(i, j);
      ve(i + 1, j + 1) = v(i, j);
    }
  auto kind = [&](Edge e) { return bcs_[e].kind; };
  for (int j = 1; j <= ny + 1; ++j) {
    switch (kind(Edge::West)) {
      case BcKind::Periodic:  // node -1 == node nx-1
        ue(0, j) = ue(nx, j);
        ve(0, j) = ve(nx, j);
        break;
      case BcKind::Reflective:  // mirror across the wall node i=0
        ue(0, j) = -ue(2, j);
        ve(0, j) = ve(2, j);
        break;
      default:
        ue(0, j) = ue(1, j);
        ve(0, j) = ve(1, j);
        break;
    }
    switch (kind(Edge::East)) {
      case BcKind::Periodic:  // node nx+1 == node 1
        ue(nx + 2, j) = ue(2, j);
        ve(nx + 2, j) = ve(2, j);
        break;
      case BcKind::Reflective:
        ue(nx + 2, j) = -ue(nx, j);
        ve(nx + 2, j) = ve(nx, j);
        break;
      default:
        ue(nx + 2, j) = ue(nx + 1, j);
        ve(nx + 2, j) = ve(nx + 1, j);
        break;
    }
  }
  for (int i = 0; i <= nx + 2; ++i) {
    switch (kind(Edge::South)) {
      case BcKind::Periodic:
        ue(i, 0) = ue(i, ny);
        ve(i, 0) = ve(i, ny);
        break;
      case BcKind::Reflective:
        ue(i, 0) = ue(i, 2);
        ve(i, 0) = -ve(i, 2);
        break;
      default:
        ue(i, 0) = ue(i, 1);
        ve(i, 0) = ve(i, 1);
        break;
    }
    switch (kind(Edge::North)) {
      case BcKind::Periodic:
        ue(i, ny + 2) = ue(i, 2);
        ve(i, ny + 2) = ve(i, 2);
        break;
      case BcKind::Reflective:
        ue(i, ny + 2) = ue(i, ny);
        ve(i, ny + 2) = -ve(i, ny);
        break;
      default:
        ue(i, ny + 2) = ue(i, ny + 1);
        ve(i, ny + 2) = ve(i, ny + 1);
        break;
    }
  }
}

// --- spatial operators -------------------------------------------------------

void FdScheme::eta_divergence(const Field2D& u, const Field2D& v, Field2D& div) const {
  const int nx = grid_.nx, ny = grid_.ny;
  if (div.nx() != nx) div = Field2D(nx, ny);
  const double i2h = 1.0 / (2.0 * h_);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double dxu = (u(i + 1, j) + u(i + 1, j + 1) - u(i, j) - u(i, j + 1)) * i2h;
      const double dyv = (v(i, j + 1) + v(i + 1, j + 1) - v(i, j) - v(i + 1, j)) * i2h;
      div(i, j) = dxu + dyv;
    }
}

void FdScheme::flux_terms(const Field2D& ue, const Field2D& ve, const Field2D& etae,
                          Field2D& omega, Field2D& psi, Field2D& phix,
                          Field2D& phiy) const {
  const int nx = grid_.nx, ny = grid_.ny;
  if (omega.nx() != nx + 1) {
    omega = Field2D(nx + 1, ny + 1);
    psi = Field2D(nx + 1, ny + 1);
    phix = Field2D(nx + 1, ny + 1);
    phiy = Field2D(nx + 1, ny + 1);
  }
  const double g = consts_.g, f = consts_.f;
  const double ih = 1.0 / h_;

  // total depth at eta points (extended indexing: cell c -> c+1)
  // H must stay positive wherever a mu-average of it divides a flux product.
  auto hc = [&](int ic, int jc) {
    return etae(ic + 1, jc + 1) - z_cell_ext_(ic + 1, jc + 1);
  };

  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const int I = i + 1, J = j + 1;  // node in extended arrays
      // depths around node (i,j); cell (i,j) sits north-east of the node
      const double h_mm = hc(i - 1, j - 1), h_pm = hc(i, j - 1);
      const double h_mp = hc(i - 1, j), h_pp = hc(i, j);

      if (!(h_mm > 0.0) || !(h_pm > 0.0) || !(h_mp > 0.0) || !(h_pp > 0.0))
        throw PositivityError(i, j, std::min(std::min(h_mm, h_pm), std::min(h_mp, h_pp)),
                              "fd flux update");

      // delta_x[(mu_x U)^2 / mu_y H]
      const double tx_p = 0.25 * (ue(I + 1, J) + ue(I, J)) * (ue(I + 1, J) + ue(I, J)) /
                          (0.5 * (h_pm + h_pp));
      const double tx_m = 0.25 * (ue(I, J) + ue(I - 1, J)) * (ue(I, J) + ue(I - 1, J)) /
                          (0.5 * (h_mm + h_mp));
      // delta_y[(mu_y U)(mu_y V) / mu_x H]
      const double sy_p = 0.25 * (ue(I, J + 1) + ue(I, J)) * (ve(I, J + 1) + ve(I, J)) /
                          (0.5 * (h_mp + h_pp));
      const double sy_m = 0.25 * (ue(I, J) + ue(I, J - 1)) * (ve(I, J) + ve(I, J - 1)) /
                          (0.5 * (h_mm + h_pm));
      omega(i, j) = (tx_p - tx_m) * ih + (sy_p - sy_m) * ih - f * ve(I, J);

      // delta_x[(mu_x U)(mu_x V) / mu_y H]
      const double ux_p = 0.25 * (ue(I + 1, J) + ue(I, J)) * (ve(I + 1, J) + ve(I, J)) /
                          (0.5 * (h_pm + h_pp));
      const double ux_m = 0.25 * (ue(I, J) + ue(I - 1, J)) * (ve(I, J) + ve(I - 1, J)) /
                          (0.5 * (h_mm + h_mp));
      // delta_y[(mu_y V)^2 / mu_x H]
      const double vy_p = 0.25 * (ve(I, J + 1) + ve(I, J)) * (ve(I, J + 1) + ve(I, J)) /
                          (0.5 * (h_mp + h_pp));
      const double vy_m = 0.25 * (ve(I, J) + ve(I, J - 1)) * (ve(I, J) + ve(I, J - 1)) /
                          (0.5 * (h_mm + h_pm));
      psi(i, j) = (ux_p - ux_m) * ih + (vy_p - vy_m) * ih + f * ue(I, J);

      const double h4 = 0.25 * (h_mm + h_pm + h_mp + h_pp);
      const double detax =
          (0.5 * (etae(I, J - 1) + etae(I, J)) - 0.5 * (etae(I - 1, J - 1) + etae(I - 1, J))) * ih;
      const double detay =
          (0.5 * (etae(I - 1, J) + etae(I, J)) - 0.5 * (etae(I - 1, J - 1) + etae(I, J - 1))) * ih;
      phix(i, j) = g * h4 * detax;
      phiy(i, j) = g * h4 * detay;
    }
  }
}

// --- stepping ----------------------------------------------------------------

BGridState FdScheme::step(const BGridState& state, double dt) {
  const int nx = grid_.nx, ny = grid_.ny;
  BGridState out = state;

  // eta advances to time + dt/2 (seeds the staggering on the first call)
  Field2D div;
  eta_divergence(state.u_flux, state.v_flux, div);
  const double d_eta_t = (state.time + 0.5 * dt) - state.eta_time;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) out.eta(i, j) -= d_eta_t * div(i, j);
  out.eta_time = state.time + 0.5 * dt;

  Field2D etae, ue, ve;
  fill_eta_ext(out.eta, etae);
  fill_node_ext(state.u_flux, state.v_flux, ue, ve);

  Field2D omega, psi, phix, phiy;
  flux_terms(ue, ve, etae, omega, psi, phix, phiy);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      out.u_flux(i, j) = state.u_flux(i, j) - dt * (omega(i, j) + phix(i, j));
      out.v_flux(i, j) = state.v_flux(i, j) - dt * (psi(i, j) + phiy(i, j));
    }

  if (order == 2) {
    Field2D ue2, ve2, omega2, psi2, phix2, phiy2;
    fill_node_ext(out.u_flux, out.v_flux, ue2, ve2);
    flux_terms(ue2, ve2, etae, omega2, psi2, phix2, phiy2);
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) {
        out.u_flux(i, j) += 0.5 * dt * (omega(i, j) - omega2(i, j));
        out.v_flux(i, j) += 0.5 * dt * (psi(i, j) - psi2(i, j));
      }
  }

  out.time = state.time + dt;
  apply_boundary(out, out.time);
  if (damping != SmagorinskyForm::Off && q_smag > 0.0) apply_damping(out, dt);
  return out;
}

void FdScheme::finalize_eta(BGridState& state) const {
  if (state.eta_time == state.time) return;
  Field2D div;
  eta_divergence(state.u_flux, state.v_flux, div);
  const double d = state.time - state.eta_time;
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i) state.eta(i, j) -= d * div(i, j);
  state.eta_time = state.time;
}

void FdScheme::apply_boundary(BGridState& state, double t) const {
  fd_boundary_apply(state, bathy_, consts_, grid_, bcs_, z_node_, t);
}

Field2D FdScheme::smagorinsky_viscosity(const BGridState& state) const {
  const int nx = grid_.nx, ny = grid_.ny;
  Field2D nu(nx + 1, ny + 1, 0.0);
  if (damping == SmagorinskyForm::Off || q_smag <= 0.0) return nu;

  // depth-mean velocities at nodes
  Field2D etae;
  fill_eta_ext(state.eta, etae);
  Field2D ubar(nx + 1, ny + 1), vbar(nx + 1, ny + 1);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const double h4 = 0.25 * (etae(i, j) + etae(i + 1, j) + etae(i, j + 1) +
                                etae(i + 1, j + 1)) -
                        z_node_(i, j);
      ubar(i, j) = state.u_flux(i, j) / h4;
      vbar(i, j) = state.v_flux(i, j) / h4;
    }

  const double i2h = 1.0 / (2.0 * h_);
  const double ql2 = q_smag * h_ * h_;
  for (int j = 1; j < ny; ++j)
    for (int i = 1; i < nx; ++i) {
      const double ux = (ubar(i + 1, j) - ubar(i - 1, j)) * i2h;
      const double vy = (vbar(i, j + 1) - vbar(i, j - 1)) * i2h;
      double s2;
      if (damping == SmagorinskyForm::Paper) {
        s2 = ux * ux + (ux + vy) * (ux + vy) + vy * vy;
      } else {
        const double uy = (ubar(i, j + 1) - ubar(i, j - 1)) * i2h;
        const double vx = (vbar(i + 1, j) - vbar(i - 1, j)) * i2h;
        s2 = (ux - vy) * (ux - vy) + (uy + vx) * (uy + vx);
      }
      nu(i, j) = ql2 * std::sqrt(s2);
    }
  return nu;
}

void FdScheme::apply_damping(BGridState& state, double dt) const {
  const int nx = grid_.nx, ny = grid_.ny;
  const Field2D nu = smagorinsky_viscosity(state);
  const Field2D u0 = state.u_flux, v0 = state.v_flux;
  const double ih2 = 1.0 / (h_ * h_);
  for (int j = 1; j < ny; ++j)
    for (int i = 1; i < nx; ++i) {
      const double lap_u = (u0(i + 1, j) + u0(i - 1, j) + u0(i, j + 1) +
                            u0(i, j - 1) - 4.0 * u0(i, j)) * ih2;
      const double lap_v = (v0(i + 1, j) + v0(i - 1, j) + v0(i, j + 1) +
                            v0(i, j - 1) - 4.0 * v0(i, j)) * ih2;
      state.u_flux(i, j) += dt * nu(i, j) * lap_u;
      state.v_flux(i, j) += dt * nu(i, j) * lap_v;
    }
}

FlowState FdScheme::collocate(const BGridState& state) const {
  const int nx = grid_.nx, ny = grid_.ny;
  FlowState s;
  s.layout = Layout::CellCentred;
  s.time = state.time;
  s.eta = state.eta;
  s.u_flux = Field2D(nx, ny);
  s.v_flux = Field2D(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      s.u_flux(i, j) = 0.25 * (state.u_flux(i, j) + state.u_flux(i + 1, j) +
                               state.u_flux(i, j + 1) + state.u_flux(i + 1, j + 1));
      s.v_flux(i, j) = 0.25 * (state.v_flux(i, j) + state.v_flux(i + 1, j) +
                               state.v_flux(i, j + 1) + state.v_flux(i + 1, j + 1));
    }
  return s;
}

BGridState FdScheme::init_state(
    const std::function<double(double, double)>& eta0,
    const std::function<double(double, double)>& u_flux0,
    const std::function<double(double, double)>& v_flux0) const {
  BGridState s;
  s.eta = Field2D(grid_.nx, grid_.ny);
  s.u_flux = Field2D(grid_.nx + 1, grid_.ny + 1);
  s.v_flux = Field2D(grid_.nx + 1, grid_.ny + 1);
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i) s.eta(i, j) = eta0(grid_.xc(i), grid_.yc(j));
  for (int j = 0; j <= grid_.ny; ++j)
    for (int i = 0; i <= grid_.nx; ++i) {
      s.u_flux(i, j) = u_flux0(grid_.xf(i), grid_.yf(j));
      s.v_flux(i, j) = v_flux0(grid_.xf(i), grid_.yf(j));
    }
  s.time = 0.0;
  s.eta_time = 0.0;
  return s;
}

// --- boundary rows -----------------------------------------------------------

void fd_boundary_apply(BGridState& state, const Bathymetry& bathy,
                       const PhysConsts& consts, const Grid& grid,
                       const BoundarySet& bcs, const Field2D& z_node, double t) {
  const int nx = grid.nx, ny = grid.ny;
  const Field2D& eta = state.eta;

  // nearest-interior eta at a boundary node (constant extrapolation of the
  // adjacent eta row/column, mu-averaged along the edge)
  auto eta_node = [&](int i, int j) {
    const int jc = std::min(std::max(j == 0 ? 0 : j - 1, 0), ny - 1);
    const int ic = std::min(std::max(i == 0 ? 0 : i - 1, 0), nx - 1);
    if (j == 0 || j == ny) {  // south/north edge: average along x
      const int il = std::min(std::max(i - 1, 0), nx - 1);
      const int ir = std::min(i, nx - 1);
      return 0.5 * (eta(il, jc) + eta(ir, jc));
    }
    const int jl = std::min(std::max(j - 1, 0), ny - 1);
    const int jr = std::min(j, ny - 1);
    return 0.5 * (eta(ic, jl) + eta(ic, jr));
  };

  auto apply_edge = [&](Edge edge) {
    const BoundarySpec& spec = bcs[edge];
    const bool y_edge = edge == Edge::South || edge == Edge::North;
    const int n_along = y_edge ? nx : ny;
    const double out_sign = (edge == Edge::North || edge == Edge::East) ? 1.0 : -1.0;

    for (int k = 0; k <= n_along; ++k) {
      const int i = y_edge ? k : (edge == Edge::West ? 0 : nx);
      const int j = y_edge ? (edge == Edge::South ? 0 : ny) : k;
      switch (spec.kind) {
        case BcKind::Periodic:
          break;  // handled below by the wrap copy
        case BcKind::Reflective:
          // zero normal flux; the tangential component keeps the value the
          // one-sided (mirror-ghost) update produced
          if (y_edge)
            state.v_flux(i, j) = 0.0;
          else
            state.u_flux(i, j) = 0.0;
          break;
        case BcKind::Absorbing: {
          const double e = eta_node(i, j);
          const double hh = e - z_node(i, j);
          const double w = e * std::sqrt(consts.g * hh);  // outward normal flux
          if (y_edge) {
            state.v_flux(i, j) = out_sign * w;
            state.u_flux(i, j) = 0.0;
          } else {
            state.u_flux(i, j) = out_sign * w;
            state.v_flux(i, j) = 0.0;
          }
          break;
        }
        case BcKind::InflowNoslip:
        case BcKind::InflowFreeslip: {
          const double tang = y_edge ? grid.xf(i) : grid.yf(j);
          const double e = eta_node(i, j);
          const double hh = e - z_node(i, j);
          if (spec.jet->patch_half_width > 0.0 &&
              std::abs(tang - spec.jet->l_b) > spec.jet->patch_half_width) {
            // outside the jet patch: Flather radiation
            const double w = e * std::sqrt(consts.g * hh);
            if (y_edge) {
              state.v_flux(i, j) = out_sign * w;
              state.u_flux(i, j) = 0.0;
            } else {
              state.u_flux(i, j) = out_sign * w;
              state.v_flux(i, j) = 0.0;
            }
            break;
          }
          const double vj = jet_velocity(*spec.jet, tang, t);
          const double w = -out_sign * hh * vj;  // inflow is inward
          if (y_edge) {
            state.v_flux(i, j) = w;
            if (spec.kind == BcKind::InflowNoslip)
              state.u_flux(i, j) = 0.0;
            else  // tangential volume-flux continuous
              state.u_flux(i, j) =
                  state.u_flux(i, edge == Edge::South ? j + 1 : j - 1);
          } else {
            state.u_flux(i, j) = w;
            if (spec.kind == BcKind::InflowNoslip)
              state.v_flux(i, j) = 0.0;
            else
              state.v_flux(i, j) =
                  state.v_flux(edge == Edge::West ? i + 1 : i - 1, j);
          }
          break;
        }
        default:
          throw ConfigError("fd boundary: unsupported edge kind for the B-grid scheme");
      }
    }
  };

  apply_edge(Edge::South);
  apply_edge(Edge::North);
  apply_edge(Edge::West);
  apply_edge(Edge::East);

  // periodic wrap of the duplicated node row/column
  if (grid.periodic_x)
    for (int j = 0; j <= ny; ++j) {
      state.u_flux(nx, j) = state.u_flux(0, j);
      state.v_flux(nx, j) = state.v_flux(0, j);
    }
  if (grid.periodic_y)
    for (int i = 0; i <= nx; ++i) {
      state.u_flux(i, ny) = state.u_flux(i, 0);
      state.v_flux(i, ny) = state.v_flux(i, 0);
    }
}

}  // namespace rsw
