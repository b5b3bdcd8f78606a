#include "rsw/fv_scheme.hpp"

#include <cmath>

#include "rsw/parallel.hpp"
#include "rsw/roe.hpp"

namespace rsw {

namespace {
constexpr double kGaussOffset = 0.28867513459481287;  // 1/(2 sqrt(3))
}

double well_balanced_source_1d(double eta_l, double eta_c, double eta_r,
                               double z_l, double z_c, double z_r, double g) {
  const double d_l = eta_l - z_l;
  const double d_c = eta_c - z_c;
  const double d_r = eta_r - z_r;
  return (g / 6.0) * (4.0 * (d_l + d_c) * (z_l - z_c) +
                      4.0 * (d_c + d_r) * (z_c - z_r) -
                      (d_l + d_r) * (z_l - z_r));
}

FlowState rk4_step(const FlowState& state, double dt, const RhsFn& rhs) {
  const int nx = state.eta.nx(), ny = state.eta.ny();
  auto axpy = [&](const FlowState& base, double a, const SemiDiscreteRhs& k) {
    FlowState s = base;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        s.eta(i, j) += a * k.d_eta(i, j);
        s.u_flux(i, j) += a * k.d_u(i, j);
        s.v_flux(i, j) += a * k.d_v(i, j);
      }
    }
    return s;
  };
  auto eval = [&](const FlowState& s, double t) {
    SemiDiscreteRhs k{Field2D(nx, ny), Field2D(nx, ny), Field2D(nx, ny)};
    rhs(s, t, k.d_eta, k.d_u, k.d_v);
    return k;
  };

  const double t = state.time;
  const SemiDiscreteRhs k1 = eval(state, t);
  const SemiDiscreteRhs k2 = eval(axpy(state, 0.5 * dt, k1), t + 0.5 * dt);
  const SemiDiscreteRhs k3 = eval(axpy(state, 0.5 * dt, k2), t + 0.5 * dt);
  const SemiDiscreteRhs k4 = eval(axpy(state, dt, k3), t + dt);

  FlowState out = state;
  const double w = dt / 6.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      out.eta(i, j) += w * (k1.d_eta(i, j) + 2.0 * k2.d_eta(i, j) +
                            2.0 * k3.d_eta(i, j) + k4.d_eta(i, j));
      out.u_flux(i, j) += w * (k1.d_u(i, j) + 2.0 * k2.d_u(i, j) +
                               2.0 * k3.d_u(i, j) + k4.d_u(i, j));
      out.v_flux(i, j) += w * (k1.d_v(i, j) + 2.0 * k2.d_v(i, j) +
                               2.0 * k3.d_v(i, j) + k4.d_v(i, j));
    }
  }
  out.time = t + dt;
  return out;
}

// ---------------------------------------------------------------------------

FvScheme::FvScheme(const Grid& grid, const PhysConsts& consts,
                   const Bathymetry& bathy, const BoundarySet& bcs)
    : grid_(grid), consts_(consts), bathy_(bathy), bcs_(bcs) {
  grid_.validate();
  bcs_.validate(grid_);

  tgt_left_ = weno::make_target(-0.5);
  tgt_centre_ = weno::make_target(0.0);
  tgt_right_ = weno::make_target(0.5);
  tgt_gauss_[0] = weno::make_target(-kGaussOffset);
  tgt_gauss_[1] = weno::make_target(kGaussOffset);

  const int ex = grid_.nx + 2 * kNg, ey = grid_.ny + 2 * kNg;
  for (int v = 0; v < 3; ++v) {
    ext_[v] = Field2D(ex, ey);
    xl_[v] = Field2D(ex, ey);
    xr_[v] = Field2D(ex, ey);
    yb_[v] = Field2D(ex, ey);
    yt_[v] = Field2D(ex, ey);
    for (int a = 0; a < 2; ++a) {
      gl_[v][a] = Field2D(ex, ey);
      gr_[v][a] = Field2D(ex, ey);
      gb_[v][a] = Field2D(ex, ey);
      gt_[v][a] = Field2D(ex, ey);
    }
  }
  xc_ = Field2D(ex, ey);
  yc_ = Field2D(ex, ey);
  for (int a = 0; a < 2; ++a) {
    cx_[a] = Field2D(ex, ey);
    cy_[a] = Field2D(ex, ey);
    fx_[a] = Field2D(grid_.nx + 1, grid_.ny);
    gy_[a] = Field2D(grid_.nx, grid_.ny + 1);
  }
  fx_[2] = Field2D(grid_.nx + 1, grid_.ny);
  gy_[2] = Field2D(grid_.nx, grid_.ny + 1);

  build_bathymetry_tables();
}

// --- ghost filling ----------------------------------------------------------

void FvScheme::fill_scalar_ghosts(Field2D& ext, const Field2D& interior,
                                  bool flip_u, bool flip_v) const {
  const int nx = grid_.nx, ny = grid_.ny;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) ext(i + kNg, j + kNg) = interior(i, j);

  auto kind = [&](Edge e) { return bcs_[e].kind; };

  // west/east bands over interior rows
  for (int j = 0; j < ny; ++j) {
    const int J = j + kNg;
    for (int k = 0; k < kNg; ++k) {
      switch (kind(Edge::West)) {
        case BcKind::Periodic: ext(kNg - 1 - k, J) = ext(kNg + nx - 1 - k, J); break;
        case BcKind::Reflective:
          ext(kNg - 1 - k, J) = (flip_u ? -1.0 : 1.0) * ext(kNg + k, J);
          break;
        default: ext(kNg - 1 - k, J) = ext(kNg, J); break;
      }
      switch (kind(Edge::East)) {
        case BcKind::Periodic: ext(kNg + nx + k, J) = ext(kNg + k, J); break;
        case BcKind::Reflective:
          ext(kNg + nx + k, J) = (flip_u ? -1.0 : 1.0) * ext(kNg + nx - 1 - k, J);
          break;
        default: ext(kNg + nx + k, J) = ext(kNg + nx - 1, J); break;
      }
    }
  }
  // south/north bands over all columns (corners included)
  for (int I = 0; I < ext.nx(); ++I) {
    for (int k = 0; k < kNg; ++k) {
      switch (kind(Edge::South)) {
        case BcKind::Periodic: ext(I, kNg - 1 - k) = ext(I, kNg + ny - 1 - k); break;
        case BcKind::Reflective:
          ext(I, kNg - 1 - k) = (flip_v ? -1.0 : 1.0) * ext(I, kNg + k);
          break;
        default: ext(I, kNg - 1 - k) = ext(I, kNg); break;
      }
      switch (kind(Edge::North)) {
        case BcKind::Periodic: ext(I, kNg + ny + k) = ext(I, kNg + k); break;
        case BcKind::Reflective:
          ext(I, kNg + ny + k) = (flip_v ? -1.0 : 1.0) * ext(I, kNg + ny - 1 - k);
          break;
        default: ext(I, kNg + ny + k) = ext(I, kNg + ny - 1); break;
      }
    }
  }
}

void FvScheme::fill_ghosts(const FlowState& state) {
  fill_scalar_ghosts(ext_[0], state.eta, false, false);
  fill_scalar_ghosts(ext_[1], state.u_flux, true, false);
  fill_scalar_ghosts(ext_[2], state.v_flux, false, true);
}

// --- reconstruction passes --------------------------------------------------

namespace {

// x-direction line pass: for logical cells i in [-1, nx], every extended row.
void stage_x(const Field2D& ext, int nx, int ny, int ng, const weno::Target& tl,
             const weno::Target& tr, const weno::Target* tc, Field2D& xl,
             Field2D& xr, Field2D* xc, int threads) {
  parallel_rows(0, ny + 2 * ng, threads, [&](int J) {
    const double* row = ext.row(J);
    for (int i = -1; i <= nx; ++i) {
      const int I = i + ng;
      const double q[5] = {row[I - 2], row[I - 1], row[I], row[I + 1], row[I + 2]};
      double beta[3];
      weno::smoothness(q, beta);
      xl(I, J) = weno::reconstruct(q, beta, tl);
      xr(I, J) = weno::reconstruct(q, beta, tr);
      if (xc) (*xc)(I, J) = weno::reconstruct(q, beta, *tc);
    }
  });
}

// y-direction line pass: logical cells j in [-1, ny], every extended column.
void stage_y(const Field2D& ext, int nx, int ny, int ng, const weno::Target& tb,
             const weno::Target& tt, const weno::Target* tc, Field2D& yb,
             Field2D& yt, Field2D* yc, int threads) {
  parallel_rows(-1, ny + 1, threads, [&](int j) {
    const int J = j + ng;
    for (int I = 0; I < nx + 2 * ng; ++I) {
      const double q[5] = {ext(I, J - 2), ext(I, J - 1), ext(I, J),
                           ext(I, J + 1), ext(I, J + 2)};
      double beta[3];
      weno::smoothness(q, beta);
      yb(I, J) = weno::reconstruct(q, beta, tb);
      yt(I, J) = weno::reconstruct(q, beta, tt);
      if (yc) (*yc)(I, J) = weno::reconstruct(q, beta, *tc);
    }
  });
}

// refine a stage-A x-line array in y at the two Gauss ordinates
void refine_y(const Field2D& in, int nx, int ny, int ng,
              const weno::Target tg[2], Field2D out[2], int threads) {
  parallel_rows(0, ny, threads, [&](int j) {
    const int J = j + ng;
    for (int i = -1; i <= nx; ++i) {
      const int I = i + ng;
      const double q[5] = {in(I, J - 2), in(I, J - 1), in(I, J), in(I, J + 1),
                           in(I, J + 2)};
      double beta[3];
      weno::smoothness(q, beta);
      out[0](I, J) = weno::reconstruct(q, beta, tg[0]);
      out[1](I, J) = weno::reconstruct(q, beta, tg[1]);
    }
  });
}

// refine a stage-A y-line array in x at the two Gauss ordinates
void refine_x(const Field2D& in, int nx, int ny, int ng,
              const weno::Target tg[2], Field2D out[2], int threads) {
  parallel_rows(-1, ny + 1, threads, [&](int j) {
    const int J = j + ng;
    for (int i = 0; i < nx; ++i) {
      const int I = i + ng;
      const double q[5] = {in(I - 2, J), in(I - 1, J), in(I, J), in(I + 1, J),
                           in(I + 2, J)};
      double beta[3];
      weno::smoothness(q, beta);
      out[0](I, J) = weno::reconstruct(q, beta, tg[0]);
      out[1](I, J) = weno::reconstruct(q, beta, tg[1]);
    }
  });
}

}  // namespace

void FvScheme::reconstruct_all() {
  const int nx = grid_.nx, ny = grid_.ny;
  for (int v = 0; v < 3; ++v) {
    stage_x(ext_[v], nx, ny, kNg, tgt_left_, tgt_right_,
            v == 0 ? &tgt_centre_ : nullptr, xl_[v], xr_[v],
            v == 0 ? &xc_ : nullptr, threads);
    stage_y(ext_[v], nx, ny, kNg, tgt_left_, tgt_right_,
            v == 0 ? &tgt_centre_ : nullptr, yb_[v], yt_[v],
            v == 0 ? &yc_ : nullptr, threads);
    refine_y(xl_[v], nx, ny, kNg, tgt_gauss_, gl_[v], threads);
    refine_y(xr_[v], nx, ny, kNg, tgt_gauss_, gr_[v], threads);
    refine_x(yb_[v], nx, ny, kNg, tgt_gauss_, gb_[v], threads);
    refine_x(yt_[v], nx, ny, kNg, tgt_gauss_, gt_[v], threads);
  }
  refine_y(xc_, nx, ny, kNg, tgt_gauss_, cx_, threads);
  refine_x(yc_, nx, ny, kNg, tgt_gauss_, cy_, threads);
}

// --- bathymetry quadrature tables -------------------------------------------

void FvScheme::build_bathymetry_tables() {
  const int nx = grid_.nx, ny = grid_.ny;
  for (int a = 0; a < 2; ++a) {
    zxf_[a] = Field2D(nx + 1, ny);
    zyf_[a] = Field2D(nx, ny + 1);
    zxc_[a] = Field2D(nx, ny);
    zyc_[a] = Field2D(nx, ny);
  }
  const double go[2] = {-kGaussOffset, kGaussOffset};

  if (bathy_.has_analytic()) {
    for (int a = 0; a < 2; ++a) {
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i <= nx; ++i)
          zxf_[a](i, j) = bathy_.at(grid_.xf(i), grid_.yc(j) + go[a] * grid_.hy);
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i < nx; ++i)
          zyf_[a](i, j) = bathy_.at(grid_.xc(i) + go[a] * grid_.hx, grid_.yf(j));
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          zxc_[a](i, j) = bathy_.at(grid_.xc(i), grid_.yc(j) + go[a] * grid_.hy);
          zyc_[a](i, j) = bathy_.at(grid_.xc(i) + go[a] * grid_.hx, grid_.yc(j));
        }
    }
    return;
  }

  // Sampled-only bathymetry: run the same reconstruction as for eta so that
  // z and eta are treated identically. Faces take the average of the two
  // one-sided values, which keeps the interface value single-valued (needed
  // for the exact C-property).
  const int ex = nx + 2 * kNg, ey = ny + 2 * kNg;
  Field2D ext(ex, ey), zxl(ex, ey), zxr(ex, ey), zxm(ex, ey), zyb(ex, ey),
      zyt(ex, ey), zym(ex, ey);
  Field2D zgl[2] = {Field2D(ex, ey), Field2D(ex, ey)};
  Field2D zgr[2] = {Field2D(ex, ey), Field2D(ex, ey)};
  Field2D zgb[2] = {Field2D(ex, ey), Field2D(ex, ey)};
  Field2D zgt[2] = {Field2D(ex, ey), Field2D(ex, ey)};
  Field2D zcx[2] = {Field2D(ex, ey), Field2D(ex, ey)};
  Field2D zcy[2] = {Field2D(ex, ey), Field2D(ex, ey)};

  fill_scalar_ghosts(ext, bathy_.z, false, false);
  stage_x(ext, nx, ny, kNg, tgt_left_, tgt_right_, &tgt_centre_, zxl, zxr, &zxm, 1);
  stage_y(ext, nx, ny, kNg, tgt_left_, tgt_right_, &tgt_centre_, zyb, zyt, &zym, 1);
  refine_y(zxl, nx, ny, kNg, tgt_gauss_, zgl, 1);
  refine_y(zxr, nx, ny, kNg, tgt_gauss_, zgr, 1);
  refine_x(zyb, nx, ny, kNg, tgt_gauss_, zgb, 1);
  refine_x(zyt, nx, ny, kNg, tgt_gauss_, zgt, 1);
  refine_y(zxm, nx, ny, kNg, tgt_gauss_, zcx, 1);
  refine_x(zym, nx, ny, kNg, tgt_gauss_, zcy, 1);

  for (int a = 0; a < 2; ++a) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i <= nx; ++i)
        zxf_[a](i, j) = 0.5 * (zgr[a](i - 1 + kNg, j + kNg) + zgl[a](i + kNg, j + kNg));
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i < nx; ++i)
        zyf_[a](i, j) = 0.5 * (zgt[a](i + kNg, j - 1 + kNg) + zgb[a](i + kNg, j + kNg));
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        zxc_[a](i, j) = zcx[a](i + kNg, j + kNg);
        zyc_[a](i, j) = zcy[a](i + kNg, j + kNg);
      }
  }
}

// --- fluxes ------------------------------------------------------------------

void FvScheme::compute_fluxes(double t) {
  const int nx = grid_.nx, ny = grid_.ny;

  // x-faces
  parallel_rows(0, ny, threads, [&](int j) {
    const int J = j + kNg;
    for (int fi = 0; fi <= nx; ++fi) {
      const int IL = fi - 1 + kNg, IR = fi + kNg;
      double acc[3] = {0.0, 0.0, 0.0};
      for (int a = 0; a < 2; ++a) {
        const double z = zxf_[a](fi, j);
        const double hl = gr_[0][a](IL, J) - z;
        const double hr = gl_[0][a](IR, J) - z;
        if (!(hl > 0.0)) throw PositivityError(fi - 1, j, hl, "fv reconstruction (x face)");
        if (!(hr > 0.0)) throw PositivityError(fi, j, hr, "fv reconstruction (x face)");
        const std::array<double, 3> ql{hl, gr_[1][a](IL, J), gr_[2][a](IL, J)};
        const std::array<double, 3> qr{hr, gl_[1][a](IR, J), gl_[2][a](IR, J)};
        const std::array<double, 3> f = roe_flux(ql, qr, Axis::X, consts_);
        for (int c = 0; c < 3; ++c) acc[c] += 0.5 * f[c];
      }
      for (int c = 0; c < 3; ++c) fx_[c](fi, j) = acc[c];
    }
  });

  // y-faces
  parallel_rows(0, ny + 1, threads, [&](int fj) {
    const int JB = fj - 1 + kNg, JT = fj + kNg;
    for (int i = 0; i < nx; ++i) {
      const int I = i + kNg;
      double acc[3] = {0.0, 0.0, 0.0};
      for (int a = 0; a < 2; ++a) {
        const double z = zyf_[a](i, fj);
        const double hb = gt_[0][a](I, JB) - z;
        const double ht = gb_[0][a](I, JT) - z;
        if (!(hb > 0.0)) throw PositivityError(i, fj - 1, hb, "fv reconstruction (y face)");
        if (!(ht > 0.0)) throw PositivityError(i, fj, ht, "fv reconstruction (y face)");
        const std::array<double, 3> qb{hb, gt_[1][a](I, JB), gt_[2][a](I, JB)};
        const std::array<double, 3> qt{ht, gb_[1][a](I, JT), gb_[2][a](I, JT)};
        const std::array<double, 3> f = roe_flux(qb, qt, Axis::Y, consts_);
        for (int c = 0; c < 3; ++c) acc[c] += 0.5 * f[c];
      }
      for (int c = 0; c < 3; ++c) gy_[c](i, fj) = acc[c];
    }
  });

  apply_boundary_fluxes(t);
}

std::array<double, 3> FvScheme::interior_trace(Edge edge, int k, int a) const {
  switch (edge) {
    case Edge::South: {
      const int I = k + kNg, J = kNg;
      return {gb_[0][a](I, J), gb_[1][a](I, J), gb_[2][a](I, J)};
    }
    case Edge::North: {
      const int I = k + kNg, J = grid_.ny - 1 + kNg;
      return {gt_[0][a](I, J), gt_[1][a](I, J), gt_[2][a](I, J)};
    }
    case Edge::West: {
      const int I = kNg, J = k + kNg;
      return {gl_[0][a](I, J), gl_[1][a](I, J), gl_[2][a](I, J)};
    }
    default: {  // East
      const int I = grid_.nx - 1 + kNg, J = k + kNg;
      return {gr_[0][a](I, J), gr_[1][a](I, J), gr_[2][a](I, J)};
    }
  }
}

namespace {

struct EdgeGeom {
  bool is_y_edge;    // south/north
  double sign_in;    // inward normal direction along the +axis
  int n_faces;       // boundary faces along the edge
};

EdgeGeom edge_geom(Edge e, const Grid& g) {
  switch (e) {
    case Edge::South: return {true, 1.0, g.nx};
    case Edge::North: return {true, -1.0, g.nx};
    case Edge::West: return {false, 1.0, g.ny};
    default: return {false, -1.0, g.ny};
  }
}

// local (H, tangential flux, normal flux along `sign`) from global (H, U, V)
inline std::array<double, 3> to_local(const std::array<double, 3>& q, bool y_edge,
                                      double sign) {
  if (y_edge) return {q[0], q[1], sign * q[2]};
  return {q[0], q[2], sign * q[1]};
}

// global +axis flux components from a local flux (mass, tangential, normal)
inline std::array<double, 3> flux_to_global(const std::array<double, 3>& fl,
                                            bool y_edge, double sign) {
  if (y_edge) return {sign * fl[0], sign * fl[1], fl[2]};
  return {sign * fl[0], fl[2], sign * fl[1]};
}

}  // namespace

std::array<double, 3> FvScheme::boundary_flux_point(
    const BoundarySpec& spec, Edge edge, const std::array<double, 3>& q_int,
    double eta_int, double tang_coord, double t, const double* balanced_eta,
    int point_index) {
  const EdgeGeom geom = edge_geom(edge, grid_);
  const double s_in = geom.sign_in, s_out = -geom.sign_in;

  auto absorbing = [&]() {
    const AbsorbingState st =
        absorbing_outflow_state(to_local(q_int, geom.is_y_edge, s_out), eta_int, consts_);
    return flux_to_global(physical_flux(st.q, consts_, Axis::Y), geom.is_y_edge, s_out);
  };
  auto inflow = [&](bool noslip) {
    const double vj = jet_velocity(*spec.jet, tang_coord, t);
    const std::array<double, 3> ql = to_local(q_int, geom.is_y_edge, s_in);
    const std::array<double, 3> qa = noslip ? noslip_inflow_state(ql, vj, consts_)
                                            : freeslip_inflow_state(ql, vj, consts_);
    return flux_to_global(physical_flux(qa, consts_, Axis::Y), geom.is_y_edge, s_in);
  };

  switch (spec.kind) {
    case BcKind::Absorbing:
      return absorbing();
    case BcKind::InflowNoslip:
    case BcKind::InflowFreeslip: {
      // Experiment-I style patch: absorbing outside the jet strip.
      if (spec.jet->patch_half_width > 0.0 &&
          std::abs(tang_coord - spec.jet->l_b) > spec.jet->patch_half_width)
        return absorbing();
      return inflow(spec.kind == BcKind::InflowNoslip);
    }
    case BcKind::Blended:
      return blended_boundary_flux(inflow(false), absorbing(), tang_coord, *spec.blend);
    case BcKind::InflowBalanced:
    case BcKind::InflowGeostrophic: {
      const double eta_l = balanced_eta[point_index];
      const double z_pt = eta_int - q_int[0];
      const double hl = eta_l - z_pt;
      if (!(hl > 0.0))
        throw PositivityError(point_index, -1, hl, "balanced inflow state");
      const double vj = jet_velocity(*spec.jet, tang_coord, t);
      const double u_tang = spec.kind == BcKind::InflowGeostrophic
                                ? 0.0
                                : (geom.is_y_edge ? q_int[1] : q_int[2]) / q_int[0];
      std::array<double, 3> ql_global;
      if (geom.is_y_edge)
        ql_global = {hl, hl * u_tang, s_in * hl * vj};
      else
        ql_global = {hl, s_in * hl * vj, hl * u_tang};
      // the Riemann solver decides in/outflow by itself; order the states
      // along the +axis
      if (s_in > 0.0)
        return roe_flux(ql_global, q_int, geom.is_y_edge ? Axis::Y : Axis::X, consts_);
      return roe_flux(q_int, ql_global, geom.is_y_edge ? Axis::Y : Axis::X, consts_);
    }
    default:
      throw ConfigError("boundary_flux_point: edge kind has no prescribed flux");
  }
}

void FvScheme::apply_boundary_fluxes(double t) {
  const int nx = grid_.nx, ny = grid_.ny;
  const double go[2] = {-kGaussOffset, kGaussOffset};

  for (Edge edge : {Edge::South, Edge::North, Edge::West, Edge::East}) {
    const BoundarySpec& spec = bcs_[edge];
    if (spec.kind == BcKind::Periodic || spec.kind == BcKind::Reflective) continue;
    const EdgeGeom geom = edge_geom(edge, grid_);

    // balanced variants need the edge-wide elevation profile first
    std::vector<double> bal_eta;
    if (spec.kind == BcKind::InflowBalanced || spec.kind == BcKind::InflowGeostrophic) {
      const int n = geom.n_faces * 2;
      std::vector<double> xs(n), us(n), uts(n), vs(n);
      const EdgeTrace& prev = prev_trace_[static_cast<int>(edge)];
      const bool geo = spec.kind == BcKind::InflowGeostrophic;
      for (int k = 0; k < geom.n_faces; ++k) {
        for (int a = 0; a < 2; ++a) {
          const int p = 2 * k + a;
          xs[p] = geom.is_y_edge ? grid_.xc(k) + go[a] * grid_.hx
                                 : grid_.yc(k) + go[a] * grid_.hy;
          const std::array<double, 3> q = interior_trace(edge, k, a);
          const double z =
              geom.is_y_edge
                  ? zyf_[a](k, edge == Edge::South ? 0 : ny)
                  : zxf_[a](edge == Edge::West ? 0 : nx, k);
          const double h = q[0] - z;
          const double u_tang = geo ? 0.0 : (geom.is_y_edge ? q[1] : q[2]) / h;
          us[p] = u_tang;
          vs[p] = jet_velocity(*spec.jet, xs[p], t);
          uts[p] = 0.0;
          if (!geo && prev.valid && t > prev.time)
            uts[p] = (u_tang - prev.u[k]) / (t - prev.time);
        }
      }
      bal_eta = balanced_inflow_eta(xs, us, uts, vs, spec.jet->anchor_eta, consts_);
    }

    for (int k = 0; k < geom.n_faces; ++k) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (int a = 0; a < 2; ++a) {
        const std::array<double, 3> q_eta = interior_trace(edge, k, a);
        double z, tang;
        if (geom.is_y_edge) {
          z = zyf_[a](k, edge == Edge::South ? 0 : ny);
          tang = grid_.xc(k) + go[a] * grid_.hx;
        } else {
          z = zxf_[a](edge == Edge::West ? 0 : nx, k);
          tang = grid_.yc(k) + go[a] * grid_.hy;
        }
        const double h = q_eta[0] - z;
        if (!(h > 0.0)) throw PositivityError(k, -1, h, "fv boundary trace");
        const std::array<double, 3> q_int{h, q_eta[1], q_eta[2]};
        const std::array<double, 3> f = boundary_flux_point(
            spec, edge, q_int, q_eta[0], tang, t,
            bal_eta.empty() ? nullptr : bal_eta.data(), 2 * k + a);
        for (int c = 0; c < 3; ++c) acc[c] += 0.5 * f[c];
      }
      if (edge == Edge::South)
        for (int c = 0; c < 3; ++c) gy_[c](k, 0) = acc[c];
      else if (edge == Edge::North)
        for (int c = 0; c < 3; ++c) gy_[c](k, ny) = acc[c];
      else if (edge == Edge::West)
        for (int c = 0; c < 3; ++c) fx_[c](0, k) = acc[c];
      else
        for (int c = 0; c < 3; ++c) fx_[c](nx, k) = acc[c];
    }
  }
}

// --- assembly ----------------------------------------------------------------

void FvScheme::accumulate(SemiDiscreteRhs& out) const {
  const int nx = grid_.nx, ny = grid_.ny;
  const double ihx = 1.0 / grid_.hx, ihy = 1.0 / grid_.hy;
  const double g = consts_.g, f = consts_.f;

  parallel_rows(0, ny, threads, [&](int j) {
    const int J = j + kNg;
    for (int i = 0; i < nx; ++i) {
      const int I = i + kNg;
      // geometric source, x-momentum: 1D rule along x at both Gauss rows
      double bu = 0.0, bv = 0.0;
      for (int a = 0; a < 2; ++a) {
        bu += 0.5 * well_balanced_source_1d(gl_[0][a](I, J), cx_[a](I, J),
                                            gr_[0][a](I, J), zxf_[a](i, j),
                                            zxc_[a](i, j), zxf_[a](i + 1, j), g);
        bv += 0.5 * well_balanced_source_1d(gb_[0][a](I, J), cy_[a](I, J),
                                            gt_[0][a](I, J), zyf_[a](i, j),
                                            zyc_[a](i, j), zyf_[a](i, j + 1), g);
      }
      bu *= ihx;
      bv *= ihy;

      const double ubar = ext_[1](I, J);
      const double vbar = ext_[2](I, J);
      out.d_eta(i, j) = -(fx_[0](i + 1, j) - fx_[0](i, j)) * ihx -
                        (gy_[0](i, j + 1) - gy_[0](i, j)) * ihy;
      out.d_u(i, j) = -(fx_[1](i + 1, j) - fx_[1](i, j)) * ihx -
                      (gy_[1](i, j + 1) - gy_[1](i, j)) * ihy + bu + f * vbar;
      out.d_v(i, j) = -(fx_[2](i + 1, j) - fx_[2](i, j)) * ihx -
                      (gy_[2](i, j + 1) - gy_[2](i, j)) * ihy + bv - f * ubar;
    }
  });
}

SemiDiscreteRhs FvScheme::rhs(const FlowState& state, double t) {
  const int nx = grid_.nx, ny = grid_.ny;
  // wet-domain check on the cell averages
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double h = state.eta(i, j) - bathy_.z(i, j);
      if (!(h > 0.0)) throw PositivityError(i, j, h, "fv cell average");
    }

  fill_ghosts(state);
  reconstruct_all();
  compute_fluxes(t);

  SemiDiscreteRhs out{Field2D(nx, ny), Field2D(nx, ny), Field2D(nx, ny)};
  accumulate(out);
  return out;
}

void FvScheme::record_traces(const FlowState& state) {
  for (Edge edge : {Edge::South, Edge::North, Edge::West, Edge::East}) {
    if (bcs_[edge].kind != BcKind::InflowBalanced) continue;
    const EdgeGeom geom = edge_geom(edge, grid_);
    EdgeTrace& tr = prev_trace_[static_cast<int>(edge)];
    tr.u.resize(geom.n_faces);
    for (int k = 0; k < geom.n_faces; ++k) {
      int i, j;
      if (edge == Edge::South) { i = k; j = 0; }
      else if (edge == Edge::North) { i = k; j = grid_.ny - 1; }
      else if (edge == Edge::West) { i = 0; j = k; }
      else { i = grid_.nx - 1; j = k; }
      const double h = state.eta(i, j) - bathy_.z(i, j);
      tr.u[k] = (geom.is_y_edge ? state.u_flux(i, j) : state.v_flux(i, j)) / h;
    }
    tr.time = state.time;
    tr.valid = true;
  }
}

FlowState FvScheme::step(const FlowState& state, double dt) {
  FlowState out = rk4_step(
      state, dt, [this](const FlowState& s, double t, Field2D& de, Field2D& du, Field2D& dv) {
        SemiDiscreteRhs k = rhs(s, t);
        de = std::move(k.d_eta);
        du = std::move(k.d_u);
        dv = std::move(k.d_v);
      });
  // final positivity check (stages are checked inside rhs)
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i) {
      const double h = out.eta(i, j) - bathy_.z(i, j);
      if (!(h > 0.0)) throw PositivityError(i, j, h, "fv step result");
    }
  record_traces(out);
  return out;
}

FvScheme::ReconstructedCell FvScheme::reconstruct_cell(const FlowState& state,
                                                       int i, int j, int component) {
  fill_ghosts(state);
  reconstruct_all();
  // centre lines are kept for eta only in the bulk pass; recompute the
  // requested component's centre lines locally
  const int I = i + kNg, J = j + kNg;
  ReconstructedCell rc;
  for (int a = 0; a < 2; ++a) {
    rc.west[a] = gl_[component][a](I, J);
    rc.east[a] = gr_[component][a](I, J);
    rc.south[a] = gb_[component][a](I, J);
    rc.north[a] = gt_[component][a](I, J);
  }
  // x-centre at the two y-Gauss ordinates
  Field2D ext = ext_[component];
  for (int a = 0; a < 2; ++a) {
    double qx[5], qy[5];
    for (int m = -2; m <= 2; ++m) {
      // y-refine the x-centre line and x-refine the y-centre line
      double line[5];
      for (int n = -2; n <= 2; ++n) line[n + 2] = ext(I + n, J + m);
      qx[m + 2] = weno::reconstruct(line, tgt_centre_);
      for (int n = -2; n <= 2; ++n) line[n + 2] = ext(I + m, J + n);
      qy[m + 2] = weno::reconstruct(line, tgt_centre_);
    }
    rc.centre_x[a] = weno::reconstruct(qx, tgt_gauss_[a]);
    rc.centre_y[a] = weno::reconstruct(qy, tgt_gauss_[a]);
  }
  return rc;
}

}  // namespace rsw
