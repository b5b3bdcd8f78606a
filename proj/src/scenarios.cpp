#include "rsw/scenarios.hpp"

#include <cmath>

namespace rsw {

namespace {

constexpr double kPi = 3.14159265358979323846;

double bathy_eval(const BathymetryParams& p, double x, double y) {
  switch (p.kind) {
    case BathymetryKind::Flat:
      return p.z0;
    case BathymetryKind::XingShu:
      return std::sin(2.0 * kPi * x) + std::cos(2.0 * kPi * y);
    case BathymetryKind::TanhShelf: {
      const double q1 = 0.5 * (p.d_o - p.d_s);
      const double q2 = 0.5 * (p.d_o + p.d_s);
      return -q1 * std::tanh((x - p.x_o) / p.x_s) - q2;
    }
    case BathymetryKind::ParabolicShelf: {
      if (x <= p.x_l) return -p.d_s;
      if (x >= p.x_l + p.x_s) return -p.d_o;
      const double r = (p.x_l + p.x_s - x) / p.x_s;
      return -p.d_o + (p.d_o - p.d_s) * r * r;
    }
  }
  return 0.0;
}

// 3-point Gauss-Legendre positions/weights on [-1/2, 1/2]
constexpr double kG3x[3] = {-0.3872983346207417, 0.0, 0.3872983346207417};
constexpr double kG3w[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

double cell_average(const std::function<double(double, double)>& fn, double xc,
                    double yc, double hx, double hy) {
  double s = 0.0;
  for (int b = 0; b < 3; ++b)
    for (int a = 0; a < 3; ++a)
      s += kG3w[a] * kG3w[b] * fn(xc + kG3x[a] * hx, yc + kG3x[b] * hy);
  return s;
}

}  // namespace

Grid ScenarioConfig::make_grid() const {
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.hx = lx / nx;
  g.hy = ly / ny;
  g.x0 = x0;
  g.y0 = y0;
  g.periodic_x = bcs[Edge::West].kind == BcKind::Periodic;
  g.periodic_y = bcs[Edge::South].kind == BcKind::Periodic;
  g.validate();
  return g;
}

Bathymetry ScenarioConfig::make_bathymetry(const Grid& grid) const {
  const BathymetryParams p = bathy;
  return Bathymetry::from_analytic(
      grid, [p](double x, double y) { return bathy_eval(p, x, y); });
}

FlowState ScenarioConfig::initial_state_fv(const Grid& grid,
                                           const Bathymetry& b) const {
  FlowState s;
  s.layout = Layout::CellCentred;
  s.time = 0.0;
  s.eta = Field2D(grid.nx, grid.ny);
  s.u_flux = Field2D(grid.nx, grid.ny);
  s.v_flux = Field2D(grid.nx, grid.ny);

  switch (initial) {
    case InitialKind::Rest: {
      s.eta.fill(eta0);
      break;
    }
    case InitialKind::XingShu: {
      auto eta_fn = [](double x, double y) {
        return 10.0 + std::exp(std::sin(2.0 * kPi * x)) * std::cos(2.0 * kPi * y);
      };
      auto u_fn = [](double x, double y) {
        return std::sin(std::cos(2.0 * kPi * x)) * std::sin(2.0 * kPi * y);
      };
      auto v_fn = [](double x, double y) {
        return std::cos(2.0 * kPi * x) * std::cos(std::sin(2.0 * kPi * y));
      };
      for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
          const double xc = grid.xc(i), yc = grid.yc(j);
          s.eta(i, j) = cell_average(eta_fn, xc, yc, grid.hx, grid.hy);
          s.u_flux(i, j) = cell_average(u_fn, xc, yc, grid.hx, grid.hy);
          s.v_flux(i, j) = cell_average(v_fn, xc, yc, grid.hx, grid.hy);
        }
      break;
    }
    case InitialKind::Vortex: {
      BalanceProblem prob;
      prob.grid = grid;
      prob.consts = consts;
      prob.q = Field2D(grid.nx, grid.ny);
      for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
          prob.q(i, j) = dritschel_pv(grid.xc(i), grid.yc(j), vortex);
      const Field2D depth = solve_balance(prob);
      Field2D u, v;
      velocities_from_balance(depth, consts, grid, u, v);
      for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
          s.eta(i, j) = depth(i, j) + b.z(i, j);
          s.u_flux(i, j) = depth(i, j) * u(i, j);
          s.v_flux(i, j) = depth(i, j) * v(i, j);
        }
      break;
    }
  }
  total_depth(s, b);  // wet-domain check
  return s;
}

BGridState ScenarioConfig::initial_state_fd(const Grid& grid, const Bathymetry& b,
                                            const FdScheme& scheme) const {
  switch (initial) {
    case InitialKind::Rest: {
      const double e0 = eta0;
      return scheme.init_state([e0](double, double) { return e0; },
                               [](double, double) { return 0.0; },
                               [](double, double) { return 0.0; });
    }
    case InitialKind::XingShu: {
      return scheme.init_state(
          [](double x, double y) {
            return 10.0 + std::exp(std::sin(2.0 * kPi * x)) * std::cos(2.0 * kPi * y);
          },
          [](double x, double y) {
            return std::sin(std::cos(2.0 * kPi * x)) * std::sin(2.0 * kPi * y);
          },
          [](double x, double y) {
            return std::cos(2.0 * kPi * x) * std::cos(std::sin(2.0 * kPi * y));
          });
    }
    case InitialKind::Vortex: {
      BalanceProblem prob;
      prob.grid = grid;
      prob.consts = consts;
      prob.q = Field2D(grid.nx, grid.ny);
      for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
          prob.q(i, j) = dritschel_pv(grid.xc(i), grid.yc(j), vortex);
      const Field2D depth = solve_balance(prob);
      Field2D u, v;
      velocities_from_balance(depth, consts, grid, u, v);

      BGridState st;
      st.eta = Field2D(grid.nx, grid.ny);
      st.u_flux = Field2D(grid.nx + 1, grid.ny + 1);
      st.v_flux = Field2D(grid.nx + 1, grid.ny + 1);
      for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) st.eta(i, j) = depth(i, j) + b.z(i, j);
      // node fluxes by periodic mu-averaging of the centred fields
      auto wrap = [](int k, int n) { return (k % n + n) % n; };
      for (int j = 0; j <= grid.ny; ++j)
        for (int i = 0; i <= grid.nx; ++i) {
          const int im = wrap(i - 1, grid.nx), ii = wrap(i, grid.nx);
          const int jm = wrap(j - 1, grid.ny), jj = wrap(j, grid.ny);
          st.u_flux(i, j) = 0.25 * (depth(im, jm) * u(im, jm) + depth(ii, jm) * u(ii, jm) +
                                    depth(im, jj) * u(im, jj) + depth(ii, jj) * u(ii, jj));
          st.v_flux(i, j) = 0.25 * (depth(im, jm) * v(im, jm) + depth(ii, jm) * v(ii, jm) +
                                    depth(im, jj) * v(im, jj) + depth(ii, jj) * v(ii, jj));
        }
      return st;
    }
  }
  throw ConfigError("initial_state_fd: unknown initial kind");
}

void ScenarioConfig::validate() const {
  if (nx < 3 || ny < 3) throw ConfigError("scenario '" + name + "': nx, ny must be >= 3");
  if (!(lx > 0.0) || !(ly > 0.0))
    throw ConfigError("scenario '" + name + "': domain lengths must be positive");
  if (!(cfl > 0.0) || cfl > 1.0)
    throw ConfigError("scenario '" + name + "': cfl must be in (0, 1]");
  if (!(t_end >= 0.0)) throw ConfigError("scenario '" + name + "': t_end must be >= 0");
  if (!(consts.g > 0.0)) throw ConfigError("scenario '" + name + "': g must be positive");
  if (q_smag < 0.0) throw ConfigError("scenario '" + name + "': q must be >= 0");
  const Grid g = make_grid();
  bcs.validate(g);
  for (double t : output.snapshot_times)
    if (t < 0.0 || t > t_end + 1e-9)
      throw ConfigError("scenario '" + name + "': snapshot time outside [0, t_end]");
}

void ScenarioConfig::set_resolution(int n) {
  const double aspect = ly / lx;
  nx = n;
  ny = static_cast<int>(std::lround(n * aspect));
}

// --- builtin setups -----------------------------------------------------------

ScenarioConfig xing_shu_setup(int n) {
  ScenarioConfig c;
  c.name = "xing-shu";
  c.scheme = SchemeKind::Fv;
  c.nx = c.ny = n;
  c.lx = c.ly = 1.0;
  c.consts.g = 9.812;
  c.consts.f = 10.0;
  c.bathy.kind = BathymetryKind::XingShu;
  c.initial = InitialKind::XingShu;
  for (Edge e : {Edge::South, Edge::North, Edge::West, Edge::East})
    c.bcs[e].kind = BcKind::Periodic;
  c.cfl = 0.5;
  c.t_end = 0.05;
  c.dt_max = 0.01;
  return c;
}

ScenarioConfig vortex_setup(int n) {
  ScenarioConfig c;
  c.name = "vortex";
  c.scheme = SchemeKind::Fv;
  c.nx = c.ny = n;
  c.lx = c.ly = 2.0 * kPi;
  c.x0 = c.y0 = -kPi;
  // Dritschel scalings: hbar = 1, L_R^2 = g hbar / f^2 = 0.25, f = 4 pi,
  // one time unit = one day
  c.consts.f = 4.0 * kPi;
  c.consts.g = 0.25 * c.consts.f * c.consts.f;
  c.bathy.kind = BathymetryKind::Flat;
  c.bathy.z0 = -1.0;
  c.initial = InitialKind::Vortex;
  c.vortex.q_bar = c.consts.f;        // f / hbar
  c.vortex.q_amp = 2.0 * c.consts.f;  // hbar Q / f = 2
  c.vortex.a = 0.5;
  c.vortex.m = 2;
  c.vortex.n = 3;
  c.vortex.c_m = -0.1;
  c.vortex.c_n = 0.1;
  for (Edge e : {Edge::South, Edge::North, Edge::West, Edge::East})
    c.bcs[e].kind = BcKind::Periodic;
  c.cfl = 0.5;
  c.t_end = 8.0;                     // day 8
  c.output.snapshot_times = {4.0, 8.0};
  c.dt_max = 0.1;
  return c;
}

ScenarioConfig jet_convergence_setup(int n, BcKind inflow) {
  ScenarioConfig c;
  c.name = "jet-convergence";
  c.scheme = SchemeKind::Fv;
  c.nx = c.ny = n;
  c.lx = c.ly = 300e3;
  c.consts.g = 9.81;
  c.consts.f = 1.2e-4;
  c.bathy.kind = BathymetryKind::TanhShelf;
  c.bathy.d_s = 400.0;
  c.bathy.d_o = 1000.0;
  c.bathy.x_s = 40e3;
  c.bathy.x_o = 120e3;
  c.initial = InitialKind::Rest;

  JetProfile jet;
  jet.l_b = 100e3;
  jet.b = 50e3;
  jet.v_max = 0.04;
  jet.growth = GrowthLaw::Polynomial;
  jet.t_ramp = 2000.0;

  c.bcs[Edge::West].kind = BcKind::Reflective;
  c.bcs[Edge::East].kind = BcKind::Reflective;
  c.bcs[Edge::South].kind = inflow;
  c.bcs[Edge::South].jet = jet;
  c.bcs[Edge::North].kind = BcKind::Absorbing;
  c.cfl = 0.5;
  c.t_end = 3000.0;
  c.dt_max = 60.0;
  return c;
}

ScenarioConfig ormen_lange_setup(int experiment, SchemeKind scheme, BcKind inflow) {
  if (experiment < 1 || experiment > 5)
    throw ConfigError("ormen_lange_setup: experiment must be 1..5");
  ScenarioConfig c;
  c.name = "ormen-lange-" + std::string(experiment == 1   ? "I"
                                        : experiment == 2 ? "II"
                                        : experiment == 3 ? "III"
                                        : experiment == 4 ? "IV"
                                                          : "V");
  c.scheme = scheme;
  c.nx = 150;  // 2 km cells
  c.ny = 300;
  c.lx = 300e3;
  c.ly = 600e3;
  c.consts.g = 9.81;
  c.consts.f = 1.2e-4;
  c.bathy.kind = BathymetryKind::ParabolicShelf;
  c.bathy.d_s = 250.0;
  c.bathy.d_o = 1600.0;
  c.bathy.x_l = 100e3;
  c.bathy.x_s = 90e3;
  c.initial = InitialKind::Rest;

  JetProfile jet;
  jet.l_b = 115e3;
  jet.b = 10e3;
  jet.v_max = 0.4;
  jet.growth = GrowthLaw::Exponential;
  jet.sigma = 2.3148e-5;

  BoundarySpec south;
  switch (experiment) {
    case 1:
      jet.patch_half_width = jet.b;  // |x - L_B| <= B, absorbing outside
      south.kind = inflow;
      south.jet = jet;
      break;
    case 2:
      south.kind = inflow;
      south.jet = jet;
      break;
    case 3:
      jet.growth = GrowthLaw::Polynomial;
      jet.t_ramp = 24.0 * 3600.0;
      south.kind = inflow;
      south.jet = jet;
      break;
    case 4: {
      south.kind = BcKind::Blended;
      south.jet = jet;
      BlendProfile blend;
      blend.t_w = jet.l_b - 0.5 * jet.b;
      blend.t_e = jet.l_b + 0.5 * jet.b;
      blend.r = 5000.0;
      south.blend = blend;
      break;
    }
    case 5:
      south.kind = BcKind::InflowBalanced;
      jet.anchor_x = 0.0;
      jet.anchor_eta = 0.0;
      south.jet = jet;
      break;
  }
  c.bcs[Edge::South] = south;
  c.bcs[Edge::North].kind = BcKind::Absorbing;
  c.bcs[Edge::West].kind = BcKind::Reflective;
  c.bcs[Edge::East].kind = BcKind::Reflective;

  if (scheme != SchemeKind::Fv) {
    // the staggered scheme needs eddy viscosity on this problem
    c.damping = SmagorinskyForm::Paper;
    c.q_smag = 0.1;
  }
  c.cfl = 0.5;
  c.t_end = 240.0 * 3600.0;
  c.output.snapshot_times = {60.0 * 3600.0, 120.0 * 3600.0, 240.0 * 3600.0};
  c.dt_max = 60.0;
  return c;
}

ScenarioConfig long_shelf_setup() {
  ScenarioConfig c = ormen_lange_setup(1, SchemeKind::Fv, BcKind::InflowFreeslip);
  c.name = "long-shelf";
  c.ny = 4800;  // 9600 km at 2 km cells
  c.ly = 9600e3;
  c.t_end = 480.0 * 3600.0;
  c.output.snapshot_times = {480.0 * 3600.0};
  ProbeSpec probe;
  probe.x = 1e3;     // coastal cell column
  probe.y = 201e3;   // on the shelf, past the inflow region
  probe.interval = 900.0;
  c.output.probe = probe;
  return c;
}

std::vector<std::string> builtin_scenario_names() {
  return {"xing-shu",       "vortex",          "jet-convergence",
          "ormen-lange-I",  "ormen-lange-II",  "ormen-lange-III",
          "ormen-lange-IV", "ormen-lange-V",   "long-shelf"};
}

ScenarioConfig builtin_scenario(const std::string& name) {
  if (name == "xing-shu") return xing_shu_setup();
  if (name == "vortex") return vortex_setup();
  if (name == "jet-convergence") return jet_convergence_setup();
  if (name == "ormen-lange-I") return ormen_lange_setup(1);
  if (name == "ormen-lange-II") return ormen_lange_setup(2);
  if (name == "ormen-lange-III") return ormen_lange_setup(3);
  if (name == "ormen-lange-IV") return ormen_lange_setup(4);
  if (name == "ormen-lange-V") return ormen_lange_setup(5);
  if (name == "long-shelf") return long_shelf_setup();
  std::string msg = "unknown scenario '" + name + "'; builtins:";
  for (const std::string& s : builtin_scenario_names()) msg += " " + s;
  throw ConfigError(msg);
}

}  // namespace rsw
