#include "rsw/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "rsw/fd_scheme.hpp"
#include "rsw/fv_scheme.hpp"

namespace rsw {

namespace {

double domain_mass(const FlowState& s, const Field2D& z, const Grid& g) {
  double m = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) m += s.eta(i, j) - z(i, j);
  return m * g.hx * g.hy;
}

double max_speed(const FlowState& s, const Field2D& z) {
  double vmax = 0.0;
  for (int j = 0; j < s.eta.ny(); ++j)
    for (int i = 0; i < s.eta.nx(); ++i) {
      const double h = s.eta(i, j) - z(i, j);
      const double u = s.u_flux(i, j) / h, v = s.v_flux(i, j) / h;
      vmax = std::max(vmax, std::sqrt(u * u + v * v));
    }
  return vmax;
}

struct EventQueue {
  std::vector<double> times;  // sorted stop times (snapshots + t_end)
  std::size_t next = 0;
  double horizon(double t) const {
    for (std::size_t k = next; k < times.size(); ++k)
      if (times[k] > t + 1e-12) return times[k];
    return times.empty() ? t : times.back();
  }
  void advance(double t) {
    while (next < times.size() && times[next] <= t + 1e-12) ++next;
  }
};

std::string snapshot_path(const std::string& dir, const std::string& name, double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "_t%.6g.snap", t);
  return dir + "/" + name + buf;
}

}  // namespace

RunOutput run_scenario(const ScenarioConfig& config, const RunOptions& opts) {
  config.validate();
  RunOutput out;
  out.grid = config.make_grid();
  const Bathymetry bathy = config.make_bathymetry(out.grid);
  out.consts = config.consts;
  out.z = bathy.z;

  if (!opts.out_dir.empty()) std::filesystem::create_directories(opts.out_dir);

  // stop times: snapshots, probe samples, t_end
  EventQueue events;
  events.times = config.output.snapshot_times;
  if (config.output.probe && config.output.probe->interval > 0.0)
    for (double t = config.output.probe->interval; t < config.t_end;
         t += config.output.probe->interval)
      events.times.push_back(t);
  events.times.push_back(config.t_end);
  std::sort(events.times.begin(), events.times.end());

  std::size_t snap_idx = 0;
  std::vector<double> snaps = config.output.snapshot_times;
  std::sort(snaps.begin(), snaps.end());

  int probe_i = 0, probe_j = 0;
  double next_probe = -1.0;
  if (config.output.probe) {
    probe_i = std::min(std::max(static_cast<int>((config.output.probe->x - out.grid.x0) /
                                                 out.grid.hx), 0), out.grid.nx - 1);
    probe_j = std::min(std::max(static_cast<int>((config.output.probe->y - out.grid.y0) /
                                                 out.grid.hy), 0), out.grid.ny - 1);
    next_probe = 0.0;
  }

  double next_progress = 0.0;

  auto handle_outputs = [&](const FlowState& s, double dt_used) {
    // probe sampling
    if (config.output.probe && s.time >= next_probe - 1e-12) {
      const double h = s.eta(probe_i, probe_j) - out.z(probe_i, probe_j);
      out.probe_times.push_back(s.time);
      out.probe_eta.push_back(s.eta(probe_i, probe_j));
      out.probe_v.push_back(s.v_flux(probe_i, probe_j) / h);
      next_probe += config.output.probe->interval;
    }
    // snapshots
    while (snap_idx < snaps.size() && s.time >= snaps[snap_idx] - 1e-9 * (1.0 + s.time)) {
      if (!opts.out_dir.empty()) {
        const std::string p = snapshot_path(opts.out_dir, config.name, snaps[snap_idx]);
        write_snapshot(s, bathy, out.grid, out.consts, p);
        out.snapshot_paths.push_back(p);
      }
      ++snap_idx;
    }
    // progress line
    if (opts.log && opts.progress_every > 0.0 && s.time >= next_progress - 1e-12) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "t = %12.6g  dt = %10.5g  max|v| = %10.5g  mass = %.12e\n",
                    s.time, dt_used, max_speed(s, out.z), domain_mass(s, out.z, out.grid));
      (*opts.log) << buf;
      opts.log->flush();
      next_progress += opts.progress_every;
    }
  };

  double sim_time = 0.0;
  try {
    if (config.scheme == SchemeKind::Fv) {
      FvScheme scheme(out.grid, config.consts, bathy, config.bcs);
      scheme.threads = opts.threads;
      FlowState state = config.initial_state_fv(out.grid, bathy);
      handle_outputs(state, 0.0);
      while (state.time < config.t_end - 1e-12) {
        sim_time = state.time;
        double dt = cfl_timestep(state, bathy, config.consts, out.grid, config.cfl,
                                 config.dt_max);
        dt = std::min(dt, events.horizon(state.time) - state.time);
        state = scheme.step(state, dt);
        events.advance(state.time);
        handle_outputs(state, dt);
      }
      out.final_state = std::move(state);
    } else {
      FdScheme scheme(out.grid, config.consts, bathy, config.bcs);
      scheme.order = config.scheme == SchemeKind::Fd1 ? 1 : 2;
      scheme.damping = config.damping;
      scheme.q_smag = config.q_smag;
      BGridState state = config.initial_state_fd(out.grid, bathy, scheme);

      auto collocated = [&](const BGridState& st) {
        BGridState tmp = st;
        scheme.finalize_eta(tmp);
        return scheme.collocate(tmp);
      };
      handle_outputs(collocated(state), 0.0);
      while (state.time < config.t_end - 1e-12) {
        sim_time = state.time;
        FlowState co = collocated(state);
        double dt = cfl_timestep(co, bathy, config.consts, out.grid, config.cfl,
                                 config.dt_max);
        dt = std::min(dt, events.horizon(state.time) - state.time);
        state = scheme.step(state, dt);
        events.advance(state.time);
        // co-locate only when something needs to be written
        const bool want = (config.output.probe && state.time >= next_probe - 1e-12) ||
                          (snap_idx < snaps.size() &&
                           state.time >= snaps[snap_idx] - 1e-9 * (1.0 + state.time)) ||
                          (opts.log && opts.progress_every > 0.0 &&
                           state.time >= next_progress - 1e-12) ||
                          state.time >= config.t_end - 1e-12;
        if (want) handle_outputs(collocated(state), dt);
      }
      scheme.finalize_eta(state);
      out.final_state = scheme.collocate(state);
    }
  } catch (const PositivityError& e) {
    throw SolverError("solver positivity failure at t = " + std::to_string(sim_time) +
                      ": " + e.what());
  }

  if (!opts.out_dir.empty() && config.output.probe) {
    write_series(out.probe_times, out.probe_eta, opts.out_dir + "/" + config.name + "_probe_eta.txt");
    write_series(out.probe_times, out.probe_v, opts.out_dir + "/" + config.name + "_probe_v.txt");
  }
  return out;
}

}  // namespace rsw
