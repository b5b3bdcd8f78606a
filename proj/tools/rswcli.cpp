// Command-line front end: run scenarios, grid-convergence studies and
// snapshot diagnostics for the rotating shallow-water solvers.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rsw/config.hpp"
#include "rsw/diagnostics.hpp"
#include "rsw/runner.hpp"

namespace {

using namespace rsw;

ScenarioConfig resolve_scenario(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path) &&
      !std::filesystem::is_directory(name_or_path))
    return load_scenario_config(name_or_path);
  return builtin_scenario(name_or_path);
}

struct Overrides {
  std::string scheme;
  int n = 0;
  double cfl = -1.0;
  double t_end = -1.0;
  std::string inflow;
  double q = -1.0;
};

void apply_overrides(ScenarioConfig& config, const Overrides& ov) {
  if (!ov.scheme.empty()) {
    if (ov.scheme == "fd1") config.scheme = SchemeKind::Fd1;
    else if (ov.scheme == "fd2") config.scheme = SchemeKind::Fd2;
    else if (ov.scheme == "fv") config.scheme = SchemeKind::Fv;
    else throw ConfigError("--scheme must be fd1|fd2|fv");
    if (config.scheme != SchemeKind::Fv && config.damping == SmagorinskyForm::Off &&
        config.name.rfind("ormen-lange", 0) == 0) {
      config.damping = SmagorinskyForm::Paper;  // the staggered runs use q = 0.1
      config.q_smag = 0.1;
    }
  }
  if (ov.n > 0) config.set_resolution(ov.n);
  if (ov.cfl > 0.0) config.cfl = ov.cfl;
  if (ov.t_end >= 0.0) config.t_end = ov.t_end;
  if (!ov.inflow.empty()) {
    BcKind kind;
    if (ov.inflow == "noslip") kind = BcKind::InflowNoslip;
    else if (ov.inflow == "freeslip") kind = BcKind::InflowFreeslip;
    else if (ov.inflow == "balanced") kind = BcKind::InflowBalanced;
    else if (ov.inflow == "geostrophic") kind = BcKind::InflowGeostrophic;
    else if (ov.inflow == "blended") kind = BcKind::Blended;
    else throw ConfigError("--inflow must be noslip|freeslip|balanced|geostrophic|blended");
    bool found = false;
    for (Edge e : {Edge::South, Edge::North, Edge::West, Edge::East}) {
      BoundarySpec& spec = config.bcs[e];
      const bool is_inflow = spec.kind == BcKind::InflowNoslip ||
                             spec.kind == BcKind::InflowFreeslip ||
                             spec.kind == BcKind::InflowBalanced ||
                             spec.kind == BcKind::InflowGeostrophic ||
                             spec.kind == BcKind::Blended;
      if (!is_inflow) continue;
      found = true;
      if (kind == BcKind::Blended && !spec.blend) {
        BlendProfile blend;
        blend.t_w = spec.jet->l_b - 0.5 * spec.jet->b;
        blend.t_e = spec.jet->l_b + 0.5 * spec.jet->b;
        blend.r = 5000.0;
        spec.blend = blend;
      }
      spec.kind = kind;
    }
    if (!found) throw ConfigError("--inflow: scenario has no inflow edge");
  }
  if (ov.q >= 0.0) {
    config.q_smag = ov.q;
    if (ov.q == 0.0) config.damping = SmagorinskyForm::Off;
    else if (config.damping == SmagorinskyForm::Off)
      config.damping = SmagorinskyForm::Paper;
  }
}

int cmd_run(const std::string& scenario, const Overrides& ov, const std::string& out_dir,
            int threads, double progress) {
  ScenarioConfig config = resolve_scenario(scenario);
  apply_overrides(config, ov);
  config.validate();

  RunOptions opts;
  opts.out_dir = out_dir;
  opts.threads = threads;
  opts.progress_every = progress > 0.0 ? progress : config.t_end / 20.0;
  opts.log = &std::cout;

  std::cout << "scenario " << config.name << ": " << config.nx << " x " << config.ny
            << " cells, t_end = " << config.t_end << " s\n";
  RunOutput out = run_scenario(config, opts);
  std::cout << "done, t = " << out.final_state.time << "\n";
  for (const std::string& p : out.snapshot_paths) std::cout << "snapshot: " << p << "\n";
  if (out.snapshot_paths.empty() && !out_dir.empty()) {
    const std::string p = out_dir + "/" + config.name + "_final.snap";
    Bathymetry b;
    b.z = out.z;
    write_snapshot(out.final_state, b, out.grid, out.consts, p);
    std::cout << "snapshot: " << p << "\n";
  }
  return 0;
}

int cmd_converge(const std::string& scenario, const Overrides& ov,
                 const std::vector<int>& grids, int ref_n, int threads,
                 const std::string& ref_inflow) {
  if (grids.empty()) throw ConfigError("converge: need --grids");
  for (int n : grids)
    if (n >= ref_n) throw ConfigError("converge: reference must be finer than all runs");

  // reference run: always the finite-volume scheme (free-slip inflow unless
  // overridden), matching the paper's reference choice
  ScenarioConfig ref_config = resolve_scenario(scenario);
  Overrides ref_ov = ov;
  ref_ov.scheme = "fv";
  ref_ov.n = ref_n;
  if (!ref_inflow.empty()) ref_ov.inflow = ref_inflow;
  apply_overrides(ref_config, ref_ov);
  std::cout << "reference: fv, N = " << ref_n << " ..." << std::flush;
  RunOptions opts;
  opts.threads = threads;
  RunOutput ref = run_scenario(ref_config, opts);
  std::cout << " done\n";

  std::vector<GridRun> runs;
  for (int n : grids) {
    ScenarioConfig config = resolve_scenario(scenario);
    Overrides run_ov = ov;
    run_ov.n = n;
    apply_overrides(config, run_ov);
    std::cout << "run: N = " << n << " ..." << std::flush;
    RunOutput r = run_scenario(config, opts);
    std::cout << " done\n";
    runs.push_back({r.grid, std::move(r.final_state)});
  }

  bool warned = false;
  const std::vector<ConvergenceRow> rows =
      convergence_table(runs, {ref.grid, std::move(ref.final_state)}, &warned);
  if (warned)
    std::cout << "warning: grids are not successive doublings, rate column omitted\n";
  std::cout << format_convergence_table(rows);
  return 0;
}

int cmd_diag(const std::string& what, const std::string& path, double coord,
             const std::string& axis, const std::string& out_path) {
  if (what == "section") {
    const Snapshot snap = read_snapshot(path);
    const Axis a = axis == "x" ? Axis::X : Axis::Y;
    const SectionSeries s = extract_section(snap, a, coord, 0);
    if (out_path.empty()) {
      char buf[64];
      for (std::size_t k = 0; k < s.coords.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", s.coords[k], s.values[k]);
        std::cout << buf;
      }
    } else {
      write_section(s, out_path);
      std::cout << "section written to " << out_path << "\n";
    }
    return 0;
  }
  if (what == "pv") {
    const Snapshot snap = read_snapshot(path);
    Bathymetry b;
    b.z = snap.z;
    const Field2D q = potential_vorticity(snap.state, b, snap.consts, snap.grid);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      os = &file;
    }
    char buf[96];
    for (int j = 0; j < snap.grid.ny; ++j)
      for (int i = 0; i < snap.grid.nx; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", snap.grid.xc(i),
                      snap.grid.yc(j), q(i, j));
        (*os) << buf;
      }
    return 0;
  }
  if (what == "period") {
    std::vector<double> t, v;
    read_series(path, t, v);
    const double period = dominant_period(t, v);
    std::cout << "dominant period: " << period << " (from " << t.size()
              << " samples, " << v.size() << " values)\n";
    return 0;
  }
  if (what == "wavelength") {
    std::vector<double> x, v;
    read_series(path, x, v);
    SectionSeries s;
    s.coords = x;
    s.values = v;
    std::cout << "wavelength: " << wavelength_estimate(s) << "\n";
    return 0;
  }
  throw ConfigError("diag: unknown diagnostic '" + what +
                    "' (section|pv|period|wavelength)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotating shallow-water solver suite"};
  app.require_subcommand(1);

  std::string scenario, out_dir, inflow, scheme, axis = "y", diag_out;
  Overrides ov;
  int threads = 1, ref_n = 400;
  double progress = 0.0, coord = 0.0;
  std::vector<int> grids;
  std::string ref_inflow;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scheme", ov.scheme, "fd1|fd2|fv")->envname("RSW_SCHEME");
    cmd->add_option("--n", ov.n, "cells along x (domain aspect kept)")->envname("RSW_N");
    cmd->add_option("--cfl", ov.cfl, "CFL number (default 0.5)")->envname("RSW_CFL");
    cmd->add_option("--t-end", ov.t_end, "final time in seconds")->envname("RSW_T_END");
    cmd->add_option("--inflow", ov.inflow, "noslip|freeslip|balanced|geostrophic|blended")
        ->envname("RSW_INFLOW");
    cmd->add_option("--q", ov.q, "Smagorinsky diffusion parameter")->envname("RSW_Q");
    cmd->add_option("--threads", threads, "worker threads (default 1, reference mode)")
        ->envname("RSW_THREADS");
  };

  CLI::App* run = app.add_subcommand("run", "run a scenario to t_end");
  run->add_option("scenario", scenario, "builtin name or config file")->required();
  add_common(run);
  run->add_option("--out", out_dir, "output directory")->envname("RSW_OUT");
  run->add_option("--progress", progress, "sim-seconds between progress lines");

  CLI::App* conv = app.add_subcommand("converge", "grid convergence study");
  conv->add_option("scenario", scenario, "builtin name or config file")->required();
  add_common(conv);
  conv->add_option("--grids", grids, "run resolutions, e.g. 25 50 100 200")->required();
  conv->add_option("--ref", ref_n, "reference resolution (fv)");
  conv->add_option("--ref-inflow", ref_inflow, "inflow kind for the reference run");

  CLI::App* diag = app.add_subcommand("diag", "diagnostics on snapshots/series");
  std::string what;
  diag->add_option("what", what, "section|pv|period|wavelength")->required();
  diag->add_option("path", scenario, "snapshot or series file")->required();
  diag->add_option("--coord", coord, "fixed coordinate for sections (metres)");
  diag->add_option("--axis", axis, "axis the section runs along (default y: fixed x)");
  diag->add_option("--out", diag_out, "write result to file instead of stdout");

  CLI::App* dump = app.add_subcommand("dump", "write a builtin scenario as a config file");
  dump->add_option("scenario", scenario, "builtin name")->required();
  dump->add_option("--out", out_dir, "target file (default: <name>.cfg)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario, ov, out_dir, threads, progress);
    if (conv->parsed()) return cmd_converge(scenario, ov, grids, ref_n, threads, ref_inflow);
    if (diag->parsed()) return cmd_diag(what, scenario, coord, axis, diag_out);
    if (dump->parsed()) {
      const ScenarioConfig config = builtin_scenario(scenario);
      const std::string path = out_dir.empty() ? config.name + ".cfg" : out_dir;
      save_scenario_config(config, path);
      std::cout << "wrote " << path << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
