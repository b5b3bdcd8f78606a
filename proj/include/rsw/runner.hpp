#ifndef RSW_RUNNER_HPP_
#define RSW_RUNNER_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "rsw/diagnostics.hpp"
#include "rsw/scenarios.hpp"

namespace rsw {

struct RunOptions {
  std::string out_dir;          // empty: nothing written
  int threads = 1;              // 1 = deterministic reference mode
  double progress_every = 0.0;  // sim-seconds between progress lines, 0 = quiet
  std::ostream* log = nullptr;
};

struct RunOutput {
  Grid grid;
  PhysConsts consts;
  Field2D z;             // bathymetry samples at cell centres
  FlowState final_state; // cell-centred (B-grid runs are co-located)
  std::vector<std::string> snapshot_paths;
  std::vector<double> probe_times, probe_eta, probe_v;
};

//! Execute a scenario to t_end, writing snapshots/probe series per the
//! output plan. Positivity failures are rethrown with the failure time.
RunOutput run_scenario(const ScenarioConfig& config, const RunOptions& opts = {});

}  // namespace rsw

#endif  // RSW_RUNNER_HPP_
