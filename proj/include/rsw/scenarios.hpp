#ifndef RSW_SCENARIOS_HPP_
#define RSW_SCENARIOS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "rsw/balance.hpp"
#include "rsw/boundary.hpp"
#include "rsw/core.hpp"
#include "rsw/fd_scheme.hpp"

namespace rsw {

enum class SchemeKind { Fd1, Fd2, Fv };
enum class InitialKind { Rest, XingShu, Vortex };
enum class BathymetryKind { Flat, XingShu, TanhShelf, ParabolicShelf };

struct BathymetryParams {
  BathymetryKind kind = BathymetryKind::Flat;
  double z0 = -1.0;                    // flat
  double d_s = 0.0, d_o = 0.0;         // shelf depths
  double x_s = 1.0;                    // slope width
  double x_o = 0.0;                    // tanh centre
  double x_l = 0.0;                    // parabolic shelf edge
};

struct ProbeSpec {
  double x = 0.0, y = 0.0;
  double interval = 0.0;  // sim-seconds between samples
};

struct OutputPlan {
  std::vector<double> snapshot_times;
  std::optional<ProbeSpec> probe;
};

//! Complete description of one run.
struct ScenarioConfig {
  std::string name;
  SchemeKind scheme = SchemeKind::Fv;
  int nx = 0, ny = 0;
  double lx = 1.0, ly = 1.0, x0 = 0.0, y0 = 0.0;
  PhysConsts consts;
  BathymetryParams bathy;
  InitialKind initial = InitialKind::Rest;
  double eta0 = 0.0;  // rest surface level
  DritschelParams vortex;
  BoundarySet bcs;
  double cfl = 0.5;
  double t_end = 0.0;
  double dt_max = 1.0;  // fallback when wave speeds vanish
  SmagorinskyForm damping = SmagorinskyForm::Off;
  double q_smag = 0.1;
  OutputPlan output;

  Grid make_grid() const;
  Bathymetry make_bathymetry(const Grid& grid) const;
  //! Cell averages (3x3 Gauss per cell for analytic data).
  FlowState initial_state_fv(const Grid& grid, const Bathymetry& bathy) const;
  BGridState initial_state_fd(const Grid& grid, const Bathymetry& bathy,
                              const FdScheme& scheme) const;
  void validate() const;

  void set_resolution(int n);  // keeps the domain aspect (ny scales with n)
};

// The experiments of the comparison study.
ScenarioConfig xing_shu_setup(int n = 100);
ScenarioConfig vortex_setup(int n = 128);
ScenarioConfig jet_convergence_setup(int n = 100, BcKind inflow = BcKind::InflowFreeslip);
ScenarioConfig ormen_lange_setup(int experiment /* 1..5 */,
                                 SchemeKind scheme = SchemeKind::Fv,
                                 BcKind inflow = BcKind::InflowFreeslip);
ScenarioConfig long_shelf_setup();

std::vector<std::string> builtin_scenario_names();
ScenarioConfig builtin_scenario(const std::string& name);

}  // namespace rsw

#endif  // RSW_SCENARIOS_HPP_
