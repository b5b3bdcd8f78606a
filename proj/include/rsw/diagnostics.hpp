#ifndef RSW_DIAGNOSTICS_HPP_
#define RSW_DIAGNOSTICS_HPP_

#include <array>
#include <string>
#include <vector>

#include "rsw/core.hpp"
#include "rsw/field.hpp"

namespace rsw {

//! Conservative block average onto a grid coarsened by `factor`.
Field2D restrict_to_coarse(const Field2D& fine, int factor);

//! sum |a - b| hx hy.
double l1_error(const Field2D& a, const Field2D& b, const Grid& grid);

struct ConvergenceRow {
  int n = 0;
  std::array<double, 3> err{};   // per component (eta/H, U, V)
  std::array<double, 3> rate{};  // valid when has_rate
  bool has_rate = false;
};

struct GridRun {
  Grid grid;
  FlowState state;
};

//! Errors of each run against the block-restricted reference, with rates
//! between consecutive grid doublings. Non-doubling sequences get no rate
//! column (and set the warning flag).
std::vector<ConvergenceRow> convergence_table(const std::vector<GridRun>& runs,
                                              const GridRun& reference,
                                              bool* non_doubling_warned = nullptr);

//! Paper-style delimited table: N | err rate | err rate | err rate.
std::string format_convergence_table(const std::vector<ConvergenceRow>& rows,
                                     const std::string& label0 = "eta");

//! Mean zero-crossing interval of the mean-removed series, times two.
double dominant_period(const std::vector<double>& times,
                       const std::vector<double>& values);

struct SectionSeries {
  Axis axis = Axis::Y;  // coordinate that varies along the section
  double fixed_coord = 0.0;
  std::vector<double> coords;
  std::vector<double> values;
  double time = 0.0;
};

//! Mean spacing of the prominent local maxima of the detrended section.
//! prominence_frac is relative to the detrended range.
double wavelength_estimate(const SectionSeries& section, double prominence_frac = 0.1);

// --- snapshot persistence -----------------------------------------------------

struct Snapshot {
  Grid grid;
  PhysConsts consts;
  FlowState state;
  Field2D z;
};

void write_snapshot(const FlowState& state, const Bathymetry& bathy,
                    const Grid& grid, const PhysConsts& consts,
                    const std::string& path);
Snapshot read_snapshot(const std::string& path);

SectionSeries extract_section(const Snapshot& snap, Axis axis, double fixed_coord,
                              int component /* 0 eta, 1 U, 2 V */);

void write_section(const SectionSeries& s, const std::string& path);
//! Two-column text (coordinate/time, value).
void write_series(const std::vector<double>& x, const std::vector<double>& v,
                  const std::string& path);
void read_series(const std::string& path, std::vector<double>& x,
                 std::vector<double>& v);

}  // namespace rsw

#endif  // RSW_DIAGNOSTICS_HPP_
