#include "rsw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rsw {

Field2D restrict_to_coarse(const Field2D& fine, int factor) {
  if (factor < 1 || fine.nx() % factor != 0 || fine.ny() % factor != 0)
    throw ConfigError("restrict_to_coarse: factor does not divide field dimensions");
  const int nx = fine.nx() / factor, ny = fine.ny() / factor;
  Field2D out(nx, ny);
  const double w = 1.0 / (static_cast<double>(factor) * factor);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double s = 0.0;
      for (int b = 0; b < factor; ++b)
        for (int a = 0; a < factor; ++a) s += fine(i * factor + a, j * factor + b);
      out(i, j) = s * w;
    }
  return out;
}

double l1_error(const Field2D& a, const Field2D& b, const Grid& grid) {
  if (!a.same_shape(b)) throw ConfigError("l1_error: shape mismatch");
  double s = 0.0;
  for (int j = 0; j < a.ny(); ++j)
    for (int i = 0; i < a.nx(); ++i) s += std::abs(a(i, j) - b(i, j));
  return s * grid.hx * grid.hy;
}

std::vector<ConvergenceRow> convergence_table(const std::vector<GridRun>& runs,
                                              const GridRun& reference,
                                              bool* non_doubling_warned) {
  std::vector<const GridRun*> sorted;
  for (const GridRun& r : runs) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const GridRun* a, const GridRun* b) { return a->grid.nx < b->grid.nx; });

  std::vector<ConvergenceRow> rows;
  bool warned = false;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const GridRun& run = *sorted[k];
    if (reference.grid.nx % run.grid.nx != 0 || reference.grid.ny % run.grid.ny != 0)
      throw ConfigError("convergence_table: reference grid is not a multiple of run grid");
    const int factor = reference.grid.nx / run.grid.nx;
    if (factor < 2) throw ConfigError("convergence_table: reference must be finer than runs");

    ConvergenceRow row;
    row.n = run.grid.nx;
    const Field2D ref_fields[3] = {restrict_to_coarse(reference.state.eta, factor),
                                   restrict_to_coarse(reference.state.u_flux, factor),
                                   restrict_to_coarse(reference.state.v_flux, factor)};
    const Field2D* run_fields[3] = {&run.state.eta, &run.state.u_flux, &run.state.v_flux};
    for (int c = 0; c < 3; ++c)
      row.err[c] = l1_error(*run_fields[c], ref_fields[c], run.grid);

    if (k > 0) {
      const int n_prev = rows.back().n;
      if (run.grid.nx == 2 * n_prev) {
        row.has_rate = true;
        for (int c = 0; c < 3; ++c)
          row.rate[c] = std::log2(rows.back().err[c] / row.err[c]);
      } else {
        warned = true;
      }
    }
    rows.push_back(row);
  }
  if (non_doubling_warned) *non_doubling_warned = warned;
  return rows;
}

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows,
                                     const std::string& label0) {
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%6s | %9s %6s | %9s %6s | %9s %6s\n", "N",
                label0.c_str(), "rate", "U", "rate", "V", "rate");
  os << buf;
  for (const ConvergenceRow& r : rows) {
    os << std::string(6 - std::to_string(r.n).size(), ' ') << r.n << " |";
    for (int c = 0; c < 3; ++c) {
      if (r.has_rate)
        std::snprintf(buf, sizeof buf, " %9.2E %6.2f %s", r.err[c], r.rate[c],
                      c < 2 ? "|" : "");
      else
        std::snprintf(buf, sizeof buf, " %9.2E %6s %s", r.err[c], "", c < 2 ? "|" : "");
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

double dominant_period(const std::vector<double>& times,
                       const std::vector<double>& values) {
  if (times.size() != values.size() || times.size() < 4)
    throw DiagnosticsError("dominant_period: need a sampled series");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());

  std::vector<double> crossings;
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double a = values[k - 1] - mean, b = values[k] - mean;
    if (a == 0.0) continue;
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      const double frac = a / (a - b);
      crossings.push_back(times[k - 1] + frac * (times[k] - times[k - 1]));
    }
  }
  if (crossings.size() < 3)
    throw DiagnosticsError("dominant_period: fewer than 3 zero crossings");
  const double mean_interval =
      (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  return 2.0 * mean_interval;
}

double wavelength_estimate(const SectionSeries& section, double prominence_frac) {
  const std::vector<double>& x = section.coords;
  const std::vector<double>& v = section.values;
  if (x.size() != v.size() || x.size() < 5)
    throw DiagnosticsError("wavelength_estimate: need a sampled section");
  for (std::size_t k = 1; k < x.size(); ++k)
    if (!(x[k] > x[k - 1]))
      throw DiagnosticsError("wavelength_estimate: coordinates not increasing");

  // remove the least-squares line
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += x[k];
    sy += v[k];
    sxx += x[k] * x[k];
    sxy += x[k] * v[k];
  }
  const double det = n * sxx - sx * sx;
  const double slope = det != 0.0 ? (n * sxy - sx * sy) / det : 0.0;
  const double icept = (sy - slope * sx) / n;
  std::vector<double> d(n);
  double dmin = 1e300, dmax = -1e300;
  for (std::size_t k = 0; k < n; ++k) {
    d[k] = v[k] - (icept + slope * x[k]);
    dmin = std::min(dmin, d[k]);
    dmax = std::max(dmax, d[k]);
  }
  const double range = dmax - dmin;
  if (!(range > 0.0)) throw DiagnosticsError("wavelength_estimate: flat section");

  // interior maxima with prominence above the requested fraction of the range;
  // prominence is measured down to the higher of the two adjacent valleys.
  std::vector<std::size_t> maxima;
  for (std::size_t k = 1; k + 1 < n; ++k)
    if (d[k] > d[k - 1] && d[k] >= d[k + 1]) maxima.push_back(k);
  std::vector<double> kept;
  for (std::size_t m = 0; m < maxima.size(); ++m) {
    const std::size_t k = maxima[m];
    const std::size_t lo = m == 0 ? 0 : maxima[m - 1];
    const std::size_t hi = m + 1 == maxima.size() ? n - 1 : maxima[m + 1];
    double vl = 1e300, vr = 1e300;
    for (std::size_t p = lo; p <= k; ++p) vl = std::min(vl, d[p]);
    for (std::size_t p = k; p <= hi; ++p) vr = std::min(vr, d[p]);
    const double prominence = d[k] - std::max(vl, vr);
    if (prominence >= prominence_frac * range) kept.push_back(x[k]);
  }
  if (kept.size() < 3)
    throw DiagnosticsError("wavelength_estimate: fewer than 3 interior maxima");
  return (kept.back() - kept.front()) / static_cast<double>(kept.size() - 1);
}

// --- snapshot io ---------------------------------------------------------------

void write_snapshot(const FlowState& state, const Bathymetry& bathy,
                    const Grid& grid, const PhysConsts& consts,
                    const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("write_snapshot: cannot open " + path);
  char buf[256];
  os << "# rsw snapshot\n";
  os << "version: 1\n";
  std::snprintf(buf, sizeof buf, "time: %.17g\n", state.time);
  os << buf;
  os << "nx: " << grid.nx << "\nny: " << grid.ny << "\n";
  std::snprintf(buf, sizeof buf, "hx: %.17g\nhy: %.17g\nx0: %.17g\ny0: %.17g\n",
                grid.hx, grid.hy, grid.x0, grid.y0);
  os << buf;
  os << "periodic_x: " << (grid.periodic_x ? 1 : 0) << "\n";
  os << "periodic_y: " << (grid.periodic_y ? 1 : 0) << "\n";
  std::snprintf(buf, sizeof buf, "g: %.17g\nf: %.17g\n", consts.g, consts.f);
  os << buf;
  os << "layout: cell_centred\n";
  os << "columns: x y z eta U V\n";
  os << "data:\n";
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %.17g\n",
                    grid.xc(i), grid.yc(j), bathy.z(i, j), state.eta(i, j),
                    state.u_flux(i, j), state.v_flux(i, j));
      os << buf;
    }
  if (!os) throw IoError("write_snapshot: write failed for " + path);
}

namespace {

std::string expect_key(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("snapshot: truncated header, missing " + key);
  const auto pos = line.find(':');
  if (pos == std::string::npos || line.substr(0, pos) != key)
    throw IoError("snapshot: malformed header line '" + line + "', expected " + key);
  std::string v = line.substr(pos + 1);
  const auto b = v.find_first_not_of(" \t");
  return b == std::string::npos ? "" : v.substr(b);
}

}  // namespace

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("read_snapshot: cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line != "# rsw snapshot")
    throw IoError("snapshot: bad magic line");
  if (expect_key(is, "version") != "1") throw IoError("snapshot: unsupported version");

  Snapshot snap;
  snap.state.time = std::stod(expect_key(is, "time"));
  snap.grid.nx = std::stoi(expect_key(is, "nx"));
  snap.grid.ny = std::stoi(expect_key(is, "ny"));
  snap.grid.hx = std::stod(expect_key(is, "hx"));
  snap.grid.hy = std::stod(expect_key(is, "hy"));
  snap.grid.x0 = std::stod(expect_key(is, "x0"));
  snap.grid.y0 = std::stod(expect_key(is, "y0"));
  snap.grid.periodic_x = expect_key(is, "periodic_x") == "1";
  snap.grid.periodic_y = expect_key(is, "periodic_y") == "1";
  snap.consts.g = std::stod(expect_key(is, "g"));
  snap.consts.f = std::stod(expect_key(is, "f"));
  if (expect_key(is, "layout") != "cell_centred")
    throw IoError("snapshot: unknown layout");
  expect_key(is, "columns");
  if (!std::getline(is, line) || line != "data:")
    throw IoError("snapshot: missing data section");

  const int nx = snap.grid.nx, ny = snap.grid.ny;
  if (nx <= 0 || ny <= 0) throw IoError("snapshot: bad dimensions");
  snap.state.eta = Field2D(nx, ny);
  snap.state.u_flux = Field2D(nx, ny);
  snap.state.v_flux = Field2D(nx, ny);
  snap.z = Field2D(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (!std::getline(is, line))
        throw IoError("snapshot: truncated body at row " + std::to_string(j));
      std::istringstream ls(line);
      double x, y, z, eta, uf, vf;
      if (!(ls >> x >> y >> z >> eta >> uf >> vf))
        throw IoError("snapshot: malformed data line '" + line + "'");
      snap.z(i, j) = z;
      snap.state.eta(i, j) = eta;
      snap.state.u_flux(i, j) = uf;
      snap.state.v_flux(i, j) = vf;
    }
  return snap;
}

SectionSeries extract_section(const Snapshot& snap, Axis axis, double fixed_coord,
                              int component) {
  const Field2D* f = component == 0   ? &snap.state.eta
                     : component == 1 ? &snap.state.u_flux
                                      : &snap.state.v_flux;
  SectionSeries s;
  s.axis = axis;
  s.time = snap.state.time;
  if (axis == Axis::Y) {  // varying y at fixed x
    int i = static_cast<int>(std::floor((fixed_coord - snap.grid.x0) / snap.grid.hx));
    i = std::min(std::max(i, 0), snap.grid.nx - 1);
    s.fixed_coord = snap.grid.xc(i);
    for (int j = 0; j < snap.grid.ny; ++j) {
      s.coords.push_back(snap.grid.yc(j));
      s.values.push_back((*f)(i, j));
    }
  } else {
    int j = static_cast<int>(std::floor((fixed_coord - snap.grid.y0) / snap.grid.hy));
    j = std::min(std::max(j, 0), snap.grid.ny - 1);
    s.fixed_coord = snap.grid.yc(j);
    for (int i = 0; i < snap.grid.nx; ++i) {
      s.coords.push_back(snap.grid.xc(i));
      s.values.push_back((*f)(i, j));
    }
  }
  return s;
}

void write_section(const SectionSeries& s, const std::string& path) {
  write_series(s.coords, s.values, path);
}

void write_series(const std::vector<double>& x, const std::vector<double>& v,
                  const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("write_series: cannot open " + path);
  char buf[80];
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", x[k], v[k]);
    os << buf;
  }
}

void read_series(const std::string& path, std::vector<double>& x,
                 std::vector<double>& v) {
  std::ifstream is(path);
  if (!is) throw IoError("read_series: cannot open " + path);
  x.clear();
  v.clear();
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a >> b)) throw IoError("read_series: malformed line '" + line + "'");
    x.push_back(a);
    v.push_back(b);
  }
}

}  // namespace rsw
