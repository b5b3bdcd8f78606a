#include "rsw/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rsw {

namespace {

struct KeyValues {
  std::map<std::string, std::string> kv;
  mutable std::set<std::string> used;

  bool has(const std::string& key) const { return kv.count(key) > 0; }

  std::string get(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("config: missing required key '" + key + "'");
    used.insert(key);
    return it->second;
  }
  std::string get_or(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    used.insert(key);
    return it->second;
  }
  double num(const std::string& key) const { return to_num(key, get(key)); }
  double num_or(const std::string& key, double dflt) const {
    return has(key) ? to_num(key, get(key)) : dflt;
  }
  int integer(const std::string& key) const {
    const double v = num(key);
    return static_cast<int>(v);
  }
  static double to_num(const std::string& key, const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config: key '" + key + "' has non-numeric value '" + s + "'");
    }
  }
  void check_all_used() const {
    for (const auto& [key, value] : kv)
      if (!used.count(key))
        throw ConfigError("config: unknown key '" + key + "' (value '" + value + "')");
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

KeyValues tokenize(const std::string& text) {
  KeyValues out;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected 'key = value' at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config: empty key at line " + std::to_string(lineno));
    const std::string full = section.empty() ? key : section + "." + key;
    if (out.kv.count(full)) throw ConfigError("config: duplicate key '" + full + "'");
    out.kv[full] = value;
  }
  return out;
}

// --- enum maps ---------------------------------------------------------------

SchemeKind scheme_from(const std::string& s) {
  if (s == "fd1") return SchemeKind::Fd1;
  if (s == "fd2") return SchemeKind::Fd2;
  if (s == "fv") return SchemeKind::Fv;
  throw ConfigError("config: scenario.scheme must be fd1|fd2|fv, got '" + s + "'");
}
const char* scheme_to(SchemeKind k) {
  switch (k) {
    case SchemeKind::Fd1: return "fd1";
    case SchemeKind::Fd2: return "fd2";
    default: return "fv";
  }
}

BathymetryKind bathy_from(const std::string& s) {
  if (s == "flat") return BathymetryKind::Flat;
  if (s == "xing_shu") return BathymetryKind::XingShu;
  if (s == "tanh_shelf") return BathymetryKind::TanhShelf;
  if (s == "parabolic_shelf") return BathymetryKind::ParabolicShelf;
  throw ConfigError("config: bathymetry.kind '" + s + "' unknown");
}
const char* bathy_to(BathymetryKind k) {
  switch (k) {
    case BathymetryKind::Flat: return "flat";
    case BathymetryKind::XingShu: return "xing_shu";
    case BathymetryKind::TanhShelf: return "tanh_shelf";
    default: return "parabolic_shelf";
  }
}

InitialKind initial_from(const std::string& s) {
  if (s == "rest") return InitialKind::Rest;
  if (s == "xing_shu") return InitialKind::XingShu;
  if (s == "vortex") return InitialKind::Vortex;
  throw ConfigError("config: initial.kind '" + s + "' unknown");
}
const char* initial_to(InitialKind k) {
  switch (k) {
    case InitialKind::Rest: return "rest";
    case InitialKind::XingShu: return "xing_shu";
    default: return "vortex";
  }
}

BcKind bc_from(const std::string& s) {
  if (s == "reflective") return BcKind::Reflective;
  if (s == "absorbing") return BcKind::Absorbing;
  if (s == "inflow_noslip") return BcKind::InflowNoslip;
  if (s == "inflow_freeslip") return BcKind::InflowFreeslip;
  if (s == "inflow_balanced") return BcKind::InflowBalanced;
  if (s == "inflow_geostrophic") return BcKind::InflowGeostrophic;
  if (s == "blended") return BcKind::Blended;
  if (s == "periodic") return BcKind::Periodic;
  throw ConfigError("config: boundary kind '" + s + "' unknown");
}
const char* bc_to(BcKind k) {
  switch (k) {
    case BcKind::Reflective: return "reflective";
    case BcKind::Absorbing: return "absorbing";
    case BcKind::InflowNoslip: return "inflow_noslip";
    case BcKind::InflowFreeslip: return "inflow_freeslip";
    case BcKind::InflowBalanced: return "inflow_balanced";
    case BcKind::InflowGeostrophic: return "inflow_geostrophic";
    case BcKind::Blended: return "blended";
    default: return "periodic";
  }
}

SmagorinskyForm damping_from(const std::string& s) {
  if (s == "off") return SmagorinskyForm::Off;
  if (s == "paper") return SmagorinskyForm::Paper;
  if (s == "standard") return SmagorinskyForm::Standard;
  throw ConfigError("config: damping.form '" + s + "' unknown");
}
const char* damping_to(SmagorinskyForm f) {
  switch (f) {
    case SmagorinskyForm::Off: return "off";
    case SmagorinskyForm::Paper: return "paper";
    default: return "standard";
  }
}

const char* edge_name(Edge e) {
  switch (e) {
    case Edge::South: return "south";
    case Edge::North: return "north";
    case Edge::West: return "west";
    default: return "east";
  }
}

void parse_edge(const KeyValues& kv, Edge edge, BoundarySpec& spec) {
  const std::string sec = std::string("boundary.") + edge_name(edge) + ".";
  spec.kind = bc_from(kv.get(sec + "kind"));
  const bool wants_jet =
      spec.kind == BcKind::InflowNoslip || spec.kind == BcKind::InflowFreeslip ||
      spec.kind == BcKind::InflowBalanced || spec.kind == BcKind::InflowGeostrophic ||
      spec.kind == BcKind::Blended;
  if (wants_jet) {
    JetProfile jet;
    jet.l_b = kv.num(sec + "jet_l_b");
    jet.b = kv.num(sec + "jet_b");
    jet.v_max = kv.num(sec + "jet_v_max");
    const std::string growth = kv.get_or(sec + "jet_growth", "exponential");
    if (growth == "exponential") {
      jet.growth = GrowthLaw::Exponential;
      jet.sigma = kv.num(sec + "jet_sigma");
    } else if (growth == "polynomial") {
      jet.growth = GrowthLaw::Polynomial;
      jet.t_ramp = kv.num(sec + "jet_t_ramp");
    } else {
      throw ConfigError("config: " + sec + "jet_growth must be exponential|polynomial");
    }
    jet.patch_half_width = kv.num_or(sec + "jet_patch_half_width", 0.0);
    jet.anchor_x = kv.num_or(sec + "anchor_x", 0.0);
    jet.anchor_eta = kv.num_or(sec + "anchor_eta", 0.0);
    spec.jet = jet;
  }
  if (spec.kind == BcKind::Blended) {
    BlendProfile blend;
    blend.t_w = kv.num(sec + "blend_t_w");
    blend.t_e = kv.num(sec + "blend_t_e");
    blend.r = kv.num(sec + "blend_r");
    spec.blend = blend;
  }
}

void emit_edge(std::ostringstream& os, Edge edge, const BoundarySpec& spec) {
  char buf[160];
  os << "[boundary." << edge_name(edge) << "]\n";
  os << "kind = " << bc_to(spec.kind) << "\n";
  if (spec.jet) {
    const JetProfile& j = *spec.jet;
    std::snprintf(buf, sizeof buf, "jet_l_b = %.17g\njet_b = %.17g\njet_v_max = %.17g\n",
                  j.l_b, j.b, j.v_max);
    os << buf;
    if (j.growth == GrowthLaw::Exponential) {
      std::snprintf(buf, sizeof buf, "jet_growth = exponential\njet_sigma = %.17g\n", j.sigma);
    } else {
      std::snprintf(buf, sizeof buf, "jet_growth = polynomial\njet_t_ramp = %.17g\n", j.t_ramp);
    }
    os << buf;
    if (j.patch_half_width != 0.0) {
      std::snprintf(buf, sizeof buf, "jet_patch_half_width = %.17g\n", j.patch_half_width);
      os << buf;
    }
    if (spec.kind == BcKind::InflowBalanced || spec.kind == BcKind::InflowGeostrophic) {
      std::snprintf(buf, sizeof buf, "anchor_x = %.17g\nanchor_eta = %.17g\n", j.anchor_x,
                    j.anchor_eta);
      os << buf;
    }
  }
  if (spec.blend) {
    std::snprintf(buf, sizeof buf, "blend_t_w = %.17g\nblend_t_e = %.17g\nblend_r = %.17g\n",
                  spec.blend->t_w, spec.blend->t_e, spec.blend->r);
    os << buf;
  }
  os << "\n";
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& text) {
  const KeyValues kv = tokenize(text);
  ScenarioConfig c;

  c.name = kv.get_or("scenario.name", "custom");
  c.scheme = scheme_from(kv.get_or("scenario.scheme", "fv"));

  c.nx = kv.integer("grid.nx");
  c.ny = kv.integer("grid.ny");
  c.lx = kv.num("grid.lx");
  c.ly = kv.num("grid.ly");
  c.x0 = kv.num_or("grid.x0", 0.0);
  c.y0 = kv.num_or("grid.y0", 0.0);

  c.consts.g = kv.num("physics.g");
  c.consts.f = kv.num("physics.f");

  c.bathy.kind = bathy_from(kv.get("bathymetry.kind"));
  switch (c.bathy.kind) {
    case BathymetryKind::Flat: c.bathy.z0 = kv.num("bathymetry.z0"); break;
    case BathymetryKind::XingShu: break;
    case BathymetryKind::TanhShelf:
      c.bathy.d_s = kv.num("bathymetry.d_s");
      c.bathy.d_o = kv.num("bathymetry.d_o");
      c.bathy.x_s = kv.num("bathymetry.x_s");
      c.bathy.x_o = kv.num("bathymetry.x_o");
      break;
    case BathymetryKind::ParabolicShelf:
      c.bathy.d_s = kv.num("bathymetry.d_s");
      c.bathy.d_o = kv.num("bathymetry.d_o");
      c.bathy.x_s = kv.num("bathymetry.x_s");
      c.bathy.x_l = kv.num("bathymetry.x_l");
      break;
  }

  c.initial = initial_from(kv.get_or("initial.kind", "rest"));
  c.eta0 = kv.num_or("initial.eta0", 0.0);
  if (c.initial == InitialKind::Vortex) {
    c.vortex.q_bar = kv.num("initial.q_bar");
    c.vortex.q_amp = kv.num("initial.q_amp");
    c.vortex.a = kv.num("initial.a");
    c.vortex.m = kv.integer("initial.m");
    c.vortex.n = kv.integer("initial.n");
    c.vortex.c_m = kv.num("initial.c_m");
    c.vortex.c_n = kv.num("initial.c_n");
  }

  for (Edge e : {Edge::South, Edge::North, Edge::West, Edge::East})
    parse_edge(kv, e, c.bcs[e]);

  c.cfl = kv.num_or("time.cfl", 0.5);
  c.t_end = kv.num("time.t_end");
  c.dt_max = kv.num_or("time.dt_max", 1.0);

  c.damping = damping_from(kv.get_or("damping.form", "off"));
  c.q_smag = kv.num_or("damping.q", 0.1);

  if (kv.has("output.snapshot_times")) {
    std::istringstream ts(kv.get("output.snapshot_times"));
    double t;
    while (ts >> t) c.output.snapshot_times.push_back(t);
  }
  if (kv.has("output.probe")) {
    std::istringstream ps(kv.get("output.probe"));
    ProbeSpec p;
    if (!(ps >> p.x >> p.y >> p.interval))
      throw ConfigError("config: output.probe must be 'x y interval'");
    c.output.probe = p;
  }

  kv.check_all_used();
  c.validate();
  return c;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_scenario_config(buf.str());
}

std::string serialize_scenario_config(const ScenarioConfig& c) {
  std::ostringstream os;
  char buf[200];
  os << "# rsw scenario configuration\n";
  os << "[scenario]\n";
  os << "name = " << c.name << "\n";
  os << "scheme = " << scheme_to(c.scheme) << "\n\n";

  os << "[grid]\n";
  std::snprintf(buf, sizeof buf, "nx = %d\nny = %d\nlx = %.17g\nly = %.17g\n", c.nx,
                c.ny, c.lx, c.ly);
  os << buf;
  std::snprintf(buf, sizeof buf, "x0 = %.17g\ny0 = %.17g\n\n", c.x0, c.y0);
  os << buf;

  os << "[physics]\n";
  std::snprintf(buf, sizeof buf, "g = %.17g\nf = %.17g\n\n", c.consts.g, c.consts.f);
  os << buf;

  os << "[bathymetry]\n";
  os << "kind = " << bathy_to(c.bathy.kind) << "\n";
  switch (c.bathy.kind) {
    case BathymetryKind::Flat:
      std::snprintf(buf, sizeof buf, "z0 = %.17g\n", c.bathy.z0);
      os << buf;
      break;
    case BathymetryKind::XingShu:
      break;
    case BathymetryKind::TanhShelf:
      std::snprintf(buf, sizeof buf, "d_s = %.17g\nd_o = %.17g\nx_s = %.17g\nx_o = %.17g\n",
                    c.bathy.d_s, c.bathy.d_o, c.bathy.x_s, c.bathy.x_o);
      os << buf;
      break;
    case BathymetryKind::ParabolicShelf:
      std::snprintf(buf, sizeof buf, "d_s = %.17g\nd_o = %.17g\nx_s = %.17g\nx_l = %.17g\n",
                    c.bathy.d_s, c.bathy.d_o, c.bathy.x_s, c.bathy.x_l);
      os << buf;
      break;
  }
  os << "\n[initial]\n";
  os << "kind = " << initial_to(c.initial) << "\n";
  if (c.initial == InitialKind::Rest) {
    std::snprintf(buf, sizeof buf, "eta0 = %.17g\n", c.eta0);
    os << buf;
  }
  if (c.initial == InitialKind::Vortex) {
    std::snprintf(buf, sizeof buf,
                  "q_bar = %.17g\nq_amp = %.17g\na = %.17g\nm = %d\nn = %d\n"
                  "c_m = %.17g\nc_n = %.17g\n",
                  c.vortex.q_bar, c.vortex.q_amp, c.vortex.a, c.vortex.m, c.vortex.n,
                  c.vortex.c_m, c.vortex.c_n);
    os << buf;
  }
  os << "\n";

  for (Edge e : {Edge::South, Edge::North, Edge::West, Edge::East})
    emit_edge(os, e, c.bcs[e]);

  os << "[time]\n";
  std::snprintf(buf, sizeof buf, "cfl = %.17g\nt_end = %.17g\ndt_max = %.17g\n\n", c.cfl,
                c.t_end, c.dt_max);
  os << buf;

  os << "[damping]\n";
  os << "form = " << damping_to(c.damping) << "\n";
  std::snprintf(buf, sizeof buf, "q = %.17g\n\n", c.q_smag);
  os << buf;

  os << "[output]\n";
  if (!c.output.snapshot_times.empty()) {
    os << "snapshot_times =";
    for (double t : c.output.snapshot_times) {
      std::snprintf(buf, sizeof buf, " %.17g", t);
      os << buf;
    }
    os << "\n";
  }
  if (c.output.probe) {
    std::snprintf(buf, sizeof buf, "probe = %.17g %.17g %.17g\n", c.output.probe->x,
                  c.output.probe->y, c.output.probe->interval);
    os << buf;
  }
  return os.str();
}

void save_scenario_config(const ScenarioConfig& config, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("config: cannot write '" + path + "'");
  os << serialize_scenario_config(config);
}

}  // namespace rsw
