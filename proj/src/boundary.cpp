#include "rsw/boundary.hpp"

#include <cmath>

namespace rsw {

void BoundarySet::validate(const Grid& grid) const {
  const bool px = (*this)[Edge::West].kind == BcKind::Periodic ||
                  (*this)[Edge::East].kind == BcKind::Periodic;
  const bool py = (*this)[Edge::South].kind == BcKind::Periodic ||
                  (*this)[Edge::North].kind == BcKind::Periodic;
  if (px && ((*this)[Edge::West].kind != (*this)[Edge::East].kind))
    throw ConfigError("boundary: periodic west/east edges must be paired");
  if (py && ((*this)[Edge::South].kind != (*this)[Edge::North].kind))
    throw ConfigError("boundary: periodic south/north edges must be paired");
  if (px != grid.periodic_x || py != grid.periodic_y)
    throw ConfigError("boundary: periodic specs disagree with grid flags");
  for (const BoundarySpec& s : specs) {
    switch (s.kind) {
      case BcKind::InflowNoslip:
      case BcKind::InflowFreeslip:
      case BcKind::InflowBalanced:
      case BcKind::InflowGeostrophic:
        if (!s.jet) throw ConfigError("boundary: inflow edge needs a jet profile");
        break;
      case BcKind::Blended:
        if (!s.jet || !s.blend)
          throw ConfigError("boundary: blended edge needs jet and blend profiles");
        if (s.blend->t_w + s.blend->r > s.blend->t_e - s.blend->r + 1e-9)
          throw ConfigError("boundary: blend transitions overlap (t_w + r > t_e - r)");
        break;
      default:
        break;
    }
    if (s.jet && !(s.jet->b > 0.0))
      throw ConfigError("boundary: jet width must be positive");
  }
}

double theta_poly(double x) {
  const double x2 = x * x;
  return x2 * x2 * x * (126.0 + x * (-420.0 + x * (540.0 + x * (-315.0 + 70.0 * x))));
}

double growth_gamma(double tau) {
  if (tau <= 0.0) return 0.0;
  if (tau >= 1.0) return 1.0;
  return theta_poly(tau);
}

double chi_blend(double x, const BlendProfile& blend) {
  if (x < blend.t_w - blend.r || x > blend.t_e + blend.r) return 0.0;
  if (x <= blend.t_w + blend.r) return theta_poly((x - blend.t_w + blend.r) / (2.0 * blend.r));
  if (x < blend.t_e - blend.r) return 1.0;
  return theta_poly((2.0 * blend.r - (x - blend.t_e + blend.r)) / (2.0 * blend.r));
}

double jet_velocity(const JetProfile& jet, double x, double t) {
  const double s = 2.0 * (x - jet.l_b) / jet.b;
  const double profile = jet.v_max * std::exp(-s * s);
  const double ramp = jet.growth == GrowthLaw::Exponential
                          ? 1.0 - std::exp(-jet.sigma * t)
                          : growth_gamma(t / jet.t_ramp);
  return profile * ramp;
}

AbsorbingState absorbing_outflow_state(const std::array<double, 3>& q_out,
                                       double eta, const PhysConsts& consts) {
  const double h = q_out[0];
  const double w = q_out[2] / h;  // outward normal velocity
  const double c = std::sqrt(consts.g * h);
  if (std::abs(w) >= c)
    throw SubcriticalityError("absorbing boundary: supercritical interior state (|v| = " +
                              std::to_string(std::abs(w)) + " >= c = " + std::to_string(c) + ")");
  const double v_eta = eta * c;
  const double denom = q_out[2] - h * c;  // = H (w - c) < 0 for subcritical flow
  if (denom == 0.0)
    throw SubcriticalityError("absorbing boundary: sonic state, V - H sqrt(gH) = 0");
  const double beta = (v_eta - q_out[2]) / denom;
  const double ha = h * (1.0 + beta);
  if (!(ha > 0.0))
    throw SubcriticalityError("absorbing boundary: constructed depth not positive");
  AbsorbingState out;
  out.one_outgoing = w >= 0.0;
  out.q = {ha, out.one_outgoing ? q_out[1] * (1.0 + beta) : 0.0, v_eta};
  return out;
}

std::array<double, 3> freeslip_inflow_state(const std::array<double, 3>& q_in,
                                            double v_jet, const PhysConsts& consts) {
  const double h = q_in[0];
  const double c = std::sqrt(consts.g * h);
  const double w = q_in[2] / h;  // inward normal velocity
  const double denom = w + c - v_jet;
  if (!(denom > 0.0))
    throw SubcriticalityError("inflow boundary: supercritical inflow, v + sqrt(gH) - v_jet <= 0");
  const double ha = h * c / denom;
  return {ha, ha * q_in[1] / h, ha * v_jet};
}

std::array<double, 3> noslip_inflow_state(const std::array<double, 3>& q_in,
                                          double v_jet, const PhysConsts& consts) {
  std::array<double, 3> qa = freeslip_inflow_state(q_in, v_jet, consts);
  qa[1] = 0.0;
  return qa;
}

std::vector<double> balanced_inflow_eta(const std::vector<double>& x,
                                        const std::vector<double>& u,
                                        const std::vector<double>& u_t,
                                        const std::vector<double>& v,
                                        double anchor_eta,
                                        const PhysConsts& consts) {
  const std::size_t n = x.size();
  std::vector<double> eta(n);
  const double u0sq = u.empty() ? 0.0 : u[0] * u[0];
  double integral = 0.0;  // of (u_t - f v) from x[0]
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      const double dx = x[k] - x[k - 1];
      integral += 0.5 * dx * ((u_t[k] - consts.f * v[k]) + (u_t[k - 1] - consts.f * v[k - 1]));
    }
    eta[k] = anchor_eta - 0.5 * (u[k] * u[k] - u0sq) / consts.g - integral / consts.g;
  }
  return eta;
}

std::array<double, 3> blended_boundary_flux(const std::array<double, 3>& flux_inflow,
                                            const std::array<double, 3>& flux_absorb,
                                            double x, const BlendProfile& blend) {
  const double chi = chi_blend(x, blend);
  return {chi * flux_inflow[0] + (1.0 - chi) * flux_absorb[0],
          chi * flux_inflow[1] + (1.0 - chi) * flux_absorb[1],
          chi * flux_inflow[2] + (1.0 - chi) * flux_absorb[2]};
}

}  // namespace rsw
