#ifndef RSW_BOUNDARY_HPP_
#define RSW_BOUNDARY_HPP_

#include <array>
#include <optional>
#include <vector>

#include "rsw/core.hpp"

namespace rsw {

enum class Edge { South = 0, North = 1, West = 2, East = 3 };

enum class BcKind {
  Reflective,
  Absorbing,
  InflowNoslip,
  InflowFreeslip,
  InflowBalanced,
  InflowGeostrophic,
  Blended,
  Periodic,
};

enum class GrowthLaw { Exponential, Polynomial };

//! Gaussian jet profile with a start-up law. Positions in metres along the
//! edge, velocities in m/s. patch_half_width > 0 restricts the inflow to
//! |x - l_b| <= patch_half_width with absorbing conditions outside.
struct JetProfile {
  double l_b = 0.0;    // jet centre
  double b = 1.0;      // jet width
  double v_max = 0.0;  // peak inflow velocity
  GrowthLaw growth = GrowthLaw::Exponential;
  double sigma = 0.0;   // exponential growth rate
  double t_ramp = 1.0;  // polynomial ramp duration
  double patch_half_width = 0.0;  // 0 = jet profile on the whole edge
  double anchor_x = 0.0;          // balanced variants: far-field reference
  double anchor_eta = 0.0;
};

//! Convex blend between inflow and absorbing fluxes along an edge.
struct BlendProfile {
  double t_w = 0.0;  // west transition centre
  double t_e = 0.0;  // east transition centre
  double r = 0.0;    // smoothing radius
};

struct BoundarySpec {
  BcKind kind = BcKind::Reflective;
  std::optional<JetProfile> jet;
  std::optional<BlendProfile> blend;
};

//! One spec per grid edge, indexed by Edge.
struct BoundarySet {
  std::array<BoundarySpec, 4> specs;
  BoundarySpec& operator[](Edge e) { return specs[static_cast<int>(e)]; }
  const BoundarySpec& operator[](Edge e) const { return specs[static_cast<int>(e)]; }
  void validate(const Grid& grid) const;
};

//! C^4 ramp: 70 t^9 - 315 t^8 + 540 t^7 - 420 t^6 + 126 t^5 on [0,1], 1 beyond.
double growth_gamma(double tau);

//! Theta(x) = x^5 [126 + x(-420 + x(540 + x(-315 + 70 x)))] on [0,1].
double theta_poly(double x);

//! Blend factor chi(x) in [0,1]; 0 outside [t_w - r, t_e + r], 1 on the
//! inner plateau, Theta ramps in between.
double chi_blend(double x, const BlendProfile& blend);

//! Inflow velocity of the jet at tangential position x and time t.
double jet_velocity(const JetProfile& jet, double x, double t);

// ---------------------------------------------------------------------------
// Boundary states for the finite-volume Riemann closures. These functions
// work in an edge-local frame q = (H, tangential flux, normal flux); the
// caller maps global components in and out. eta is the surface elevation of
// the interior trace (needed by the radiation condition).

struct AbsorbingState {
  std::array<double, 3> q;  // (H, tangential, outward normal flux)
  bool one_outgoing;        // case (a): normal velocity >= 0
};

//! First-order absorbing (Engquist-Majda / Flather) boundary state from the
//! interior trace, normal flux measured outward.
AbsorbingState absorbing_outflow_state(const std::array<double, 3>& q_out,
                                       double eta, const PhysConsts& consts);

//! Free-slip inflow state: jet normal velocity, tangential velocity copied
//! from the interior. Normal flux measured inward.
std::array<double, 3> freeslip_inflow_state(const std::array<double, 3>& q_in,
                                            double v_jet, const PhysConsts& consts);

//! As free-slip but with the tangential velocity pinned to zero.
std::array<double, 3> noslip_inflow_state(const std::array<double, 3>& q_in,
                                          double v_jet, const PhysConsts& consts);

//! Surface elevation along an inflow edge from the tangential momentum
//! balance. Samples are ordered by the tangential coordinate x (metres);
//! u is the tangential velocity trace, u_t its time derivative, v the
//! inward normal velocity. anchor_eta is eta at x[0]. The integral is
//! evaluated by the trapezoid rule on the given sampling.
std::vector<double> balanced_inflow_eta(const std::vector<double>& x,
                                        const std::vector<double>& u,
                                        const std::vector<double>& u_t,
                                        const std::vector<double>& v,
                                        double anchor_eta,
                                        const PhysConsts& consts);

//! chi-weighted convex combination of the two candidate fluxes.
std::array<double, 3> blended_boundary_flux(const std::array<double, 3>& flux_inflow,
                                            const std::array<double, 3>& flux_absorb,
                                            double x, const BlendProfile& blend);

}  // namespace rsw

#endif  // RSW_BOUNDARY_HPP_
