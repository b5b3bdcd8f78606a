#include "rsw/roe.hpp"

#include <cmath>
#include <stdexcept>

namespace rsw {

namespace {

inline double fix_abs(double lambda, double delta) {
  const double a = std::abs(lambda);
  if (a >= delta) return a;
  return 0.5 * (lambda * lambda / delta + delta);
}

// x-directed Roe flux in a frame where q = (H, normal flux, tangential flux).
std::array<double, 3> roe_x(const std::array<double, 3>& ql,
                            const std::array<double, 3>& qr, double g) {
  const double hl = ql[0], hr = qr[0];
  const double ul = ql[1] / hl, ur = qr[1] / hr;
  const double vl = ql[2] / hl, vr = qr[2] / hr;

  const double sl = std::sqrt(hl), sr = std::sqrt(hr);
  const double u = (sl * ul + sr * ur) / (sl + sr);
  const double v = (sl * vl + sr * vr) / (sl + sr);
  const double c = std::sqrt(0.5 * g * (hl + hr));

  const double dh = qr[0] - ql[0];
  const double dn = qr[1] - ql[1];
  const double dt = qr[2] - ql[2];

  const double a1 = 0.5 * ((u + c) * dh - dn) / c;
  const double a2 = dt - v * dh;
  const double a3 = 0.5 * ((c - u) * dh + dn) / c;

  const double delta = 0.1 * c;
  const double l1 = fix_abs(u - c, delta);
  const double l2 = std::abs(u);
  const double l3 = fix_abs(u + c, delta);

  const double fl0 = ql[1];
  const double fl1 = ql[1] * ul + 0.5 * g * hl * hl;
  const double fl2 = ql[1] * vl;
  const double fr0 = qr[1];
  const double fr1 = qr[1] * ur + 0.5 * g * hr * hr;
  const double fr2 = qr[1] * vr;

  // r1 = (1, u-c, v), r2 = (0, 0, 1), r3 = (1, u+c, v)
  return {0.5 * (fl0 + fr0) - 0.5 * (l1 * a1 + l3 * a3),
          0.5 * (fl1 + fr1) - 0.5 * (l1 * a1 * (u - c) + l3 * a3 * (u + c)),
          0.5 * (fl2 + fr2) - 0.5 * (l1 * a1 * v + l2 * a2 + l3 * a3 * v)};
}

}  // namespace

std::array<double, 3> roe_flux(const std::array<double, 3>& ql,
                               const std::array<double, 3>& qr,
                               Axis axis, const PhysConsts& consts) {
  for (int k = 0; k < 3; ++k)
    if (!std::isfinite(ql[k]) || !std::isfinite(qr[k]))
      throw std::invalid_argument("roe_flux: non-finite input state");
  if (!(ql[0] > 0.0) || !(qr[0] > 0.0))
    throw std::invalid_argument("roe_flux: non-positive depth");

  if (axis == Axis::X) return roe_x(ql, qr, consts.g);
  const std::array<double, 3> pl{ql[0], ql[2], ql[1]};
  const std::array<double, 3> pr{qr[0], qr[2], qr[1]};
  const std::array<double, 3> f = roe_x(pl, pr, consts.g);
  return {f[0], f[2], f[1]};
}

}  // namespace rsw
