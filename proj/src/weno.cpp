#include "rsw/weno.hpp"

#include <cmath>
#include <stdexcept>

namespace rsw {
namespace weno {

namespace {

// Optimal linear weights reproducing the five-cell quartic at xi.
void optimal_weights(double xi, double gamma[3]) {
  const double x2 = xi * xi;
  const double den0 = 80.0 * (12.0 * x2 + 12.0 * xi - 1.0);
  const double den2 = 80.0 * (12.0 * x2 - 12.0 * xi - 1.0);
  if (std::abs(den0) < 1e-3 || std::abs(den2) < 1e-3)
    throw std::invalid_argument("weno: degenerate target position");
  gamma[0] = (80.0 * x2 * x2 - 160.0 * x2 * xi - 120.0 * x2 + 200.0 * xi + 9.0) / den0;
  gamma[2] = (80.0 * x2 * x2 + 160.0 * x2 * xi - 120.0 * x2 - 200.0 * xi + 9.0) / den2;
  gamma[1] = 1.0 - gamma[0] - gamma[2];
}

inline double combine(const double beta[3], const double gamma[3], const double v[3]) {
  const double s0 = (kEpsilon + beta[0]) * (kEpsilon + beta[0]);
  const double s1 = (kEpsilon + beta[1]) * (kEpsilon + beta[1]);
  const double s2 = (kEpsilon + beta[2]) * (kEpsilon + beta[2]);
  const double a0 = gamma[0] * s1 * s2;
  const double a1 = gamma[1] * s0 * s2;
  const double a2 = gamma[2] * s0 * s1;
  return (a0 * v[0] + a1 * v[1] + a2 * v[2]) / (a0 + a1 + a2);
}

}  // namespace

Target make_target(double xi) {
  Target t;
  t.xi = xi;
  const double x2 = xi * xi;
  // sub-stencil {-2,-1,0}
  t.c[0][0] = 0.5 * x2 + 0.5 * xi - 1.0 / 24.0;
  t.c[0][1] = -x2 - 2.0 * xi + 1.0 / 12.0;
  t.c[0][2] = 0.5 * x2 + 1.5 * xi + 23.0 / 24.0;
  // sub-stencil {-1,0,1}
  t.c[1][0] = 0.5 * x2 - 0.5 * xi - 1.0 / 24.0;
  t.c[1][1] = 13.0 / 12.0 - x2;
  t.c[1][2] = 0.5 * x2 + 0.5 * xi - 1.0 / 24.0;
  // sub-stencil {0,1,2}
  t.c[2][0] = 0.5 * x2 - 1.5 * xi + 23.0 / 24.0;
  t.c[2][1] = -x2 + 2.0 * xi + 1.0 / 12.0;
  t.c[2][2] = 0.5 * x2 - 0.5 * xi - 1.0 / 24.0;

  double gamma[3];
  optimal_weights(xi, gamma);
  t.split = gamma[0] < 0.0 || gamma[1] < 0.0 || gamma[2] < 0.0;
  if (!t.split) {
    for (int k = 0; k < 3; ++k) {
      t.gp[k] = gamma[k];
      t.gm[k] = 0.0;
    }
    t.sigma_p = 1.0;
    t.sigma_m = 0.0;
  } else {
    // Shi-Hu-Shu splitting with theta = 3.
    double p[3], m[3];
    double sp = 0.0, sm = 0.0;
    for (int k = 0; k < 3; ++k) {
      p[k] = 0.5 * (gamma[k] + 3.0 * std::abs(gamma[k]));
      m[k] = p[k] - gamma[k];
      sp += p[k];
      sm += m[k];
    }
    for (int k = 0; k < 3; ++k) {
      t.gp[k] = p[k] / sp;
      t.gm[k] = m[k] / sm;
    }
    t.sigma_p = sp;
    t.sigma_m = sm;
  }
  return t;
}

double reconstruct(const double q[5], const double beta[3], const Target& t) {
  double v[3];
  for (int k = 0; k < 3; ++k)
    v[k] = t.c[k][0] * q[k] + t.c[k][1] * q[k + 1] + t.c[k][2] * q[k + 2];
  if (!t.split) return combine(beta, t.gp, v);
  const double rp = combine(beta, t.gp, v);
  const double rm = combine(beta, t.gm, v);
  return t.sigma_p * rp - t.sigma_m * rm;
}

double reconstruct(const double q[5], const Target& t) {
  double beta[3];
  smoothness(q, beta);
  return reconstruct(q, beta, t);
}

}  // namespace weno

double weno5_line(const double stencil5[5], double xi) {
  return weno::reconstruct(stencil5, weno::make_target(xi));
}

}  // namespace rsw
