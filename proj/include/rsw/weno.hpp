#ifndef RSW_WENO_HPP_
#define RSW_WENO_HPP_

namespace rsw {
namespace weno {

// Fifth-order WENO point reconstruction from five consecutive cell averages
// q[0..4] of unit-width cells, the centre cell being q[2]. The target is a
// relative position xi in [-1/2, 1/2] within the centre cell.
//
// Candidate values come from the three quadratic sub-stencils; the optimal
// linear weights depend on xi and are negative at the cell centre, which is
// handled by the positive/negative splitting of Shi, Hu & Shu.

constexpr double kEpsilon = 1e-6;  // smoothness regularisation

//! Precomputed coefficients for one target position.
struct Target {
  double xi = 0.0;
  double c[3][3] = {};   // candidate value coefficients, c[k][m]
  double gp[3] = {};     // normalised positive-part linear weights
  double gm[3] = {};     // normalised negative-part linear weights
  double sigma_p = 1.0;  // positive-part mass
  double sigma_m = 0.0;  // negative-part mass (0 when all weights >= 0)
  bool split = false;
};

Target make_target(double xi);

//! Jiang-Shu smoothness indicators of the three sub-stencils.
inline void smoothness(const double q[5], double beta[3]) {
  const double d0 = q[0] - 2.0 * q[1] + q[2];
  const double d1 = q[1] - 2.0 * q[2] + q[3];
  const double d2 = q[2] - 2.0 * q[3] + q[4];
  const double e0 = q[0] - 4.0 * q[1] + 3.0 * q[2];
  const double e1 = q[1] - q[3];
  const double e2 = 3.0 * q[2] - 4.0 * q[3] + q[4];
  beta[0] = (13.0 / 12.0) * d0 * d0 + 0.25 * e0 * e0;
  beta[1] = (13.0 / 12.0) * d1 * d1 + 0.25 * e1 * e1;
  beta[2] = (13.0 / 12.0) * d2 * d2 + 0.25 * e2 * e2;
}

//! Reconstruct with smoothness indicators already at hand.
double reconstruct(const double q[5], const double beta[3], const Target& t);

//! One-shot reconstruction (computes the indicators internally).
double reconstruct(const double q[5], const Target& t);

}  // namespace weno

//! Spec-level entry point: fifth-order point value at relative offset xi.
double weno5_line(const double stencil5[5], double xi);

}  // namespace rsw

#endif  // RSW_WENO_HPP_
