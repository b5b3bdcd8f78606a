// Test-only reference implementations, kept independent of the library's
// computational paths.
#ifndef RSW_TESTS_ORACLES_HPP_
#define RSW_TESTS_ORACLES_HPP_

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "rsw/core.hpp"

namespace rsw_test {

// Exact cell average of sum(c_k x^k) over [a, b].
inline double poly_average(const std::vector<double>& coef, double a, double b) {
  double integral = 0.0;
  double pa = a, pb = b;
  for (std::size_t k = 0; k < coef.size(); ++k) {
    integral += coef[k] * (pb - pa) / static_cast<double>(k + 1);
    pa *= a;
    pb *= b;
  }
  return integral / (b - a);
}

inline double poly_eval(const std::vector<double>& coef, double x) {
  double v = 0.0;
  for (std::size_t k = coef.size(); k-- > 0;) v = v * x + coef[k];
  return v;
}

// Roe flux via the full matrix route: build the Roe-average right eigenvector
// matrix, solve R alpha = dQ by Gaussian elimination, apply the fixed |Lambda|
// and assemble 0.5 (F_L + F_R) - 0.5 R |Lambda| alpha.
inline std::array<double, 3> roe_flux_eigen_oracle(const std::array<double, 3>& ql,
                                                   const std::array<double, 3>& qr,
                                                   rsw::Axis axis, double g) {
  using std::sqrt;
  // rotate into the frame where component 1 is the normal flux
  auto rot = [&](const std::array<double, 3>& q) {
    return axis == rsw::Axis::X ? q : std::array<double, 3>{q[0], q[2], q[1]};
  };
  const std::array<double, 3> a = rot(ql), b = rot(qr);
  const double hl = a[0], hr = b[0];
  const double ul = a[1] / hl, ur = b[1] / hr;
  const double vl = a[2] / hl, vr = b[2] / hr;
  const double sl = sqrt(hl), sr = sqrt(hr);
  const double u = (sl * ul + sr * ur) / (sl + sr);
  const double v = (sl * vl + sr * vr) / (sl + sr);
  const double c = sqrt(0.5 * g * (hl + hr));

  double R[3][3] = {{1.0, 0.0, 1.0}, {u - c, 0.0, u + c}, {v, 1.0, v}};
  double rhs[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};

  // Gaussian elimination with partial pivoting
  int piv[3] = {0, 1, 2};
  double m[3][4];
  for (int r = 0; r < 3; ++r) {
    for (int cidx = 0; cidx < 3; ++cidx) m[r][cidx] = R[r][cidx];
    m[r][3] = rhs[r];
  }
  for (int col = 0; col < 3; ++col) {
    int best = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
    for (int cidx = 0; cidx < 4; ++cidx) std::swap(m[col][cidx], m[best][cidx]);
    for (int r = col + 1; r < 3; ++r) {
      const double fac = m[r][col] / m[col][col];
      for (int cidx = col; cidx < 4; ++cidx) m[r][cidx] -= fac * m[col][cidx];
    }
  }
  double alpha[3];
  for (int r = 2; r >= 0; --r) {
    double s = m[r][3];
    for (int cidx = r + 1; cidx < 3; ++cidx) s -= m[r][cidx] * alpha[cidx];
    alpha[r] = s / m[r][r];
  }
  (void)piv;

  const double lam[3] = {u - c, u, u + c};
  const double delta = 0.1 * c;
  double abslam[3];
  for (int k = 0; k < 3; ++k) {
    const double al = std::abs(lam[k]);
    abslam[k] = (k != 1 && al < delta) ? 0.5 * (lam[k] * lam[k] / delta + delta) : al;
  }

  auto flux = [&](const std::array<double, 3>& q) {
    return std::array<double, 3>{q[1], q[1] * q[1] / q[0] + 0.5 * g * q[0] * q[0],
                                 q[1] * q[2] / q[0]};
  };
  const std::array<double, 3> fl = flux(a), fr = flux(b);
  std::array<double, 3> out;
  for (int comp = 0; comp < 3; ++comp) {
    double diss = 0.0;
    for (int k = 0; k < 3; ++k) diss += abslam[k] * alpha[k] * R[comp][k];
    out[comp] = 0.5 * (fl[comp] + fr[comp]) - 0.5 * diss;
  }
  return axis == rsw::Axis::X ? out : std::array<double, 3>{out[0], out[2], out[1]};
}

// Adaptive Simpson quadrature.
inline double simpson_adaptive(const std::function<double(double)>& f, double a,
                               double b, double tol, int depth = 28) {
  struct Impl {
    const std::function<double(double)>& fn;
    double run(double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = fn(lm), frm = fn(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } impl{f};
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return impl.run(a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace rsw_test

#endif  // RSW_TESTS_ORACLES_HPP_
