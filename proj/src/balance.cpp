#include "rsw/balance.hpp"

#include <cmath>
#include <vector>

namespace rsw {

namespace {

// d/dx with periodic wrap or second-order one-sided rows at open edges
double ddx(const Field2D& f, int i, int j, double hx, bool periodic) {
  const int nx = f.nx();
  if (periodic) {
    const int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
    return (f(ip, j) - f(im, j)) / (2.0 * hx);
  }
  if (i == 0) return (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) / (2.0 * hx);
  if (i == nx - 1)
    return (3.0 * f(nx - 1, j) - 4.0 * f(nx - 2, j) + f(nx - 3, j)) / (2.0 * hx);
  return (f(i + 1, j) - f(i - 1, j)) / (2.0 * hx);
}

double ddy(const Field2D& f, int i, int j, double hy, bool periodic) {
  const int ny = f.ny();
  if (periodic) {
    const int jp = (j + 1) % ny, jm = (j + ny - 1) % ny;
    return (f(i, jp) - f(i, jm)) / (2.0 * hy);
  }
  if (j == 0) return (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) / (2.0 * hy);
  if (j == ny - 1)
    return (3.0 * f(i, ny - 1) - 4.0 * f(i, ny - 2) + f(i, ny - 3)) / (2.0 * hy);
  return (f(i, j + 1) - f(i, j - 1)) / (2.0 * hy);
}

}  // namespace

Field2D potential_vorticity(const FlowState& state, const Bathymetry& bathy,
                            const PhysConsts& consts, const Grid& grid) {
  const int nx = grid.nx, ny = grid.ny;
  Field2D u(nx, ny), v(nx, ny), q(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double h = state.eta(i, j) - bathy.z(i, j);
      if (!(h > 0.0)) throw PositivityError(i, j, h, "potential_vorticity");
      u(i, j) = state.u_flux(i, j) / h;
      v(i, j) = state.v_flux(i, j) / h;
    }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double vx = ddx(v, i, j, grid.hx, grid.periodic_x);
      const double uy = ddy(u, i, j, grid.hy, grid.periodic_y);
      const double h = state.eta(i, j) - bathy.z(i, j);
      q(i, j) = (vx - uy + consts.f) / h;
    }
  return q;
}

double dritschel_pv(double x, double y, const DritschelParams& p) {
  const double yhat = y + p.c_m * std::sin(p.m * x) + p.c_n * std::sin(p.n * x);
  if (std::abs(yhat) >= 2.0 * p.a) return p.q_bar;
  const double sgn = yhat >= 0.0 ? 1.0 : -1.0;
  return p.q_bar + p.q_amp * sgn * (p.a - std::abs(std::abs(yhat) - p.a));
}

// --- MINRES for the balance equation ------------------------------------------

namespace {

// A x = -lap(x) + diag * x on the periodic grid
void apply_operator(const Field2D& diag, const Grid& grid,
                    const std::vector<double>& x, std::vector<double>& y) {
  const int nx = grid.nx, ny = grid.ny;
  const double ihx2 = 1.0 / (grid.hx * grid.hx);
  const double ihy2 = 1.0 / (grid.hy * grid.hy);
  for (int j = 0; j < ny; ++j) {
    const int jp = (j + 1) % ny, jm = (j + ny - 1) % ny;
    for (int i = 0; i < nx; ++i) {
      const int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
      const std::size_t k = static_cast<std::size_t>(j) * nx + i;
      const double lap = (x[static_cast<std::size_t>(j) * nx + ip] +
                          x[static_cast<std::size_t>(j) * nx + im] -
                          2.0 * x[k]) * ihx2 +
                         (x[static_cast<std::size_t>(jp) * nx + i] +
                          x[static_cast<std::size_t>(jm) * nx + i] -
                          2.0 * x[k]) * ihy2;
      y[k] = -lap + diag(i, j) * x[k];
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

Field2D solve_balance(const BalanceProblem& problem) {
  const Grid& grid = problem.grid;
  if (!grid.periodic_x || !grid.periodic_y)
    throw ConfigError("solve_balance: requires a doubly periodic grid");
  const int nx = grid.nx, ny = grid.ny;
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  const double g = problem.consts.g, f = problem.consts.f;

  Field2D diag(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) diag(i, j) = f * problem.q(i, j) / g;

  std::vector<double> b(n, f * f / g);
  std::vector<double> x(n, 0.0);

  // MINRES (Paige & Saunders), no preconditioning
  std::vector<double> r1 = b, r2 = b, v(n), y = b, w(n, 0.0), w1(n, 0.0), w2(n, 0.0);
  double beta1 = std::sqrt(dot(b, b));
  if (beta1 == 0.0) return Field2D(nx, ny, 0.0);  // b = 0 only when f = 0
  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
  double qrnorm = beta1, phibar = beta1, cs = -1.0, sn = 0.0;

  bool converged = false;
  for (int it = 1; it <= problem.max_iter; ++it) {
    const double s = 1.0 / beta;
    for (std::size_t k = 0; k < n; ++k) v[k] = y[k] * s;
    apply_operator(diag, grid, v, y);
    if (it >= 2)
      for (std::size_t k = 0; k < n; ++k) y[k] -= (beta / oldb) * r1[k];
    const double alfa = dot(v, y);
    for (std::size_t k = 0; k < n; ++k) y[k] -= (alfa / beta) * r2[k];
    r1 = r2;
    r2 = y;
    oldb = beta;
    beta = std::sqrt(dot(y, y));

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;

    double gamma = std::sqrt(gbar * gbar + beta * beta);
    if (gamma < 1e-300) gamma = 1e-300;
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    w1 = w2;
    w2 = w;
    const double denom = 1.0 / gamma;
    for (std::size_t k = 0; k < n; ++k)
      w[k] = (v[k] - oldeps * w1[k] - delta * w2[k]) * denom;
    for (std::size_t k = 0; k < n; ++k) x[k] += phi * w[k];

    qrnorm = phibar;
    if (qrnorm <= problem.tol * beta1) {
      converged = true;
      break;
    }
  }

  // verify the true residual, not just the recurrence estimate
  std::vector<double> ax(n);
  apply_operator(diag, grid, x, ax);
  double rr = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = b[k] - ax[k];
    rr += r * r;
  }
  const double rel = std::sqrt(rr) / beta1;
  if (!converged || rel > 10.0 * problem.tol)
    throw SolverError("solve_balance: MINRES did not converge, relative residual " +
                      std::to_string(rel));

  Field2D depth(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) depth(i, j) = x[static_cast<std::size_t>(j) * nx + i];
  return depth;
}

void velocities_from_balance(const Field2D& depth, const PhysConsts& consts,
                             const Grid& grid, Field2D& u, Field2D& v) {
  if (consts.f == 0.0)
    throw ConfigError("velocities_from_balance: f = 0 has no geostrophic balance");
  const int nx = grid.nx, ny = grid.ny;
  u = Field2D(nx, ny);
  v = Field2D(nx, ny);
  const double gf = consts.g / consts.f;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      u(i, j) = -gf * ddy(depth, i, j, grid.hy, grid.periodic_y);
      v(i, j) = gf * ddx(depth, i, j, grid.hx, grid.periodic_x);
    }
}

}  // namespace rsw
