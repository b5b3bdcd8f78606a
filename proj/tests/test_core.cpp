#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "rsw/core.hpp"

using namespace rsw;

namespace {

Grid unit_grid(int n) {
  Grid g;
  g.nx = g.ny = n;
  g.hx = g.hy = 1.0 / n;
  return g;
}

FlowState rest_state(const Grid& g, double eta) {
  FlowState s;
  s.eta = Field2D(g.nx, g.ny, eta);
  s.u_flux = Field2D(g.nx, g.ny, 0.0);
  s.v_flux = Field2D(g.nx, g.ny, 0.0);
  return s;
}

}  // namespace

TEST_CASE("total_depth basics") {
  const Grid g = unit_grid(8);
  FlowState s = rest_state(g, 0.0);
  Bathymetry b = Bathymetry::flat(g, -250.0);
  Field2D h = total_depth(s, b);
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) CHECK(h(i, j) == doctest::Approx(250.0));

  // eta = z + 1 -> H = 1
  Bathymetry b2 = Bathymetry::from_analytic(g, [](double x, double y) { return x - y; });
  FlowState s2 = rest_state(g, 0.0);
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) s2.eta(i, j) = b2.z(i, j) + 1.0;
  Field2D h2 = total_depth(s2, b2);
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) CHECK(h2(i, j) == doctest::Approx(1.0));
}

TEST_CASE("total_depth pointwise value of the smooth convergence data") {
  // eta = 10 + e^{sin 2 pi x} cos 2 pi y, z = sin 2 pi x + cos 2 pi y at (1/4, 0)
  const double x = 0.25, y = 0.0;
  const double eta = 10.0 + std::exp(std::sin(2 * M_PI * x)) * std::cos(2 * M_PI * y);
  const double z = std::sin(2 * M_PI * x) + std::cos(2 * M_PI * y);
  CHECK(eta - z == doctest::Approx(10.0 + std::exp(1.0) - 2.0).epsilon(1e-14));

  Grid g;
  g.nx = g.ny = 3;
  g.hx = g.hy = 0.1;
  g.x0 = x - 0.15;  // centre cell lands exactly on (x, y)
  g.y0 = y - 0.15;
  Bathymetry b = Bathymetry::from_analytic(g, [](double px, double py) {
    return std::sin(2 * M_PI * px) + std::cos(2 * M_PI * py);
  });
  FlowState s = rest_state(g, 0.0);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i)
      s.eta(i, j) = 10.0 + std::exp(std::sin(2 * M_PI * g.xc(i))) * std::cos(2 * M_PI * g.yc(j));
  const Field2D h = total_depth(s, b);
  CHECK(h(1, 1) == doctest::Approx(10.0 + std::exp(1.0) - 2.0).epsilon(1e-12));
}

TEST_CASE("total_depth reports the positivity violation location") {
  const Grid g = unit_grid(4);
  Bathymetry b = Bathymetry::flat(g, -1.0);
  FlowState s = rest_state(g, 0.0);
  s.eta(2, 3) = -1.0;  // H = 0 there
  CHECK_THROWS_AS(total_depth(s, b), PositivityError);
  try {
    total_depth(s, b);
  } catch (const PositivityError& e) {
    CHECK(e.i() == 2);
    CHECK(e.j() == 3);
    CHECK(e.depth() == doctest::Approx(0.0));
  }
}

TEST_CASE("physical_flux") {
  PhysConsts c;
  c.g = 10.0;
  SUBCASE("rest state") {
    auto f = physical_flux({1.0, 0.0, 0.0}, c, Axis::X);
    CHECK(f[0] == 0.0);
    CHECK(f[1] == doctest::Approx(5.0));
    CHECK(f[2] == 0.0);
  }
  SUBCASE("moving state, x") {
    auto f = physical_flux({2.0, 4.0, 2.0}, c, Axis::X);
    CHECK(f[0] == doctest::Approx(4.0));
    CHECK(f[1] == doctest::Approx(28.0));
    CHECK(f[2] == doctest::Approx(4.0));
  }
  SUBCASE("moving state, y") {
    auto f = physical_flux({2.0, 4.0, 2.0}, c, Axis::Y);
    CHECK(f[0] == doctest::Approx(2.0));
    CHECK(f[1] == doctest::Approx(4.0));
    CHECK(f[2] == doctest::Approx(22.0));
  }
  SUBCASE("zero velocity has zero mass flux both ways") {
    for (Axis a : {Axis::X, Axis::Y}) CHECK(physical_flux({3.2, 0, 0}, c, a)[0] == 0.0);
  }
}

TEST_CASE("max_wave_speed") {
  const Grid g = unit_grid(4);
  PhysConsts c;
  SUBCASE("rest, H = 1000") {
    c.g = 9.81;
    FlowState s = rest_state(g, 0.0);
    Bathymetry b = Bathymetry::flat(g, -1000.0);
    const WaveSpeeds w = max_wave_speed(s, b, c);
    CHECK(w.sx == doctest::Approx(std::sqrt(9810.0)).epsilon(1e-14));
    CHECK(w.sy == doctest::Approx(std::sqrt(9810.0)).epsilon(1e-14));
  }
  SUBCASE("no gravity keeps only advection") {
    c.g = 0.0;
    FlowState s = rest_state(g, 0.0);
    Bathymetry b = Bathymetry::flat(g, -1.0);
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) s.u_flux(i, j) = 0.5;  // u = 0.5 at H = 1
    CHECK(max_wave_speed(s, b, c).sx == doctest::Approx(0.5));
  }
  SUBCASE("transverse speed includes v") {
    c.g = 9.81;
    FlowState s = rest_state(g, 0.0);
    Bathymetry b = Bathymetry::flat(g, -100.0);
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) s.v_flux(i, j) = 100.0;  // v = 1
    CHECK(max_wave_speed(s, b, c).sy == doctest::Approx(1.0 + std::sqrt(981.0)));
  }
}

TEST_CASE("cfl_timestep") {
  PhysConsts c;
  c.g = 9.81;
  SUBCASE("arithmetic") {
    Grid g;
    g.nx = g.ny = 4;
    g.hx = g.hy = 1000.0;
    // H chosen so that sqrt(gH) = 100 exactly
    const double depth = 100.0 * 100.0 / 9.81;
    FlowState s;
    s.eta = Field2D(4, 4, 0.0);
    s.u_flux = Field2D(4, 4, 0.0);
    s.v_flux = Field2D(4, 4, 0.0);
    Bathymetry b = Bathymetry::flat(g, -depth);
    CHECK(cfl_timestep(s, b, c, g, 0.5) == doctest::Approx(5.0).epsilon(1e-13));
    // doubling cfl doubles dt
    CHECK(cfl_timestep(s, b, c, g, 1.0) ==
          doctest::Approx(2.0 * cfl_timestep(s, b, c, g, 0.5)).epsilon(1e-13));
  }
  SUBCASE("anisotropic speeds") {
    // sx = 99.05, sy = 50 via still water in x and moving checks: emulate by
    // direct arithmetic on the formula instead (speeds are derived upstream)
    const double dt = 0.5 * std::min(100.0 / 99.05, 100.0 / 50.0);
    CHECK(dt == doctest::Approx(0.504795558));
  }
  SUBCASE("static g = 0 falls back to dt_max") {
    Grid g = unit_grid(4);
    PhysConsts c0;
    c0.g = 0.0;
    FlowState s;
    s.eta = Field2D(4, 4, 0.0);
    s.u_flux = Field2D(4, 4, 0.0);
    s.v_flux = Field2D(4, 4, 0.0);
    Bathymetry b = Bathymetry::flat(g, -1.0);
    CHECK(cfl_timestep(s, b, c0, g, 0.5, 123.0) == doctest::Approx(123.0));
  }
  SUBCASE("monotone non-increasing in each wave speed") {
    // direct property of dt = cfl*min(hx/sx, hy/sy)
    const double hx = 3.0, hy = 7.0;
    double prev = 1e300;
    for (double s = 1.0; s < 100.0; s *= 1.7) {
      const double dt = 0.5 * std::min(hx / s, hy / (0.3 * s));
      CHECK(dt <= prev);
      prev = dt;
    }
  }
}
