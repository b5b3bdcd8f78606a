#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rsw/roe.hpp"

using namespace rsw;

TEST_CASE("consistency: equal states give the physical flux") {
  PhysConsts c;
  c.g = 10.0;
  const std::array<double, 3> q{1.0, 0.0, 0.0};
  const auto f = roe_flux(q, q, Axis::X, c);
  CHECK(f[0] == doctest::Approx(0.0));
  CHECK(f[1] == doctest::Approx(5.0));
  CHECK(f[2] == doctest::Approx(0.0));
}

TEST_CASE("supercritical right-moving data upwinds fully to the left flux") {
  PhysConsts c;
  c.g = 10.0;
  // u - c > 0 with a clear margin on both sides and at the Roe average
  const std::array<double, 3> ql{1.0, 8.0, 0.3};
  const std::array<double, 3> qr{1.1, 9.5, 0.2};
  const auto f = roe_flux(ql, qr, Axis::X, c);
  const auto fl = physical_flux(ql, c, Axis::X);
  for (int k = 0; k < 3; ++k) CHECK(f[k] == doctest::Approx(fl[k]).epsilon(1e-13));
}

TEST_CASE("subcritical dam break matches the eigen-decomposition oracle") {
  PhysConsts c;
  c.g = 10.0;
  const std::array<double, 3> ql{2.0, 0.0, 0.0};
  const std::array<double, 3> qr{1.0, 0.0, 0.0};
  const auto f = roe_flux(ql, qr, Axis::X, c);
  const auto o = rsw_test::roe_flux_eigen_oracle(ql, qr, Axis::X, c.g);
  for (int k = 0; k < 3; ++k)
    CHECK(f[k] == doctest::Approx(o[k]).epsilon(1e-12));
}

TEST_CASE("random subcritical pairs match the oracle in both axes") {
  PhysConsts c;
  c.g = 9.81;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> hdist(0.5, 300.0);
  std::uniform_real_distribution<double> mach(-0.3, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    auto make = [&]() {
      const double h = hdist(rng);
      const double cc = std::sqrt(c.g * h);
      return std::array<double, 3>{h, h * mach(rng) * cc, h * mach(rng) * cc};
    };
    const auto ql = make(), qr = make();
    for (Axis a : {Axis::X, Axis::Y}) {
      const auto f = roe_flux(ql, qr, a, c);
      const auto o = rsw_test::roe_flux_eigen_oracle(ql, qr, a, c.g);
      const double scale = std::abs(o[0]) + std::abs(o[1]) + std::abs(o[2]) + 1.0;
      for (int k = 0; k < 3; ++k) CHECK(std::abs(f[k] - o[k]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("conservative symmetry between axes") {
  PhysConsts c;
  c.g = 9.81;
  const std::array<double, 3> ql{2.0, 0.4, -0.2};
  const std::array<double, 3> qr{1.8, -0.1, 0.5};
  // swapping the flux components and the axis must commute
  const auto fy = roe_flux(ql, qr, Axis::Y, c);
  const auto fx = roe_flux({ql[0], ql[2], ql[1]}, {qr[0], qr[2], qr[1]}, Axis::X, c);
  CHECK(fy[0] == doctest::Approx(fx[0]).epsilon(1e-14));
  CHECK(fy[1] == doctest::Approx(fx[2]).epsilon(1e-14));
  CHECK(fy[2] == doctest::Approx(fx[1]).epsilon(1e-14));
}

TEST_CASE("non-finite and non-positive inputs are rejected") {
  PhysConsts c;
  CHECK_THROWS(roe_flux({1.0, std::nan(""), 0.0}, {1.0, 0.0, 0.0}, Axis::X, c));
  CHECK_THROWS(roe_flux({-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, Axis::X, c));
}
