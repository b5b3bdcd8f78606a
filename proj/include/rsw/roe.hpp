#ifndef RSW_ROE_HPP_
#define RSW_ROE_HPP_

#include <array>

#include "rsw/core.hpp"

namespace rsw {

// Roe's approximate Riemann flux for the shallow water system in one
// coordinate direction. States are point values q = (H, U, V) with H > 0.
// The acoustic fields get a Harten-Hyman entropy fix with delta = 0.1 c_roe.
std::array<double, 3> roe_flux(const std::array<double, 3>& ql,
                               const std::array<double, 3>& qr,
                               Axis axis, const PhysConsts& consts);

}  // namespace rsw

#endif  // RSW_ROE_HPP_
