#pragma once

namespace sihd {

// Taylor-refinement correction coefficients, shared between the
// differentiator update and the refinement oracle in taylor.hpp.
//
//   line 1:  z1+ picks up  kCorrLine1Z3 * h^2 * z3+   and  kCorrLine1Z4 * h^3 * z4+
//   line 2:  z2+ picks up  kCorrLine2Z4 * h^2 * z4+
inline constexpr double kCorrLine1Z3 = -1.0 / 2.0;
inline constexpr double kCorrLine1Z4 = 1.0 / 6.0;
inline constexpr double kCorrLine2Z4 = -1.0 / 2.0;

}  // namespace sihd
