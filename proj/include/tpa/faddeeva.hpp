#pragma once

#include "tpa/level_system.hpp"

namespace tpa {

// Largest |z| accepted by complex_normal_cdf. Beyond it exp(z²/2) leaves the
// double range for arguments near the imaginary axis.
inline constexpr double kNormalCdfDomain = 35.0;

// Faddeeva function w(z) = exp(−z²) erfc(−iz) for any finite z. Accurate to about
// 1e-13 relative in the upper half plane; the lower half plane uses
// w(z) = 2 exp(−z²) − w(−z) and overflows once Im z is very negative.
cplx faddeeva(cplx z);

// Standard normal CDF continued to complex arguments,
// G(z) = (1/2) erfc(−z/√2). Throws std::domain_error for |z| > kNormalCdfDomain.
cplx complex_normal_cdf(cplx z);

}  // namespace tpa
