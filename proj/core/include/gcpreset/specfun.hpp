// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gcpreset/errors.hpp"

namespace gcpreset {

/// Exponential integral E1(x) = int_x^inf t^-1 e^-t dt for x > 0.
///
/// Power series below x = 1, continued fraction above. Relative error
/// <= 1e-13 over [1e-300, 700]; returns exactly 0 for x > 740 where the
/// result would underflow. Throws errc::domain for x <= 0.
double exp_integral_e1(double x);

/// Scaled exponential integral e^x E1(x); stays O(1/x) for large x.
double exp_integral_e1_scaled(double x);

/// Argument pair of the generalized incomplete gamma at a = 0:
/// 0 < z0 <= z1, where z1 = +inf denotes the upper-incomplete form.
struct GammaArgs {
  double z0;
  double z1;
};

/// Gamma(0, z0, z1) = int_{z0}^{z1} t^-1 e^-t dt = E1(z0) - E1(z1).
///
/// When z1 - z0 <= 1e-3 * z0 the value is computed by direct
/// Gauss-Legendre quadrature on [z0, z1] instead of the E1 difference,
/// which would cancel catastrophically. The threshold is a tunable
/// compile-time constant (kGammaNarrowInterval).
double gen_gamma0(GammaArgs args);
double gen_gamma0(double z0, double z1);

/// e^c Gamma(0, z0, z1) for c <= z0, evaluated without forming e^c or
/// E1 separately, so it stays finite for arbitrarily large c and z0.
double scaled_gamma0(double c, double z0, double z1);

inline constexpr double kGammaNarrowInterval = 1e-3;  // relative width triggering quadrature

}  // namespace gcpreset
