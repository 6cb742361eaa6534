// SPDX-License-Identifier: Apache-2.0
#include "gcpreset/params.hpp"

#include <cmath>
#include <string>

namespace gcpreset {

namespace {

VelocityRegime regime_of(double v1, double v2) noexcept {
  if (v2 < 0.0 && 0.0 < v1) return VelocityRegime::straddling;
  if (0.0 < v2) return VelocityRegime::both_positive;
  return VelocityRegime::both_negative;
}

}  // namespace

const char* to_string(VelocityRegime regime) noexcept {
  switch (regime) {
    case VelocityRegime::straddling: return "straddling";
    case VelocityRegime::both_positive: return "both_positive";
    case VelocityRegime::both_negative: return "both_negative";
  }
  return "unknown";
}

MotionParams::MotionParams(double lambda, double xi, double v1, double v2)
    : lambda_(lambda), xi_(xi), v1_(v1), v2_(v2), regime_(regime_of(v1, v2)) {
  if (!(std::isfinite(lambda) && lambda > 0.0)) fail(errc::domain, "lambda must be positive");
  if (!(std::isfinite(xi) && xi >= 0.0)) fail(errc::domain, "xi must be nonnegative");
  if (!(std::isfinite(v1) && std::isfinite(v2))) fail(errc::domain, "velocities must be finite");
  if (!(v2 < v1)) fail(errc::domain, "require v2 < v1");
  if (v1 == 0.0 || v2 == 0.0) fail(errc::domain, "velocities must be nonzero");
}

double MotionParams::v(int j) const { return check_velocity_index(j) == 1 ? v1_ : v2_; }

VelocityRegime classify_regime(const MotionParams& p) noexcept { return p.regime(); }

int check_velocity_index(int j) {
  if (j != 1 && j != 2) fail(errc::domain, "velocity index must be 1 or 2, got " + std::to_string(j));
  return j;
}

Reflection reflect(const MotionParams& p, int j) {
  check_velocity_index(j);
  if (p.regime() != VelocityRegime::both_negative)
    fail(errc::reflect_not_needed, std::string("regime ") + to_string(p.regime()) +
                                       " is handled directly");
  return Reflection{MotionParams(p.lambda(), p.xi(), -p.v2(), -p.v1()), 3 - j, -1.0};
}

VelocityStart VelocityStart::random(double q) {
  if (!(std::isfinite(q) && 0.0 <= q && q <= 1.0)) fail(errc::domain, "q must lie in [0, 1]");
  return VelocityStart(0, q);
}

int VelocityStart::fixed_index() const {
  if (is_random()) fail(errc::domain, "start velocity is random");
  return j_;
}

}  // namespace gcpreset
