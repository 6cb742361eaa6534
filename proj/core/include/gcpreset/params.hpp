// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gcpreset/errors.hpp"

namespace gcpreset {

/// Sign pattern of the velocity pair (v1, v2), v2 < v1.
///
/// The closed-form laws are stated for Straddling and BothPositive;
/// BothNegative is served through reflect() at the API boundary.
enum class VelocityRegime { straddling, both_positive, both_negative };

const char* to_string(VelocityRegime regime) noexcept;

/// Validated process parameters: GCP intensity lambda > 0, reset rate
/// xi >= 0 (xi == 0 is the reset-free process), and alternating velocities
/// v2 < v1, both nonzero.
class MotionParams {
 public:
  MotionParams(double lambda, double xi, double v1, double v2);

  double lambda() const noexcept { return lambda_; }
  double xi() const noexcept { return xi_; }
  double v1() const noexcept { return v1_; }
  double v2() const noexcept { return v2_; }
  VelocityRegime regime() const noexcept { return regime_; }

  /// Velocity by 1-based index, j in {1, 2}.
  double v(int j) const;

  MotionParams with_xi(double xi) const { return {lambda_, xi, v1_, v2_}; }
  MotionParams with_lambda(double lambda) const { return {lambda, xi_, v1_, v2_}; }

  friend bool operator==(const MotionParams&, const MotionParams&) = default;

 private:
  double lambda_;
  double xi_;
  double v1_;
  double v2_;
  VelocityRegime regime_;
};

VelocityRegime classify_regime(const MotionParams& p) noexcept;

/// Throws errc::domain unless j is 1 or 2; returns j.
int check_velocity_index(int j);

/// Result of mapping a BothNegative parameter set onto BothPositive:
/// any density f of the original process satisfies
///   f(x, t | v_j; original) == f(-x, t | v_{j'}; params)
/// and any mean satisfies E_j = sign * E'_{j'}.
struct Reflection {
  MotionParams params;  // (v1', v2') = (-v2, -v1)
  int j;                // relabelled velocity index, 3 - j
  double sign;          // -1
};

/// Maps a BothNegative parameter set and velocity index onto the
/// BothPositive formulas. Throws errc::reflect_not_needed otherwise.
Reflection reflect(const MotionParams& p, int j);

/// Initial-velocity condition: fixed v1, fixed v2, or random with
/// P[V0 = v1] = q.
class VelocityStart {
 public:
  static VelocityStart fixed(int j) { return VelocityStart(check_velocity_index(j), 0.0); }
  static VelocityStart random(double q);

  bool is_random() const noexcept { return j_ == 0; }
  /// Fixed start index; throws errc::domain for a random start.
  int fixed_index() const;
  /// P[V0 = v1]; defined for every mode (1 or 0 for fixed starts).
  double q() const noexcept { return j_ == 0 ? q_ : (j_ == 1 ? 1.0 : 0.0); }
  /// P[V0 = v_j].
  double weight(int j) const { return check_velocity_index(j) == 1 ? q() : 1.0 - q(); }

  friend bool operator==(const VelocityStart&, const VelocityStart&) = default;

 private:
  VelocityStart(int j, double q) : j_(j), q_(q) {}
  int j_;     // 1, 2, or 0 for random
  double q_;  // Bernoulli weight when random
};

}  // namespace gcpreset
