// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "gcpreset/params.hpp"

namespace gcpreset {

/// Pointwise evaluation of a generalized density: absolutely continuous
/// part, any atom mass sitting exactly at the queried point (never folded
/// into ac), and the per-velocity split with ac == p1 + p2.
struct LawValue {
  double ac = 0.0;
  double atom = 0.0;
  double p1 = 0.0;  // current velocity v1
  double p2 = 0.0;  // current velocity v2
};

/// Kernels shared by the closed-form laws at (x, t). tau lies in (0, t)
/// exactly when x is inside the diffusion interval (v2 t, v1 t).
struct AuxKernels {
  double tau;
  bool indicator_I;  // min(v2 t, 0) < x < v1 t
  double theta;
  double gamma_xt;   // zero when xi == 0 (the reset terms carry a xi factor)
  double Mx;
  double mxt;
};

AuxKernels aux_kernels(double x, double t, const MotionParams& p);

/// Mass of the discrete component at x = v_j t: e^{-xi t} / (1 + lambda t).
double atom_mass(int j, double t, const MotionParams& p);

/// Reset-free sub-density p_i(x, t | v_j) on the open diffusion interval.
/// Throws errc::out_of_support outside it. The xi field of p is ignored.
double noreset_subdensity(int i, int j, double x, double t, const MotionParams& p);

/// Sub-density of ending with velocity v_i at x under start velocity v_j.
/// ac carries the continuous part; atom is populated when i == j and
/// x == v_j t exactly. At interior jump points the ac value is the
/// right-hand limit. Throws errc::out_of_support outside the support
/// closure and errc::domain for the BothNegative regime (use reflect()).
LawValue subdensity(int i, int j, double x, double t, const MotionParams& p);

/// Position density under a fixed or random initial velocity;
/// p1/p2 carry the sub-density split and ac = p1 + p2.
LawValue pdf(double x, double t, const VelocityStart& start, const MotionParams& p);

/// The ac part of the marginal density assembled from its own simplified
/// closed form rather than the sub-density sum; agrees with pdf().ac to
/// rounding and exists as an independent consistency route.
double pdf_marginal_ac(double x, double t, int j, const MotionParams& p);

/// Flow function: excess density of v1-movers over v2-movers, with the
/// signed atom (-1)^{j-1} e^{-xi t}/(1+lambda t) reported separately when
/// x == v_j t exactly.
struct FlowValue {
  double ac = 0.0;
  double atom = 0.0;
};
FlowValue flow(double x, double t, int j, const MotionParams& p);

/// Limit density of the position as lambda -> inf (start-independent).
/// Throws errc::singular at x == 0 in the straddling regime, where the
/// limit has an integrable logarithmic singularity instead of a finite
/// modal value.
double pdf_lambda_inf(double x, double t, const MotionParams& p);

/// Stationary density (t -> inf limit), which exists only under resetting;
/// throws errc::xi_zero when xi == 0. Supported on the whole line in the
/// straddling regime and on (0, inf) for BothPositive.
double stationary_pdf(double x, int j, const MotionParams& p);

/// lambda -> inf limit under a random initial velocity (q-independent).
double pdf_random_lambda_inf(double x, double t, double q, const MotionParams& p);

/// t -> inf limit under a random initial velocity: the q-mixture of the
/// stationary densities.
double pdf_random_stationary(double x, double q, const MotionParams& p);

/// Conditional moment generating function E_j[e^{z X(t)}]. Uses the closed
/// form where its gamma representation is valid (xi - v1 z and xi - v2 z
/// both positive) and falls back to adaptive quadrature of e^{zx} against
/// the density elsewhere; the MGF is entire since the support is bounded.
double mgf(double z, double t, int j, const MotionParams& p);

/// The quadrature route of the MGF, usable for any finite z; exists
/// separately so the closed form can be cross-checked against it.
double mgf_by_quadrature(double z, double t, int j, const MotionParams& p);

/// First and second conditional moments and their variance. xi == 0
/// dispatches to the reset-free forms. Note the conditional variance does
/// depend on the initial velocity except in symmetric cases (v1 = -v2).
double mean(double t, int j, const MotionParams& p);
double second_moment(double t, int j, const MotionParams& p);
double variance(double t, int j, const MotionParams& p);

/// Reset-free moments (xi ignored); the reset-free variance is
/// lambda t^3 (4 + lambda t) (v1-v2)^2 / (12 (1+lambda t)^2), start-independent.
double noreset_mean(double t, int j, const MotionParams& p);
double noreset_second_moment(double t, int j, const MotionParams& p);
double noreset_variance(double t, const MotionParams& p);

/// lambda -> inf moment limits at horizon t (start-independent).
double mean_lambda_inf(double t, const MotionParams& p);
double second_moment_lambda_inf(double t, const MotionParams& p);

/// t -> inf moment limits; throws errc::xi_zero when xi == 0.
struct LongRunMoments {
  double mean;
  double second;
  double variance;
};
LongRunMoments long_run_moments(int j, const MotionParams& p);

/// Record of the limiting moment forms: lambda -> inf values at horizon t,
/// the xi -> inf limits (identically zero), and the long-run constants.
struct MomentLimits {
  double mean_lambda_inf;
  double second_lambda_inf;
  double mean_xi_inf;
  double second_xi_inf;
  double mean_long_run;
  double second_long_run;
  double variance_long_run;
};
MomentLimits moment_limits(const MotionParams& p, int j, double t);

/// Interior extremum of t -> E_j[X(t)], which exists only in the
/// straddling regime: a maximum of E_1 when 0 < v1 < -v2 at
/// t = (sqrt((v1-v2)/|v1+v2|) - 1)/lambda, a minimum of E_2 when
/// 0 < -v2 < v1 at the mirrored expression; none otherwise.
enum class ExtremumKind { maximum, minimum };
struct MeanExtremum {
  double t;
  ExtremumKind kind;
};
std::optional<MeanExtremum> mean_extremum(const MotionParams& p, int j);

/// Mean-square distance E_j|X_reset - X_free|^2 between the process with
/// reset rate xi and the reset-free process, the two treated as
/// uncoupled copies. The xi field of p is ignored in favour of the
/// explicit argument. xi == 0 gives twice the reset-free variance; the
/// xi -> inf limit is the reset-free second moment.
double mean_square_distance(double xi, double t, int j, const MotionParams& p);

/// Support closure of the position law at horizon t (ac part):
/// [min(v2 t, 0), v1 t] under resetting, [v2 t, v1 t] when xi == 0.
double support_lower(double t, const MotionParams& p);
double support_upper(double t, const MotionParams& p);

/// Resolved evaluation view: BothNegative parameters are mirrored onto the
/// BothPositive formulas (x -> -x, j -> 3-j, start weights swapped); the
/// two directly handled regimes pass through unchanged.
struct EvalFrame {
  MotionParams params;
  bool mirrored;

  double map_x(double x) const { return mirrored ? -x : x; }
  int map_j(int j) const { return mirrored ? 3 - check_velocity_index(j) : j; }
  VelocityStart map_start(const VelocityStart& s) const {
    if (!mirrored) return s;
    return s.is_random() ? VelocityStart::random(1.0 - s.q())
                         : VelocityStart::fixed(3 - s.fixed_index());
  }
};
EvalFrame eval_frame(const MotionParams& p);

/// pdf for any velocity regime; BothNegative inputs go through eval_frame.
LawValue pdf_any(double x, double t, const VelocityStart& start, const MotionParams& p);

}  // namespace gcpreset
