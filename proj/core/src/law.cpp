// SPDX-License-Identifier: Apache-2.0
#include "gcpreset/law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gcpreset/quadrature.hpp"
#include "gcpreset/specfun.hpp"

namespace gcpreset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int other(int j) { return 3 - j; }

double sgn(double v) { return v > 0.0 ? 1.0 : -1.0; }

// Evaluation at a jump point returns the right-hand limit, so every
// indicator is taken half-open: [a, b).
bool right_open(double x, double a, double b) { return a <= x && x < b; }

// (e^w - 1)/w, continuous through w = 0.
double expm1_over(double w) { return w == 0.0 ? 1.0 : std::expm1(w) / w; }

// (1 - e^{-w})/w, continuous through w = 0.
double one_minus_exp_over(double w) { return w == 0.0 ? 1.0 : -std::expm1(-w) / w; }

// 1 - e^{-w}(1 + w), evaluated without cancellation for small w.
double one_minus_exp_linear(double w) {
  if (w > 0.5) return 1.0 - std::exp(-w) * (1.0 + w);
  // series sum_{k>=2} (-1)^k w^k (k-1)/k!
  double sum = 0.0, pw = w, fact = 1.0, sign = -1.0;
  for (int k = 2; k <= 30; ++k) {
    pw *= w;
    fact *= k;
    sign = -sign;
    const double term = sign * pw * (k - 1) / fact;
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

void check_two_regimes(const MotionParams& p) {
  if (p.regime() == VelocityRegime::both_negative)
    fail(errc::domain, "BothNegative velocities: evaluate through reflect()");
}

void check_horizon(double t) {
  if (!(t > 0.0)) fail(errc::domain, "horizon t must be positive");
}

// Shared state for one (x, t) evaluation of the reset laws.
struct Ctx {
  double lam, xi, v1, v2, d;
  double t, x;
  double tau, Mx, mxt;
  bool straddling;
  bool in_diffusion;  // x in [v2 t, v1 t)
  bool in_support;    // x in [min(v2 t, 0), v1 t)
  double theta = 0.0;
  double sgam = 0.0;  // e^{xi/lambda} * generalized incomplete gamma kernel

  Ctx(double x_, double t_, const MotionParams& p) {
    lam = p.lambda();
    xi = p.xi();
    v1 = p.v1();
    v2 = p.v2();
    d = v1 - v2;
    t = t_;
    x = x_;
    straddling = p.regime() == VelocityRegime::straddling;
    tau = (x - v2 * t) / d;
    Mx = std::max(x / v1, x / v2);
    mxt = std::min(x / v2, t);
    in_diffusion = right_open(x, v2 * t, v1 * t);
    in_support = right_open(x, std::min(v2 * t, 0.0), v1 * t);
    if (xi > 0.0 && in_support) {
      const double inv = 1.0 / lam;
      const double a = straddling ? Mx : x / v1;
      const double b = straddling ? t : mxt;
      theta = std::exp(-xi * a) / (1.0 + lam * a) - std::exp(-xi * b) / (1.0 + lam * b);
      sgam = scaled_gamma0(xi * inv, (a + inv) * xi, (b + inv) * xi);
    }
  }

  // Ballistic post-reset term: sgn(v_j) xi e^{-xi x/v_j} / (v_j + lambda x)
  // on the stretch the start velocity can reach from the origin.
  double ballistic(int j) const {
    const double vj = j == 1 ? v1 : v2;
    const bool on = vj > 0.0 ? right_open(x, 0.0, vj * t) : right_open(x, vj * t, 0.0);
    if (!on || xi == 0.0) return 0.0;
    return sgn(vj) * xi * std::exp(-xi * x / vj) / (vj + lam * x);
  }
};

void check_support(const Ctx& c) {
  const double lo = c.xi > 0.0 ? std::min(c.v2 * c.t, 0.0) : c.v2 * c.t;
  const double hi = c.v1 * c.t;
  if (c.x < lo || c.x > hi)
    fail(errc::out_of_support, "x = " + std::to_string(c.x) + " outside [" + std::to_string(lo) +
                                   ", " + std::to_string(hi) + "]");
}

double subdensity_ac(int i, int j, const Ctx& c) {
  const double vj = j == 1 ? c.v1 : c.v2;
  const double vo = j == 1 ? c.v2 : c.v1;
  const double u = 1.0 + c.lam * c.t;
  double r = 0.0;
  if (i == j) {
    if (c.in_diffusion) {
      const double piece = j == 1 ? c.tau : c.t - c.tau;
      r += std::exp(-c.xi * c.t) * c.lam * c.lam * piece / (c.d * u * u);
    }
    r += c.ballistic(j);
    if (c.xi > 0.0 && c.in_support) {
      const double s3j = j == 1 ? 1.0 : -1.0;  // (-1)^{3-j}
      r += s3j * c.xi * (vo + c.lam * c.x) / (c.d * c.d) * c.theta;
      r -= s3j * c.xi * (vo * (c.lam + c.xi) / c.lam + c.x * c.xi) / (c.d * c.d) * c.sgam;
    }
  } else {
    if (c.in_diffusion) {
      const double piece = j == 1 ? c.t - c.tau : c.tau;
      r += std::exp(-c.xi * c.t) * c.lam * (1.0 + c.lam * piece) / (c.d * u * u);
    }
    if (c.xi > 0.0 && c.in_support) {
      const double sj = j == 1 ? -1.0 : 1.0;  // (-1)^j
      r += sj * c.xi * (vo + c.lam * c.x) / (c.d * c.d) * c.theta;
      r -= sj * c.xi *
           (vj * (c.lam + c.xi) / c.lam + c.x * c.xi + sj * c.xi * c.d / c.lam) / (c.d * c.d) *
           c.sgam;
    }
  }
  return r;
}

}  // namespace

AuxKernels aux_kernels(double x, double t, const MotionParams& p) {
  check_two_regimes(p);
  check_horizon(t);
  AuxKernels k{};
  k.tau = (x - p.v2() * t) / (p.v1() - p.v2());
  k.Mx = std::max(x / p.v1(), x / p.v2());
  k.mxt = std::min(x / p.v2(), t);
  k.indicator_I = std::min(p.v2() * t, 0.0) < x && x < p.v1() * t;
  if (k.indicator_I && p.xi() > 0.0) {
    const Ctx c(x, t, p);
    k.theta = c.theta;
    k.gamma_xt = std::exp(-p.xi() / p.lambda()) * c.sgam;
  }
  return k;
}

double atom_mass(int j, double t, const MotionParams& p) {
  check_velocity_index(j);
  if (!(t >= 0.0)) fail(errc::domain, "t must be nonnegative");
  return std::exp(-p.xi() * t) / (1.0 + p.lambda() * t);
}

double noreset_subdensity(int i, int j, double x, double t, const MotionParams& p) {
  check_velocity_index(i);
  check_velocity_index(j);
  check_horizon(t);
  if (!(p.v2() * t < x && x < p.v1() * t))
    fail(errc::out_of_support, "x outside the open diffusion interval");
  const double lam = p.lambda();
  const double d = p.v1() - p.v2();
  const double tau = (x - p.v2() * t) / d;
  double c;
  if (i == 1)
    c = j == 1 ? lam * tau : 1.0 + lam * tau;
  else
    c = j == 1 ? 1.0 + lam * (t - tau) : lam * (t - tau);
  const double u = 1.0 + lam * t;
  return lam * c / (d * u * u);
}

LawValue subdensity(int i, int j, double x, double t, const MotionParams& p) {
  check_velocity_index(i);
  check_velocity_index(j);
  check_two_regimes(p);
  check_horizon(t);
  const Ctx c(x, t, p);
  check_support(c);
  LawValue out;
  const double ac = subdensity_ac(i, j, c);
  out.ac = ac;
  (i == 1 ? out.p1 : out.p2) = ac;
  if (i == j && x == p.v(j) * t) out.atom = atom_mass(j, t, p);
  return out;
}

LawValue pdf(double x, double t, const VelocityStart& start, const MotionParams& p) {
  check_two_regimes(p);
  check_horizon(t);
  const Ctx c(x, t, p);
  check_support(c);
  LawValue out;
  for (int j = 1; j <= 2; ++j) {
    const double w = start.weight(j);
    if (w == 0.0) continue;
    out.p1 += w * subdensity_ac(1, j, c);
    out.p2 += w * subdensity_ac(2, j, c);
    if (x == p.v(j) * t) out.atom += w * atom_mass(j, t, p);
  }
  out.ac = out.p1 + out.p2;
  return out;
}

double pdf_marginal_ac(double x, double t, int j, const MotionParams& p) {
  check_velocity_index(j);
  check_two_regimes(p);
  check_horizon(t);
  const Ctx c(x, t, p);
  check_support(c);
  const double u = 1.0 + c.lam * t;
  double r = c.ballistic(j);
  if (c.in_diffusion) r += std::exp(-c.xi * t) * c.lam / (c.d * u);
  if (c.xi > 0.0 && c.in_support) r += c.xi / c.d * c.sgam;
  return r;
}

FlowValue flow(double x, double t, int j, const MotionParams& p) {
  check_velocity_index(j);
  check_two_regimes(p);
  check_horizon(t);
  const Ctx c(x, t, p);
  check_support(c);
  const double u = 1.0 + c.lam * t;
  const double sj = j == 1 ? -1.0 : 1.0;  // (-1)^j
  const double vo = j == 1 ? c.v2 : c.v1;
  FlowValue out;
  if (c.in_diffusion)
    out.ac += c.lam * std::exp(-c.xi * t) * (c.lam * (2.0 * c.tau - t) + sj) / (c.d * u * u);
  out.ac -= sj * c.ballistic(j);  // sgn(v_j)(-1)^{j-1} times the ballistic core
  if (c.xi > 0.0 && c.in_support) {
    out.ac += 2.0 * c.xi * (vo + c.lam * c.x) / (c.d * c.d) * c.theta;
    out.ac -= c.xi * (2.0 * c.xi * (c.x + vo / c.lam) + (c.v1 + c.v2)) / (c.d * c.d) * c.sgam;
  }
  if (x == p.v(j) * t) out.atom = -sj * std::exp(-c.xi * t) / u;
  return out;
}

double pdf_lambda_inf(double x, double t, const MotionParams& p) {
  check_two_regimes(p);
  check_horizon(t);
  const double v1 = p.v1(), v2 = p.v2(), xi = p.xi(), d = v1 - v2;
  const double lo = xi > 0.0 ? std::min(v2 * t, 0.0) : v2 * t;
  if (x < lo || x > v1 * t) fail(errc::out_of_support, "x outside the limit-density support");
  const bool straddling = p.regime() == VelocityRegime::straddling;
  if (straddling && x == 0.0 && xi > 0.0)
    fail(errc::singular, "the lambda->inf density has a logarithmic singularity at x = 0");
  double r = 0.0;
  if (right_open(x, v2 * t, v1 * t)) r += std::exp(-xi * t) / (d * t);
  if (xi > 0.0 && right_open(x, lo, v1 * t)) {
    if (straddling) {
      r += xi / d * gen_gamma0(std::max(x / v1, x / v2) * xi, t * xi);
    } else if (x == 0.0) {
      r += xi / d * std::log(v1 / v2);  // right-hand limit of the gamma kernel
    } else {
      r += xi / d * gen_gamma0(x / v1 * xi, std::min(x / v2, t) * xi);
    }
  }
  return r;
}

double stationary_pdf(double x, int j, const MotionParams& p) {
  check_velocity_index(j);
  check_two_regimes(p);
  if (p.xi() == 0.0) fail(errc::xi_zero, "no stationary density without resetting");
  const double lam = p.lambda(), xi = p.xi(), v1 = p.v1(), v2 = p.v2(), d = v1 - v2;
  const double vj = p.v(j);
  const double inv = 1.0 / lam;
  if (p.regime() == VelocityRegime::straddling) {
    double r = 0.0;
    if (vj > 0.0 ? x >= 0.0 : x < 0.0) r += sgn(vj) * xi * std::exp(-xi * x / vj) / (vj + lam * x);
    const double Mx = std::max(x / v1, x / v2);
    r += xi / d * scaled_gamma0(xi * inv, (Mx + inv) * xi, kInf);
    return r;
  }
  if (x < 0.0) return 0.0;
  // right-hand limit applies at x == 0, where the gamma kernel vanishes
  return xi * std::exp(-xi * x / vj) / (vj + lam * x) +
         xi / d * scaled_gamma0(xi * inv, (x / v1 + inv) * xi, (x / v2 + inv) * xi);
}

double pdf_random_lambda_inf(double x, double t, double q, const MotionParams& p) {
  (void)VelocityStart::random(q);  // validate q; the limit is q-independent
  return pdf_lambda_inf(x, t, p);
}

double pdf_random_stationary(double x, double q, const MotionParams& p) {
  check_two_regimes(p);
  VelocityStart::random(q);
  if (p.xi() == 0.0) fail(errc::xi_zero, "no stationary density without resetting");
  const double lam = p.lambda(), xi = p.xi(), v1 = p.v1(), v2 = p.v2(), d = v1 - v2;
  const double inv = 1.0 / lam;
  const auto hbar = [&](int j) {
    const double vj = j == 1 ? v1 : v2;
    const bool on = vj > 0.0 ? x >= 0.0 : x < 0.0;
    return on ? sgn(vj) * xi * std::exp(-xi * x / vj) / (vj + lam * x) : 0.0;
  };
  if (p.regime() == VelocityRegime::straddling) {
    const double Mx = std::max(x / v1, x / v2);
    return q * hbar(1) + (1.0 - q) * hbar(2) +
           xi / d * scaled_gamma0(xi * inv, (Mx + inv) * xi, kInf);
  }
  if (x < 0.0) return 0.0;
  return q * hbar(1) + (1.0 - q) * hbar(2) +
         xi / d * scaled_gamma0(xi * inv, (x / v1 + inv) * xi, (x / v2 + inv) * xi);
}

double mgf(double z, double t, int j, const MotionParams& p) {
  check_velocity_index(j);
  check_two_regimes(p);
  check_horizon(t);
  if (!std::isfinite(z)) fail(errc::domain, "z must be finite");
  const double lam = p.lambda(), xi = p.xi(), v1 = p.v1(), v2 = p.v2(), d = v1 - v2;
  const double vj = p.v(j);
  const double u = 1.0 + lam * t;
  if (z == 0.0) return 1.0;
  if (xi == 0.0) {
    // reset-free closed form: atom plus a uniform continuous part
    return std::exp(vj * z * t) / u +
           lam * t * std::exp(v2 * z * t) * expm1_over(d * z * t) / u;
  }
  const double c1 = (xi - v1 * z) / lam;
  const double c2 = (xi - v2 * z) / lam;
  if (c1 > 0.0 && c2 > 0.0) {
    const auto F = [&](double c) { return scaled_gamma0(c, c, c * u); };
    const double cj = j == 1 ? c1 : c2;
    double r = std::exp((vj * z - xi) * t) / u;
    r += xi / lam * F(cj);
    r += lam * t * std::exp(v2 * z * t - xi * t) * expm1_over(d * z * t) / u;
    r += xi * (F(c1) - F(c2)) / (z * d);
    return r;
  }
  return mgf_by_quadrature(z, t, j, p);
}

double mgf_by_quadrature(double z, double t, int j, const MotionParams& p) {
  check_velocity_index(j);
  check_two_regimes(p);
  check_horizon(t);
  const double v2t = p.v2() * t;
  const double lo = p.xi() > 0.0 ? std::min(v2t, 0.0) : v2t;
  const double hi = p.v1() * t;
  std::vector<double> pts{lo, hi};
  if (lo < 0.0 && 0.0 < hi) pts.push_back(0.0);
  if (lo < v2t && v2t < hi) pts.push_back(v2t);
  std::sort(pts.begin(), pts.end());
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  opts.rel_tol = 1e-11;
  const double integral = integrate_split(
      [&](double x) { return std::exp(z * x) * pdf_marginal_ac(x, t, j, p); }, pts, opts);
  return integral + atom_mass(j, t, p) * std::exp(z * p.v(j) * t);
}

double mean(double t, int j, const MotionParams& p) {
  check_velocity_index(j);
  check_two_regimes(p);
  if (!(t >= 0.0)) fail(errc::domain, "t must be nonnegative");
  if (p.xi() == 0.0 || t == 0.0) return noreset_mean(t, j, p);
  const double lam = p.lambda(), xi = p.xi();
  const double S = p.v1() + p.v2();
  const double D = p.v(j) - p.v(other(j));
  const double w = xi * t;
  const double one_minus = -std::expm1(-w);
  const double sG = scaled_gamma0(xi / lam, xi / lam, xi / lam * (1.0 + lam * t));
  return one_minus * (S / (2.0 * xi) + D / (2.0 * lam)) - xi * D * sG / (2.0 * lam * lam) +
         t * std::exp(-w) * D / (2.0 * (1.0 + lam * t));
}

double second_moment(double t, int j, const MotionParams& p) {
  check_velocity_index(j);
  check_two_regimes(p);
  if (!(t >= 0.0)) fail(errc::domain, "t must be nonnegative");
  if (p.xi() == 0.0 || t == 0.0) return noreset_second_moment(t, j, p);
  const double lam = p.lambda(), xi = p.xi();
  const double v1 = p.v1(), v2 = p.v2();
  const double vj = p.v(j), vo = p.v(other(j));
  const double K = v1 * v1 + v1 * v2 + v2 * v2;
  const double C = 2.0 * vj * vj - v1 * v2 - vo * vo;
  const double w = xi * t;
  const double one_minus = -std::expm1(-w);
  const double sG = scaled_gamma0(xi / lam, xi / lam, xi / lam * (1.0 + lam * t));
  return one_minus * (2.0 * K / (3.0 * xi * xi) + C / (3.0 * lam) * (1.0 / xi - 1.0 / lam)) -
         t * std::exp(-w) * (2.0 * K / (3.0 * xi) + C / (3.0 * lam * (1.0 + lam * t))) +
         xi * C * sG / (3.0 * lam * lam * lam);
}

double variance(double t, int j, const MotionParams& p) {
  const double m = mean(t, j, p);
  return second_moment(t, j, p) - m * m;
}

double noreset_mean(double t, int j, const MotionParams& p) {
  check_velocity_index(j);
  if (!(t >= 0.0)) fail(errc::domain, "t must be nonnegative");
  const double S = p.v1() + p.v2();
  const double D = p.v(j) - p.v(other(j));
  return S * t / 2.0 + D * t / (2.0 * (1.0 + p.lambda() * t));
}

double noreset_second_moment(double t, int j, const MotionParams& p) {
  check_velocity_index(j);
  if (!(t >= 0.0)) fail(errc::domain, "t must be nonnegative");
  const double v1 = p.v1(), v2 = p.v2(), vj = p.v(j);
  const double K = v1 * v1 + v1 * v2 + v2 * v2;
  return t * t * (3.0 * vj * vj + p.lambda() * t * K) / (3.0 * (1.0 + p.lambda() * t));
}

double noreset_variance(double t, const MotionParams& p) {
  if (!(t >= 0.0)) fail(errc::domain, "t must be nonnegative");
  const double lam = p.lambda(), d = p.v1() - p.v2(), u = 1.0 + lam * t;
  return lam * t * t * t * (4.0 + lam * t) * d * d / (12.0 * u * u);
}

double mean_lambda_inf(double t, const MotionParams& p) {
  if (!(t >= 0.0)) fail(errc::domain, "t must be nonnegative");
  return 0.5 * (p.v1() + p.v2()) * t * one_minus_exp_over(p.xi() * t);
}

double second_moment_lambda_inf(double t, const MotionParams& p) {
  if (!(t >= 0.0)) fail(errc::domain, "t must be nonnegative");
  const double v1 = p.v1(), v2 = p.v2();
  const double K = v1 * v1 + v1 * v2 + v2 * v2;
  const double w = p.xi() * t;
  if (w == 0.0) return K * t * t / 3.0;
  return 2.0 * K * t * t * one_minus_exp_linear(w) / (3.0 * w * w);
}

LongRunMoments long_run_moments(int j, const MotionParams& p) {
  check_velocity_index(j);
  check_two_regimes(p);
  if (p.xi() == 0.0) fail(errc::xi_zero, "moments have no finite t->inf limit without resetting");
  const double lam = p.lambda(), xi = p.xi();
  const double v1 = p.v1(), v2 = p.v2(), vj = p.v(j), vo = p.v(other(j));
  const double S = v1 + v2, D = vj - vo;
  const double K = v1 * v1 + v1 * v2 + v2 * v2;
  const double C = 2.0 * vj * vj - v1 * v2 - vo * vo;
  const double eg = exp_integral_e1_scaled(xi / lam);  // e^{xi/lam} Gamma(0, xi/lam)
  LongRunMoments out{};
  out.mean = S / (2.0 * xi) + D / (2.0 * lam) - xi * eg * D / (2.0 * lam * lam);
  out.second = 2.0 * K / (3.0 * xi * xi) + C / (3.0 * lam) * (1.0 / xi - 1.0 / lam) +
               xi * eg * C / (3.0 * lam * lam * lam);
  out.variance = out.second - out.mean * out.mean;
  return out;
}

MomentLimits moment_limits(const MotionParams& p, int j, double t) {
  const auto lr = long_run_moments(j, p);
  return MomentLimits{mean_lambda_inf(t, p), second_moment_lambda_inf(t, p),
                      0.0,       0.0,
                      lr.mean,   lr.second,
                      lr.variance};
}

std::optional<MeanExtremum> mean_extremum(const MotionParams& p, int j) {
  check_velocity_index(j);
  if (p.regime() != VelocityRegime::straddling) return std::nullopt;
  const double S = p.v1() + p.v2();
  const double d = p.v1() - p.v2();
  if (j == 1 && S < 0.0)
    return MeanExtremum{(std::sqrt(d / -S) - 1.0) / p.lambda(), ExtremumKind::maximum};
  if (j == 2 && S > 0.0)
    return MeanExtremum{(std::sqrt(d / S) - 1.0) / p.lambda(), ExtremumKind::minimum};
  return std::nullopt;
}

double mean_square_distance(double xi, double t, int j, const MotionParams& p) {
  check_velocity_index(j);
  check_two_regimes(p);
  if (!(t >= 0.0)) fail(errc::domain, "t must be nonnegative");
  if (!(xi >= 0.0) || !std::isfinite(xi)) fail(errc::domain, "xi must be nonnegative");
  if (xi == 0.0) return 2.0 * noreset_variance(t, p);
  const double lam = p.lambda();
  const double v1 = p.v1(), v2 = p.v2(), vj = p.v(j), vo = p.v(other(j));
  const double S = v1 + v2, D = vj - vo;
  const double K = v1 * v1 + v1 * v2 + v2 * v2;
  const double C = 2.0 * vj * vj - v1 * v2 - vo * vo;
  const double u = 1.0 + lam * t;
  const double w = xi * t;
  const double E = std::exp(-w);
  const double one_minus = -std::expm1(-w);
  const double sG = scaled_gamma0(xi / lam, xi / lam, xi / lam * u);
  const double b = t * (2.0 * vj + lam * t * S) / (2.0 * u);  // reset-free mean
  double A = -t * E * (C / (3.0 * lam * u) + 2.0 * K / (3.0 * xi) + D * b / u);
  A += one_minus * (2.0 * K / (3.0 * xi * xi) + C / (3.0 * lam) * (1.0 / xi - 1.0 / lam) -
                    b * (D / lam + S / xi));
  A += xi / (lam * lam) * sG * (C / (3.0 * lam) + D * b);
  return noreset_second_moment(t, j, p) + A;
}

double support_lower(double t, const MotionParams& p) {
  check_horizon(t);
  return p.xi() > 0.0 ? std::min(p.v2() * t, 0.0) : p.v2() * t;
}

double support_upper(double t, const MotionParams& p) {
  check_horizon(t);
  return p.v1() * t;
}

EvalFrame eval_frame(const MotionParams& p) {
  if (p.regime() == VelocityRegime::both_negative) return {reflect(p, 1).params, true};
  return {p, false};
}

LawValue pdf_any(double x, double t, const VelocityStart& start, const MotionParams& p) {
  const EvalFrame f = eval_frame(p);
  LawValue v = pdf(f.map_x(x), t, f.map_start(start), f.params);
  if (f.mirrored) std::swap(v.p1, v.p2);
  return v;
}

}  // namespace gcpreset
