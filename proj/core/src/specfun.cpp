// SPDX-License-Identifier: Apache-2.0
#include "gcpreset/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace gcpreset {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kUnderflowCutoff = 740.0;  // e^-x / x below the smallest subnormal

// E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!), for 0 < x <= 1.
double e1_series(double x) {
  double sum = 0.0;
  double u = 1.0;  // (-x)^k / k!
  for (int k = 1; k <= 40; ++k) {
    u *= -x / k;
    const double term = u / k;
    sum -= term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return -kEulerGamma - std::log(x) + sum;
}

// e^x E1(x) as the continued fraction 1/(x+1- 1/(x+3- 4/(x+5- 9/(...)))),
// evaluated by the modified Lentz algorithm. Converges for x > 1.
double e1_scaled_cf(double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k <= 500; ++k) {
    const double a = -static_cast<double>(k) * k;
    b += 2.0;
    d = a * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 4e-16) return h;
  }
  fail(errc::quadrature_nonconverged, "exponential-integral continued fraction stalled");
}

void check_gamma_args(double z0, double z1) {
  if (!(z0 > 0.0) || std::isnan(z1) || z1 < z0)
    fail(errc::domain, "generalized incomplete gamma requires 0 < z0 <= z1");
}

// 20-node Gauss-Legendre rule on [-1, 1]; nodes found once by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre20 {
  std::array<double, 20> node{};
  std::array<double, 20> weight{};
  GaussLegendre20() {
    constexpr int n = 20;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int k = 0; k < n; ++k) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / pp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      node[i] = -x;
      node[n - 1 - i] = x;
      weight[i] = weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
  }
};

// int_{z0}^{z1} e^{c-t}/t dt on a narrow interval; the integrand is smooth
// and nearly constant there, so a single fixed rule is exact to rounding.
double narrow_quadrature(double c, double z0, double z1) {
  static const GaussLegendre20 rule;
  const double mid = 0.5 * (z0 + z1);
  const double half = 0.5 * (z1 - z0);
  double sum = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = mid + half * rule.node[i];
    sum += rule.weight[i] * std::exp(c - t) / t;
  }
  return half * sum;
}

}  // namespace

double exp_integral_e1(double x) {
  if (!(x > 0.0)) fail(errc::domain, "E1 requires x > 0, got " + std::to_string(x));
  if (x > kUnderflowCutoff) return 0.0;
  if (x <= 1.0) return e1_series(x);
  return std::exp(-x) * e1_scaled_cf(x);
}

double exp_integral_e1_scaled(double x) {
  if (!(x > 0.0)) fail(errc::domain, "scaled E1 requires x > 0");
  if (x <= 1.0) return std::exp(x) * e1_series(x);
  return e1_scaled_cf(x);
}

double gen_gamma0(GammaArgs args) { return scaled_gamma0(0.0, args.z0, args.z1); }

double gen_gamma0(double z0, double z1) { return scaled_gamma0(0.0, z0, z1); }

double scaled_gamma0(double c, double z0, double z1) {
  check_gamma_args(z0, z1);
  if (!(c <= z0)) fail(errc::domain, "scaled_gamma0 requires c <= z0");
  if (std::isinf(z1)) return std::exp(c - z0) * exp_integral_e1_scaled(z0);
  if (z1 - z0 <= kGammaNarrowInterval * z0) return narrow_quadrature(c, z0, z1);
  const double lower = std::exp(c - z0) * exp_integral_e1_scaled(z0);
  const double upper = std::exp(c - z1) * exp_integral_e1_scaled(z1);
  const double diff = lower - upper;
  return diff > 0.0 ? diff : 0.0;
}

}  // namespace gcpreset
