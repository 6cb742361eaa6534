// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>

#include <doctest.h>

#include "gcpreset/rng.hpp"
#include "gcpreset/specfun.hpp"
#include "oracle.hpp"

using namespace gcpreset;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_rel(double got, double want, double tol) {
  CHECK(std::fabs(got - want) <= tol * std::fabs(want));
}
}  // namespace

TEST_CASE("exponential integral matches the high-precision table") {
  // reference values computed with 40-digit arithmetic
  const struct {
    double x, e1;
  } table[] = {
      {1e-300, 690.19831223331217},
      {1e-20, 45.474486194979381},
      {1e-3, 6.3315393641361493},
      {0.1, 1.8229239584193907},
      {0.25, 1.0442826344437382},
      {0.5, 0.55977359477616081},
      {1.0, 0.21938393439552027},
      {1.0000001, 0.21938389760757984},
      {1.05, 0.20187281322019659},
      {1.2, 0.15840843685146256},
      {1.5, 0.10001958240663265},
      {2.0, 0.04890051070806112},
      {3.0, 0.013048381094197037},
      {5.0, 0.0011482955912753258},
      {7.0, 0.00011548173161033822},
      {10.0, 4.1569689296853243e-6},
      {20.0, 9.8355252906498817e-11},
      {30.0, 3.0215520106888125e-15},
      {50.0, 3.783264029550459e-24},
      {100.0, 3.6835977616820322e-46},
      {200.0, 6.8852261063076356e-90},
      {300.0, 1.7103842768045101e-133},
      {500.0, 1.4220767822536384e-220},
      {700.0, 1.4065187662340329e-307},
  };
  for (const auto& row : table) check_rel(exp_integral_e1(row.x), row.e1, 1e-13);
}

TEST_CASE("exponential integral underflow and domain") {
  CHECK(exp_integral_e1(741.0) == 0.0);
  CHECK(exp_integral_e1(1e6) == 0.0);
  CHECK_THROWS_AS(exp_integral_e1(0.0), Error);
  CHECK_THROWS_AS(exp_integral_e1(-1.0), Error);
}

TEST_CASE("small-argument limit E1(x) + ln x -> -gamma") {
  constexpr double gamma = 0.5772156649015328606;
  for (double x : {1e-12, 1e-9, 1e-7})
    CHECK(std::fabs(exp_integral_e1(x) + std::log(x) + gamma) <= 2.0 * x);
}

TEST_CASE("scaled exponential integral") {
  const struct {
    double x, val;
  } table[] = {{0.001, 6.337874070325488},
               {0.5, 0.92291063248373047},
               {1.0, 0.59634736232319407},
               {1.5, 0.44825666929158295},
               {10.0, 0.091563333939788082},
               {1e6, 9.9999900000199999e-7}};
  for (const auto& row : table) check_rel(exp_integral_e1_scaled(row.x), row.val, 1e-13);
  // consistency with the unscaled value where both are representable
  for (double x : {0.3, 2.0, 40.0, 300.0})
    check_rel(std::exp(-x) * exp_integral_e1_scaled(x), exp_integral_e1(x), 1e-13);
}

TEST_CASE("generalized incomplete gamma reference values") {
  CHECK(gen_gamma0(0.7, 0.7) == 0.0);
  check_rel(gen_gamma0(0.5, kInf), 0.55977359477616081, 1e-13);
  check_rel(gen_gamma0(1.0, 2.0), 0.17048342368745915, 1e-13);
  check_rel(gen_gamma0(1e-3, 1e3), 6.3315393641361493, 1e-13);
  // narrow intervals take the direct quadrature path
  check_rel(gen_gamma0(10.0, 10.005), 2.2637655207989018e-8, 1e-12);
  check_rel(gen_gamma0(5.0, 5.0004), 5.3890641261568601e-7, 1e-12);
  CHECK_THROWS_AS(gen_gamma0(0.0, 1.0), Error);
  CHECK_THROWS_AS(gen_gamma0(-1.0, 1.0), Error);
  CHECK_THROWS_AS(gen_gamma0(2.0, 1.0), Error);
  CHECK_THROWS_AS(gen_gamma0(GammaArgs{2.0, 1.0}), Error);
}

TEST_CASE("scaled gamma stays finite for huge prefactors") {
  check_rel(scaled_gamma0(1e5, 1e5, 2e5), 9.99990000199994e-6, 1e-12);
  check_rel(scaled_gamma0(0.0, 1.0, 2.0), 0.17048342368745915, 1e-13);
  CHECK_THROWS_AS(scaled_gamma0(3.0, 1.0, 2.0), Error);  // requires c <= z0
}

TEST_CASE("gamma additivity and monotonicity over random arguments") {
  PathRng rng(7, 0);
  for (int it = 0; it < 400; ++it) {
    const double a = 1e-3 * std::pow(10.0, 4.0 * rng.uniform());
    const double b = a * (1.0 + std::pow(10.0, -4.0 * rng.uniform()));
    const double c = b * (1.0 + rng.uniform());
    const double whole = gen_gamma0(a, c);
    const double split = gen_gamma0(a, b) + gen_gamma0(b, c);
    CHECK(std::fabs(whole - split) <= std::max(1e-14, 1e-12 * whole));
    CHECK(gen_gamma0(a, c) >= gen_gamma0(b, c));   // decreasing in z0
    CHECK(gen_gamma0(a, c) >= gen_gamma0(a, b));   // increasing in z1
  }
}

TEST_CASE("gamma agrees with the adaptive quadrature oracle") {
  PathRng rng(11, 0);
  for (int it = 0; it < 1000; ++it) {
    const double z0 = 1e-3 * std::pow(10.0, 4.3 * rng.uniform());
    const double z1 = z0 * (1.0 + std::pow(10.0, 2.0 - 6.0 * rng.uniform()));
    const double got = gen_gamma0(z0, z1);
    const double want = oracle::quad([](double t) { return std::exp(-t) / t; }, z0, z1, 1e-14);
    CHECK(std::fabs(got - want) <= std::max(1e-14, 1e-12 * std::fabs(want)));
  }
}
