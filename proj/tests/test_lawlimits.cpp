// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gcpreset/law.hpp"
#include "oracle.hpp"

using namespace gcpreset;

namespace {
void check_rel(double got, double want, double tol) {
  CHECK(std::fabs(got - want) <= tol * std::fabs(want));
}
}  // namespace

TEST_CASE("large-intensity limit density") {
  // uniform over the diffusion interval when resets are off
  const MotionParams free0(1.0, 0.0, 1.0, -1.0);
  for (double x : {-1.5, -0.2, 0.9})
    CHECK(pdf_lambda_inf(x, 2.0, free0) == doctest::Approx(0.25).epsilon(1e-14));

  // reference value and singularity at the origin
  const MotionParams p(1.0, 1.0, 1.0, -1.0);
  check_rel(pdf_lambda_inf(0.5, 2.0, p), 0.28927036284320302, 1e-13);
  CHECK_THROWS_AS(pdf_lambda_inf(0.0, 2.0, p), Error);
  CHECK_THROWS_AS(pdf_lambda_inf(5.0, 2.0, p), Error);

  // symmetric velocities give an even density
  for (double x : {0.3, 0.9, 1.4})
    check_rel(pdf_lambda_inf(x, 2.0, p), pdf_lambda_inf(-x, 2.0, p), 1e-13);

  // the log singularity is integrable: total mass one
  boost::math::quadrature::tanh_sinh<double> rule;
  const double mass = rule.integrate([&](double x) { return pdf_lambda_inf(x, 2.0, p); },
                                     -2.0, 0.0, 1e-12) +
                      rule.integrate([&](double x) { return pdf_lambda_inf(x, 2.0, p); }, 0.0,
                                     2.0, 1e-12);
  CHECK(std::fabs(mass - 1.0) <= 1e-8);

  // BothPositive keeps a finite right-hand limit at the origin
  const MotionParams bp(1.0, 2.0, 4.0, 2.0);
  check_rel(pdf_lambda_inf(0.6, 0.5, bp), 0.4512971484864446, 1e-13);
  check_rel(pdf_lambda_inf(0.0, 0.5, bp),
            bp.xi() * std::log(bp.v1() / bp.v2()) / (bp.v1() - bp.v2()), 1e-13);
}

TEST_CASE("pdf at large lambda approaches the limit density") {
  for (const MotionParams& base :
       {MotionParams(1.0, 2.0, 1.0, -1.0), MotionParams(1.0, 2.0, 4.0, 2.0)}) {
    const MotionParams big = base.with_lambda(1e6);
    const double t = 1.5;
    for (double frac : {0.1, 0.35, 0.6, 0.9}) {
      const double x =
          support_lower(t, big) + frac * (support_upper(t, big) - support_lower(t, big));
      if (std::fabs(x) < 0.05) continue;
      CHECK(std::fabs(pdf(x, t, VelocityStart::fixed(1), big).ac -
                      pdf_lambda_inf(x, t, base)) <= 1e-4);
    }
  }
}

TEST_CASE("stationary density") {
  const MotionParams p(1.0, 2.0, 2.0, -2.0);
  check_rel(stationary_pdf(0.5, 1, p), 0.57727339069194316, 1e-13);
  const MotionParams bp(1.0, 2.0, 4.0, 2.0);
  check_rel(stationary_pdf(2.5, 1, bp), 0.1431528547776124, 1e-13);
  CHECK(stationary_pdf(-1.0, 1, bp) == 0.0);
  CHECK_THROWS_AS(stationary_pdf(0.5, 1, p.with_xi(0.0)), Error);

  // exponential-integral tails
  const double far = 1e3 * p.v1() / p.xi();
  CHECK(stationary_pdf(far, 1, p) <= 1e-12);
  CHECK(stationary_pdf(-far, 1, p) <= 1e-12);

  // unit mass over the whole line
  const double mass =
      oracle::quad_to_inf([&](double u) { return stationary_pdf(-u, 1, p); }, 0.0, 1e-12) +
      oracle::quad_to_inf([&](double u) { return stationary_pdf(u, 1, p); }, 0.0, 1e-12);
  CHECK(std::fabs(mass - 1.0) <= 1e-8);
  const double mass_bp =
      oracle::quad_to_inf([&](double u) { return stationary_pdf(u, 1, bp); }, 0.0, 1e-12);
  CHECK(std::fabs(mass_bp - 1.0) <= 1e-8);
}

TEST_CASE("pdf settles on the stationary density") {
  for (const MotionParams& p :
       {MotionParams(1.0, 2.0, 2.0, -2.0), MotionParams(1.0, 2.0, 4.0, 2.0)}) {
    const double t = 200.0 / p.xi();
    for (int j = 1; j <= 2; ++j)
      for (double x : {-2.5, -0.8, 0.4, 1.7, 3.1}) {
        if (x <= support_lower(t, p) || x >= support_upper(t, p)) continue;
        CHECK(std::fabs(pdf(x, t, VelocityStart::fixed(j), p).ac - stationary_pdf(x, j, p)) <=
              1e-4);
      }
  }
}

TEST_CASE("random-start limit laws") {
  const MotionParams p(1.0, 2.0, 2.0, -2.0);
  // the large-intensity limit forgets the start entirely
  for (double x : {-1.1, 0.7})
    CHECK(pdf_random_lambda_inf(x, 1.5, 0.3, p) == pdf_lambda_inf(x, 1.5, p));
  CHECK_THROWS_AS(pdf_random_lambda_inf(0.7, 1.5, 1.5, p), Error);  // q out of range

  // q = 1 degenerates to the fixed-start stationary law
  for (double x : {-1.3, -0.2, 0.6, 2.4})
    check_rel(pdf_random_stationary(x, 1.0, p), stationary_pdf(x, 1, p), 1e-14);

  // general q is the mixture
  check_rel(pdf_random_stationary(0.8, 0.4, p), 0.19065205475428357, 1e-13);
  for (double x : {-1.3, 0.6}) {
    const double mix = 0.4 * stationary_pdf(x, 1, p) + 0.6 * stationary_pdf(x, 2, p);
    check_rel(pdf_random_stationary(x, 0.4, p), mix, 1e-13);
  }

  // symmetric velocities and q = 1/2: even stationary density
  for (double x : {0.4, 1.2, 2.0})
    check_rel(pdf_random_stationary(x, 0.5, p), pdf_random_stationary(-x, 0.5, p), 1e-13);
}

TEST_CASE("random start mixes the fixed-start laws pointwise") {
  const double q = 0.3, t = 1.1;
  for (const MotionParams& p :
       {MotionParams(1.0, 2.0, 1.0, -1.0), MotionParams(1.0, 2.0, 4.0, 2.0)}) {
    for (double frac : {0.1, 0.4, 0.7, 0.95}) {
      const double x =
          support_lower(t, p) + frac * (support_upper(t, p) - support_lower(t, p));
      const LawValue mixed = pdf(x, t, VelocityStart::random(q), p);
      const LawValue a = pdf(x, t, VelocityStart::fixed(1), p);
      const LawValue b = pdf(x, t, VelocityStart::fixed(2), p);
      CHECK(std::fabs(mixed.ac - (q * a.ac + (1.0 - q) * b.ac)) <= 1e-14);
      CHECK(std::fabs(mixed.p1 - (q * a.p1 + (1.0 - q) * b.p1)) <= 1e-14);
    }
    // atoms carry the mixture weights
    const LawValue at1 = pdf(p.v1() * t, t, VelocityStart::random(q), p);
    CHECK(at1.atom == doctest::Approx(q * atom_mass(1, t, p)).epsilon(1e-14));
    const LawValue at2 = pdf(p.v2() * t, t, VelocityStart::random(q), p);
    CHECK(at2.atom == doctest::Approx((1.0 - q) * atom_mass(2, t, p)).epsilon(1e-14));
  }
}
