// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "gcpreset/law.hpp"
#include "oracle.hpp"

using namespace gcpreset;

namespace {
const MotionParams kStraddle(1.0, 2.0, 1.0, -1.0);
const MotionParams kBothPos(1.0, 2.0, 4.0, 2.0);
const MotionParams kBothNeg(1.0, 2.0, -1.0, -2.0);

void check_rel(double got, double want, double tol) {
  CHECK(std::fabs(got - want) <= tol * std::fabs(want));
}
}  // namespace

TEST_CASE("reset-free sub-density matrix") {
  // hand evaluation at tau = 0.5: c21 = 1 + lambda (t - tau) = 1.5
  const MotionParams p(1.0, 0.0, 1.0, -1.0);
  CHECK(noreset_subdensity(2, 1, 0.0, 1.0, p) == doctest::Approx(0.1875).epsilon(1e-15));
  // c11 = lambda tau vanishes toward the lower end
  CHECK(noreset_subdensity(1, 1, -1.0 + 1e-12, 1.0, p) <= 1e-11);
  CHECK_THROWS_AS(noreset_subdensity(1, 1, 1.0, 1.0, p), Error);    // closed end
  CHECK_THROWS_AS(noreset_subdensity(1, 1, 1.5, 1.0, p), Error);
  // the xi field is ignored
  CHECK(noreset_subdensity(2, 1, 0.0, 1.0, kStraddle) == doctest::Approx(0.1875));
}

TEST_CASE("reset-free marginal: uniform plus atom") {
  const MotionParams p(1.0, 0.0, 1.0, -1.0);
  const double t = 1.5;
  const double uniform = p.lambda() / ((p.v1() - p.v2()) * (1.0 + p.lambda() * t));
  for (double x : {-1.2, -0.3, 0.4, 1.3}) {
    const LawValue v = pdf(x, t, VelocityStart::fixed(1), p);
    CHECK(v.ac == doctest::Approx(uniform).epsilon(1e-14));
  }
  CHECK(pdf(p.v1() * t, t, VelocityStart::fixed(1), p).atom ==
        doctest::Approx(1.0 / (1.0 + p.lambda() * t)).epsilon(1e-15));
}

TEST_CASE("sub-density reference values, straddling") {
  const double t = 1.5;
  check_rel(subdensity(1, 1, 0.3, t, kStraddle).ac, 0.89068470650722878, 1e-13);
  check_rel(subdensity(2, 1, -0.4, t, kStraddle).ac, 0.11403699277144994, 1e-13);
  check_rel(subdensity(1, 2, 0.7, t, kStraddle).ac, 0.054948675772674641, 1e-13);
  check_rel(subdensity(2, 2, -1.2, t, kStraddle).ac, 0.092612757215885239, 1e-13);
  check_rel(pdf(0.3, t, VelocityStart::fixed(1), kStraddle).ac, 1.0072507018067356, 1e-13);
}

TEST_CASE("sub-density reference values, both velocities positive") {
  const double t = 0.5;
  check_rel(subdensity(1, 1, 0.3, t, kBothPos).ac, 0.40223708995917445, 1e-13);
  check_rel(subdensity(1, 1, 1.5, t, kBothPos).ac, 0.20026378104911913, 1e-13);
  check_rel(subdensity(2, 2, 0.5, t, kBothPos).ac, 0.49232583569174827, 1e-13);
  check_rel(pdf(0.7, t, VelocityStart::fixed(2), kBothPos).ac, 0.4507242814654072, 1e-13);
}

TEST_CASE("sub-densities agree with the renewal-integral oracle") {
  for (const MotionParams& p : {kStraddle, kBothPos}) {
    const double t = 1.1;
    const double lo = support_lower(t, p), hi = support_upper(t, p);
    for (int g = 1; g <= 14; ++g) {
      const double x = lo + (hi - lo) * g / 15.0;
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
          const double want = oracle::subdensity_renewal(i, j, x, t, p);
          CHECK(std::fabs(subdensity(i, j, x, t, p).ac - want) <=
                std::max(1e-12, 1e-9 * std::fabs(want)));
        }
    }
  }
}

TEST_CASE("atom mass") {
  CHECK(atom_mass(1, 0.0, kStraddle) == 1.0);
  CHECK(atom_mass(2, 1.5, kStraddle.with_xi(0.0)) ==
        doctest::Approx(1.0 / 2.5).epsilon(1e-15));
  check_rel(atom_mass(1, 0.5, kStraddle), 0.24525296078096155, 1e-15);
  // carried on the law value only at x = v_j t exactly
  const LawValue v = subdensity(1, 1, kStraddle.v1() * 1.5, 1.5, kStraddle);
  check_rel(v.atom, std::exp(-3.0) / 2.5, 1e-14);
  CHECK(subdensity(2, 1, kStraddle.v1() * 1.5, 1.5, kStraddle).atom == 0.0);
  CHECK(subdensity(1, 1, 0.3, 1.5, kStraddle).atom == 0.0);
}

TEST_CASE("law value split invariants") {
  for (const MotionParams& p : {kStraddle, kBothPos}) {
    const double t = 0.9;
    for (double frac : {0.15, 0.45, 0.8}) {
      const double x = support_lower(t, p) +
                       frac * (support_upper(t, p) - support_lower(t, p));
      for (const auto& s :
           {VelocityStart::fixed(1), VelocityStart::fixed(2), VelocityStart::random(0.3)}) {
        const LawValue v = pdf(x, t, s, p);
        CHECK(v.ac == v.p1 + v.p2);
        CHECK(v.p1 >= 0.0);
        CHECK(v.p2 >= 0.0);
        CHECK(v.atom >= 0.0);
        CHECK(v.atom <= 1.0);
      }
    }
  }
}

TEST_CASE("support errors") {
  CHECK_THROWS_AS(subdensity(1, 1, 2.0, 1.0, kStraddle), Error);
  CHECK_THROWS_AS(subdensity(1, 1, -1.5, 1.0, kStraddle), Error);
  CHECK_THROWS_AS(pdf(7.0, 1.0, VelocityStart::fixed(1), kBothPos), Error);
  CHECK_THROWS_AS(pdf(-0.5, 1.0, VelocityStart::fixed(1), kBothPos), Error);
  // under resets the BothPositive support reaches down to the origin
  CHECK(pdf(0.5, 1.0, VelocityStart::fixed(1), kBothPos).ac > 0.0);
  // without resets it does not
  CHECK_THROWS_AS(pdf(0.5, 1.0, VelocityStart::fixed(1), kBothPos.with_xi(0.0)), Error);
  // BothNegative goes through reflect()
  CHECK_THROWS_AS(subdensity(1, 1, -0.5, 1.0, kBothNeg), Error);
  CHECK_THROWS_AS(pdf(-0.5, 1.0, VelocityStart::fixed(1), kBothNeg), Error);
}

TEST_CASE("sub-density limits at the diffusion-interval ends") {
  const double t = 1.5;
  for (const MotionParams& p : {kStraddle, MotionParams(1.0, 0.5, 2.0, -4.0)}) {
    const double lam = p.lambda(), xi = p.xi(), d = p.v1() - p.v2();
    const double u = 1.0 + lam * t;
    for (int j = 1; j <= 2; ++j) {
      const double vt = p.v(j) * t;
      const double x = vt - (j == 1 ? 1e-10 : -1e-10);
      const double same_same =
          std::exp(-xi * t) / u * (xi / std::fabs(p.v(j)) + lam * lam * t / (d * u));
      const double same_other = std::exp(-xi * t) * lam / (d * u);
      const double other_same = std::exp(-xi * t) * lam / (d * u * u);
      CHECK(std::fabs(subdensity(j, j, x, t, p).ac - same_same) <= 1e-8);
      CHECK(std::fabs(subdensity(j, 3 - j, x, t, p).ac - same_other) <= 1e-8);
      CHECK(std::fabs(subdensity(3 - j, j, x, t, p).ac - other_same) <= 1e-8);
      // the remaining combination vanishes at both ends in this regime
      CHECK(std::fabs(subdensity(3 - j, 3 - j, x, t, p).ac) <= 1e-8);
    }
  }
  // BothPositive: same limits hold toward v1 t; toward v2 t the reset
  // kernels stay finite, so compare against the renewal oracle instead
  {
    const MotionParams& p = kBothPos;
    const double lam = p.lambda(), xi = p.xi(), d = p.v1() - p.v2();
    const double u = 1.0 + lam * t;
    const double x = p.v1() * t - 1e-10;
    CHECK(std::fabs(subdensity(1, 1, x, t, p).ac -
                    std::exp(-xi * t) / u * (xi / p.v1() + lam * lam * t / (d * u))) <= 1e-8);
    CHECK(std::fabs(subdensity(1, 2, x, t, p).ac - std::exp(-xi * t) * lam / (d * u)) <= 1e-8);
    CHECK(std::fabs(subdensity(2, 1, x, t, p).ac - std::exp(-xi * t) * lam / (d * u * u)) <=
          1e-8);
    const double x2 = p.v2() * t + 1e-9;
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        CHECK(std::fabs(subdensity(i, j, x2, t, p).ac -
                        oracle::subdensity_renewal(i, j, x2, t, p)) <= 1e-7);
  }
}

TEST_CASE("resets off reduces to the reset-free law") {
  // pointwise agreement at xi = 1e-10 to 1e-6 relative
  const MotionParams tiny(1.0, 1e-10, 1.0, -1.0);
  const MotionParams free0(1.0, 0.0, 1.0, -1.0);
  const double t = 1.2;
  for (double x : {-1.0, -0.4, 0.2, 0.9})
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        check_rel(subdensity(i, j, x, t, tiny).ac, noreset_subdensity(i, j, x, t, free0), 1e-6);
}

TEST_CASE("density jumps carry the advertised sizes") {
  // straddling: upward jump of xi/v1 at the origin for start v1
  {
    const double t = 1.5, eps = 1e-9;
    const double jump = pdf(eps, t, VelocityStart::fixed(1), kStraddle).ac -
                        pdf(-eps, t, VelocityStart::fixed(1), kStraddle).ac;
    CHECK(std::fabs(jump - kStraddle.xi() / kStraddle.v1()) <= 1e-6);
    // evaluation exactly at the jump point returns the right-hand limit
    CHECK(pdf(0.0, t, VelocityStart::fixed(1), kStraddle).ac ==
          doctest::Approx(pdf(eps, t, VelocityStart::fixed(1), kStraddle).ac).epsilon(1e-7));
  }
  // both positive: upward jump at v2 t where the diffusion interval begins
  {
    const double t = 0.5, eps = 1e-9;
    const double v2t = kBothPos.v2() * t;
    const double jump = pdf(v2t + eps, t, VelocityStart::fixed(1), kBothPos).ac -
                        pdf(v2t - eps, t, VelocityStart::fixed(1), kBothPos).ac;
    const double want = kBothPos.lambda() * std::exp(-kBothPos.xi() * t) /
                        ((kBothPos.v1() - kBothPos.v2()) * (1.0 + kBothPos.lambda() * t));
    CHECK(std::fabs(jump - want) <= 1e-6);
  }
}

TEST_CASE("flow equals the sub-density difference") {
  for (const MotionParams& p : {kStraddle, kBothPos}) {
    const double t = 1.2;
    const double lo = support_lower(t, p), hi = support_upper(t, p);
    for (int j = 1; j <= 2; ++j)
      for (int g = 1; g < 200; ++g) {
        const double x = lo + (hi - lo) * g / 200.0;
        const double diff = subdensity(1, j, x, t, p).ac - subdensity(2, j, x, t, p).ac;
        CHECK(std::fabs(flow(x, t, j, p).ac - diff) <= 1e-12);
      }
  }
}

TEST_CASE("flow reference behavior") {
  check_rel(flow(0.4, 1.5, 1, kStraddle).ac, 0.59815993832324577, 1e-12);
  // signed atom
  const double t = 1.5;
  CHECK(flow(kStraddle.v1() * t, t, 1, kStraddle).atom ==
        doctest::Approx(std::exp(-2.0 * t) / 2.5).epsilon(1e-14));
  CHECK(flow(kStraddle.v2() * t, t, 2, kStraddle).atom ==
        doctest::Approx(-std::exp(-2.0 * t) / 2.5).epsilon(1e-14));
  // reset-free symmetric case at the origin: matches the matrix difference
  const MotionParams sym(1.0, 0.0, 1.0, -1.0);
  const double want = noreset_subdensity(1, 1, 0.0, t, sym) - noreset_subdensity(2, 1, 0.0, t, sym);
  CHECK(flow(0.0, t, 1, sym).ac == doctest::Approx(want).epsilon(1e-14));
  CHECK(want == doctest::Approx(-sym.lambda() / (2.0 * 2.5 * 2.5)).epsilon(1e-14));
}

TEST_CASE("flow integral matches the drift of the conditional mean") {
  // mean velocity: E[V] = (v1+v2)/2 + (v1-v2)/2 * (integral of the flow
  // plus its signed atom); the mean then drifts as dE/dt = E[V] - xi E
  const MotionParams& p = kStraddle;
  const double t = 1.1;
  for (int j = 1; j <= 2; ++j) {
    std::vector<double> pts{support_lower(t, p), p.v2() * t, 0.0, support_upper(t, p)};
    std::sort(pts.begin(), pts.end());
    double flow_mass = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
      flow_mass += oracle::quad([&](double x) { return flow(x, t, j, p).ac; }, pts[k],
                                pts[k + 1], 1e-11);
    flow_mass += flow(p.v(j) * t, t, j, p).atom;
    const double mean_velocity =
        0.5 * (p.v1() + p.v2()) + 0.5 * (p.v1() - p.v2()) * flow_mass;
    const double h = 1e-5;
    const double drift = (mean(t + h, j, p) - mean(t - h, j, p)) / (2.0 * h);
    CHECK(std::fabs(mean_velocity - p.xi() * mean(t, j, p) - drift) <= 1e-6);
  }
}

TEST_CASE("reflection identity against the renewal oracle") {
  // frozen renewal-oracle values of the BothNegative law
  const double t = 0.8;
  check_rel(oracle::subdensity_renewal(1, 1, -0.9, t, kBothNeg), 0.0665438824227595, 1e-9);
  const EvalFrame f = eval_frame(kBothNeg);
  CHECK(f.mirrored);
  const struct {
    int i, j;
    double x, want;
  } rows[] = {{1, 1, -0.9, 0.0665438824227595},
              {2, 1, -1.1, 0.149519942081651},
              {1, 2, -0.3, 0.146848662950003},
              {2, 2, -1.5, 0.176016360912343}};
  for (const auto& r : rows) {
    const double got = subdensity(3 - r.i, 3 - r.j, -r.x, t, f.params).ac;
    check_rel(got, r.want, 1e-12);
    check_rel(oracle::subdensity_renewal(r.i, r.j, r.x, t, kBothNeg), r.want, 1e-8);
  }
  // full grid identity at 1e-12 relative
  for (double x : {-1.4, -0.9, -0.5, -0.2})
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        const double mirrored = subdensity(3 - i, 3 - j, -x, t, f.params).ac;
        const double direct = oracle::subdensity_renewal(i, j, x, t, kBothNeg);
        CHECK(std::fabs(mirrored - direct) <=
              std::max(1e-12, 1e-9 * std::fabs(direct)));
      }
  // pdf_any performs the mirroring internally
  const LawValue v = pdf_any(-0.9, t, VelocityStart::fixed(1), kBothNeg);
  const LawValue w = pdf(0.9, t, VelocityStart::fixed(2), f.params);
  CHECK(v.ac == w.ac);
  CHECK(v.p1 == w.p2);
  CHECK(v.p2 == w.p1);
}

TEST_CASE("auxiliary kernels") {
  const double t = 1.5;
  const AuxKernels k = aux_kernels(0.3, t, kStraddle);
  CHECK(k.tau == doctest::Approx((0.3 + t) / 2.0).epsilon(1e-15));
  CHECK(k.Mx == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(k.mxt == doctest::Approx(-0.3).epsilon(1e-15));
  CHECK(k.indicator_I);
  CHECK(k.gamma_xt > 0.0);
  // tau in (0, t) iff x inside the diffusion interval
  CHECK(!(aux_kernels(1.8, t, kStraddle).tau < t));
  CHECK(aux_kernels(1.8, t, kStraddle).indicator_I == false);
  // gamma kernel vanishes when resets are off
  CHECK(aux_kernels(0.3, t, kStraddle.with_xi(0.0)).gamma_xt == 0.0);
}
