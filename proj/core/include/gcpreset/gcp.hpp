// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gcpreset/errors.hpp"
#include "gcpreset/rng.hpp"

namespace gcpreset {

/// Geometric counting process: a mixed Poisson process whose random rate is
/// exponentially distributed with mean lambda. Increments over a window of
/// length s are geometric with parameter lambda s / (1 + lambda s);
/// intertimes are dependent with modified Pareto (type I) marginals.
struct GcpLaw {
  double lambda;  // intensity, > 0

  explicit GcpLaw(double intensity) : lambda(intensity) {
    if (!(intensity > 0.0)) fail(errc::domain, "GCP intensity must be positive");
  }
};

/// Realized Poisson rates for the two velocity sojourn subprocesses within
/// one reset cycle; conditionally on the pair, sojourns alternate as
/// independent exponentials.
struct MixedRatePair {
  double alpha1;
  double alpha2;
};

/// P[N(t+s) - N(t) = k] = (1/(1+lambda s)) (lambda s/(1+lambda s))^k, s > 0.
double increment_pmf(int k, double s, const GcpLaw& law);

/// Density of the n-th epoch: n (lambda t/(1+lambda t))^{n-1} lambda/(1+lambda t)^2.
double epoch_pdf(int n, double t, const GcpLaw& law);

/// Marginal intertime density lambda/(1+lambda t)^2 (modified Pareto type I).
double intertime_pdf(double t, const GcpLaw& law);

/// Draws the mixing rates for one reset cycle: two independent exponentials
/// with mean lambda.
MixedRatePair draw_rate_pair(const GcpLaw& law, PathRng& rng);

}  // namespace gcpreset
