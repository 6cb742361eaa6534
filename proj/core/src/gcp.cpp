// SPDX-License-Identifier: Apache-2.0
#include "gcpreset/gcp.hpp"

#include <cmath>

namespace gcpreset {

double increment_pmf(int k, double s, const GcpLaw& law) {
  if (k < 0) fail(errc::domain, "count must be nonnegative");
  if (!(s > 0.0)) fail(errc::domain, "window length must be positive");
  const double ls = law.lambda * s;
  return std::pow(ls / (1.0 + ls), k) / (1.0 + ls);
}

double epoch_pdf(int n, double t, const GcpLaw& law) {
  if (n < 1) fail(errc::domain, "epoch index must be >= 1");
  if (!(t >= 0.0)) fail(errc::domain, "time must be nonnegative");
  const double lt = law.lambda * t;
  return n * std::pow(lt / (1.0 + lt), n - 1) * law.lambda / ((1.0 + lt) * (1.0 + lt));
}

double intertime_pdf(double t, const GcpLaw& law) {
  if (!(t >= 0.0)) fail(errc::domain, "time must be nonnegative");
  const double lt = law.lambda * t;
  return law.lambda / ((1.0 + lt) * (1.0 + lt));
}

MixedRatePair draw_rate_pair(const GcpLaw& law, PathRng& rng) {
  return {rng.exponential_mean(law.lambda), rng.exponential_mean(law.lambda)};
}

}  // namespace gcpreset
