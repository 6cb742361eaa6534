// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "gcpreset/errors.hpp"

namespace gcpreset {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 16;
};

/// Adaptive Gauss-Kronrod integral of f over [a, b]. Throws
/// errc::quadrature_nonconverged when the error estimate misses both
/// tolerances.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

/// Integral over [points.front(), points.back()] split at every interior
/// point; use at known discontinuities and kinks. Points must be sorted.
double integrate_split(const std::function<double(double)>& f, std::vector<double> points,
                       const QuadratureOptions& opts = {});

/// tanh-sinh integral of f over [a, b]; tolerates integrable endpoint
/// singularities (log-type included).
double integrate_singular_endpoints(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts = {});

/// exp-sinh integral of f over [a, +inf) for decaying integrands.
double integrate_half_line(const std::function<double(double)>& f, double a,
                           const QuadratureOptions& opts = {});

}  // namespace gcpreset
