// SPDX-License-Identifier: Apache-2.0
#include "gcpreset/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace gcpreset {

namespace {

void check_converged(double value, double error, const QuadratureOptions& opts) {
  if (!(error <= opts.abs_tol || error <= opts.rel_tol * std::fabs(value)))
    fail(errc::quadrature_nonconverged,
         "error estimate " + std::to_string(error) + " for value " + std::to_string(value));
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, opts.max_depth, opts.rel_tol, &error);
  check_converged(value, error, opts);
  return value;
}

double integrate_split(const std::function<double(double)>& f, std::vector<double> points,
                       const QuadratureOptions& opts) {
  if (points.size() < 2) fail(errc::domain, "integrate_split needs at least two points");
  points.erase(std::unique(points.begin(), points.end()), points.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] <= points[i + 1])) fail(errc::domain, "split points must be sorted");
    sum += integrate(f, points[i], points[i + 1], opts);
  }
  return sum;
}

double integrate_singular_endpoints(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  boost::math::quadrature::tanh_sinh<double> rule;
  double error = 0.0, l1 = 0.0;
  const double value = rule.integrate(f, a, b, opts.rel_tol, &error, &l1);
  check_converged(value, error * l1, opts);
  return value;
}

double integrate_half_line(const std::function<double(double)>& f, double a,
                           const QuadratureOptions& opts) {
  boost::math::quadrature::exp_sinh<double> rule;
  double error = 0.0, l1 = 0.0;
  const double value = rule.integrate([&](double u) { return f(a + u); }, opts.rel_tol, &error, &l1);
  check_converged(value, error * l1, opts);
  return value;
}

}  // namespace gcpreset
