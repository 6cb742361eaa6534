// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gcpreset/params.hpp"
#include "gcpreset/simulate.hpp"

namespace gcpreset {

/// One oracle comparison. passed is |observed - target| <= tolerance,
/// taken relative to |target| when relative is set.
struct CheckReport {
  std::string check_id;
  double target = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool passed = false;
  std::string detail;

  std::string to_json() const;
};

CheckReport make_check(std::string id, double target, double observed, double tolerance,
                       bool relative, std::string detail = "");

/// Normalization of the position law: adaptive quadrature of the ac part
/// split at the known breakpoints, plus the atom mass; target 1 within
/// 1e-8 absolute.
CheckReport check_normalization(const MotionParams& p, const VelocityStart& start, double t);

/// Statistical comparisons of a Monte Carlo batch against the closed
/// forms, each gated at four standard errors (or the 1% chi-square /
/// Kolmogorov-Smirnov critical value for distribution checks).
enum class McCheck : unsigned {
  moments = 1u << 0,
  atom = 1u << 1,
  density_chi2 = 1u << 2,
  subdensity_chi2 = 1u << 3,
};
std::vector<CheckReport> check_mc_agreement(const MotionParams& p, const VelocityStart& start,
                                            const SimConfig& cfg, unsigned selector);

enum class Suite { fast, full };

/// Runs the named suite; reports come back sorted by check_id.
/// fast: analytic identities plus small-sample statistical smoke checks.
/// full: fast plus the million-path statistical gates.
std::vector<CheckReport> run_suite(Suite suite, unsigned workers, std::uint64_t seed);

std::string reports_to_json(std::span<const CheckReport> reports);
bool all_passed(std::span<const CheckReport> reports);

/// Pearson statistic sum (obs - exp)^2 / exp; sizes must match.
double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> expected);

/// Upper-tail critical value of the chi-square distribution.
double chi_square_critical(int dof, double upper_tail_prob);

/// Two-sided Kolmogorov-Smirnov critical value at the given level for
/// sample size n (asymptotic form).
double ks_critical(std::size_t n, double upper_tail_prob);

}  // namespace gcpreset
