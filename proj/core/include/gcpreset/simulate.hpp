// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gcpreset/params.hpp"

namespace gcpreset {

/// One simulated sample of the reset process at the horizon.
struct PathOutcome {
  double position;
  int velocity;        // current velocity index, 1 or 2
  bool is_atom;        // no reset and no velocity change on [0, t]
  std::uint32_t resets;
};

struct SimConfig {
  double horizon_t;
  std::uint64_t n_paths;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Simulates one path. Reset epochs arrive as a Poisson process of rate xi;
/// within each inter-reset segment a fresh mixing-rate pair is drawn and
/// exponential sojourns alternate from the (re)start velocity. The position
/// integrates the piecewise-constant velocity and snaps to the origin at
/// each reset. Randomness is a pure function of (seed, path_index).
PathOutcome simulate_path(const MotionParams& p, const VelocityStart& start, double horizon_t,
                          std::uint64_t path_index, std::uint64_t seed);

/// Deterministic aggregate of a batch: identical bytes for a given
/// (params, start, horizon, n_paths, seed) regardless of worker count.
struct BatchSummary {
  std::uint64_t n = 0;
  std::uint64_t atom_count = 0;
  std::uint64_t v1_count = 0;       // paths ending with velocity v1
  std::uint64_t total_resets = 0;
  double mean = 0.0;
  double mean_se = 0.0;
  double second = 0.0;
  double second_se = 0.0;
  double atom_freq = 0.0;
  double atom_se = 0.0;
  double reset_dispersion = 0.0;    // Var(resets)/Mean(resets); ~1 for a Poisson count

  std::string to_json() const;      // fixed field order, 17-significant-digit floats
};

struct BatchResult {
  BatchSummary summary;
  std::vector<PathOutcome> paths;   // filled when keep_paths was requested
};

BatchResult run_batch(const MotionParams& p, const VelocityStart& start, const SimConfig& cfg,
                      bool keep_paths = false);

/// Histogram of the continuous part of a sample; atom samples are excluded
/// from the bins and reported as a separate mass.
struct Histogram {
  std::vector<double> edges;        // bins+1 ascending edges
  std::vector<std::uint64_t> count; // per-bin counts
  std::vector<double> density;      // count / (n_total * width)
  std::vector<double> density_se;   // binomial standard error of density
  std::uint64_t n_total = 0;        // all samples including atoms
  std::uint64_t n_binned = 0;
  double atom_freq = 0.0;

  std::string to_json() const;
};

/// Bins the non-atom positions into `bins` equal cells of [lo, hi].
/// Requires bins >= 10; throws errc::empty_samples for an empty sample.
Histogram empirical_density(std::span<const PathOutcome> samples, int bins, double lo, double hi);

}  // namespace gcpreset
