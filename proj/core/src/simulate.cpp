// SPDX-License-Identifier: Apache-2.0
#include "gcpreset/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>
#include <vector>

#include "gcpreset/gcp.hpp"
#include "gcpreset/rng.hpp"

namespace gcpreset {

namespace {

// Paths are summed in fixed-size blocks and block partials are reduced in
// block order, so floating-point totals do not depend on the worker count.
constexpr std::uint64_t kBlock = 8192;

struct Partial {
  double sum_x = 0.0, sum_x2 = 0.0, sum_x4 = 0.0;
  double sum_r = 0.0, sum_r2 = 0.0;
  std::uint64_t atoms = 0, v1 = 0, resets = 0, n = 0;
};

void append_double(std::string& out, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "\"%s\":%.17g", key, v);
  out += buf;
}

void append_u64(std::string& out, const char* key, std::uint64_t v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "\"%s\":%llu", key, static_cast<unsigned long long>(v));
  out += buf;
}

}  // namespace

PathOutcome simulate_path(const MotionParams& p, const VelocityStart& start, double horizon_t,
                          std::uint64_t path_index, std::uint64_t seed) {
  if (!(horizon_t > 0.0)) fail(errc::domain, "horizon must be positive");
  PathRng rng(seed, path_index);
  const GcpLaw gcp(p.lambda());
  const int j0 = start.is_random() ? (rng.bernoulli(start.q()) ? 1 : 2) : start.fixed_index();

  const double xi = p.xi();
  const double vel1 = p.v1(), vel2 = p.v2();

  PathOutcome out{};
  std::uint32_t resets = 0;
  double seg_start = 0.0;
  for (;;) {
    const double next_reset = xi > 0.0 ? seg_start + rng.exponential_rate(xi) : horizon_t + 1.0;
    const bool final_segment = next_reset >= horizon_t;
    const double seg_end = final_segment ? horizon_t : next_reset;

    const MixedRatePair rates = draw_rate_pair(gcp, rng);
    int vel = j0;
    double pos = 0.0;
    double remaining = seg_end - seg_start;
    std::uint32_t changes = 0;
    for (;;) {
      const double sojourn = rng.exponential_rate(vel == 1 ? rates.alpha1 : rates.alpha2);
      const double run = std::min(sojourn, remaining);
      pos += (vel == 1 ? vel1 : vel2) * run;
      remaining -= run;
      if (remaining <= 0.0 && sojourn >= run) break;
      vel = 3 - vel;
      ++changes;
    }
    if (final_segment) {
      out.position = pos;
      out.velocity = vel;
      out.resets = resets;
      out.is_atom = resets == 0 && changes == 0;
      return out;
    }
    ++resets;
    seg_start = next_reset;
  }
}

BatchResult run_batch(const MotionParams& p, const VelocityStart& start, const SimConfig& cfg,
                      bool keep_paths) {
  if (cfg.n_paths < 1) fail(errc::domain, "n_paths must be >= 1");
  if (!(cfg.horizon_t > 0.0)) fail(errc::domain, "horizon must be positive");
  const std::uint64_t n = cfg.n_paths;
  const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<Partial> partials(blocks);

  BatchResult result;
  if (keep_paths) result.paths.resize(n);
  PathOutcome* paths = keep_paths ? result.paths.data() : nullptr;

  const auto run_block = [&](std::uint64_t b) {
    Partial acc;
    const std::uint64_t begin = b * kBlock;
    const std::uint64_t end = std::min(begin + kBlock, n);
    for (std::uint64_t i = begin; i < end; ++i) {
      const PathOutcome o = simulate_path(p, start, cfg.horizon_t, i, cfg.seed);
      const double x = o.position;
      const double x2 = x * x;
      acc.sum_x += x;
      acc.sum_x2 += x2;
      acc.sum_x4 += x2 * x2;
      acc.sum_r += o.resets;
      acc.sum_r2 += static_cast<double>(o.resets) * o.resets;
      acc.atoms += o.is_atom ? 1 : 0;
      acc.v1 += o.velocity == 1 ? 1 : 0;
      acc.resets += o.resets;
      ++acc.n;
      if (paths) paths[i] = o;
    }
    partials[b] = acc;
  };

  const unsigned workers = std::max(1u, cfg.workers);
  if (workers == 1 || blocks == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  Partial total;
  for (const Partial& q : partials) {  // fixed reduction order
    total.sum_x += q.sum_x;
    total.sum_x2 += q.sum_x2;
    total.sum_x4 += q.sum_x4;
    total.sum_r += q.sum_r;
    total.sum_r2 += q.sum_r2;
    total.atoms += q.atoms;
    total.v1 += q.v1;
    total.resets += q.resets;
    total.n += q.n;
  }

  BatchSummary& s = result.summary;
  const double dn = static_cast<double>(n);
  s.n = n;
  s.atom_count = total.atoms;
  s.v1_count = total.v1;
  s.total_resets = total.resets;
  s.mean = total.sum_x / dn;
  const double m2 = total.sum_x2 / dn;
  const double m4 = total.sum_x4 / dn;
  s.mean_se = std::sqrt(std::max(0.0, m2 - s.mean * s.mean) / dn);
  s.second = m2;
  s.second_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / dn);
  s.atom_freq = static_cast<double>(total.atoms) / dn;
  s.atom_se = std::sqrt(s.atom_freq * (1.0 - s.atom_freq) / dn);
  const double rm = total.sum_r / dn;
  const double rvar = total.sum_r2 / dn - rm * rm;
  s.reset_dispersion = rm > 0.0 ? rvar / rm : 0.0;
  return result;
}

std::string BatchSummary::to_json() const {
  std::string out = "{";
  append_u64(out, "n", n);
  out += ",";
  append_double(out, "mean", mean);
  out += ",";
  append_double(out, "mean_se", mean_se);
  out += ",";
  append_double(out, "second", second);
  out += ",";
  append_double(out, "second_se", second_se);
  out += ",";
  append_double(out, "atom_freq", atom_freq);
  out += ",";
  append_double(out, "atom_se", atom_se);
  out += ",";
  append_u64(out, "atom_count", atom_count);
  out += ",";
  append_u64(out, "v1_count", v1_count);
  out += ",";
  append_u64(out, "total_resets", total_resets);
  out += ",";
  append_double(out, "reset_dispersion", reset_dispersion);
  out += "}";
  return out;
}

Histogram empirical_density(std::span<const PathOutcome> samples, int bins, double lo, double hi) {
  if (samples.empty()) fail(errc::empty_samples, "no samples");
  if (bins < 10) fail(errc::domain, "need at least 10 bins");
  if (!(lo < hi)) fail(errc::domain, "need lo < hi");
  Histogram h;
  h.n_total = samples.size();
  h.edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * b / bins;
  h.count.assign(bins, 0);
  const double width = (hi - lo) / bins;
  for (const PathOutcome& o : samples) {
    if (o.is_atom) continue;
    const int b = std::min(bins - 1, std::max(0, static_cast<int>((o.position - lo) / width)));
    ++h.count[b];
    ++h.n_binned;
  }
  std::uint64_t atoms = h.n_total - h.n_binned;
  h.atom_freq = static_cast<double>(atoms) / static_cast<double>(h.n_total);
  h.density.resize(bins);
  h.density_se.resize(bins);
  const double dn = static_cast<double>(h.n_total);
  for (int b = 0; b < bins; ++b) {
    const double f = static_cast<double>(h.count[b]) / dn;
    h.density[b] = f / width;
    h.density_se[b] = std::sqrt(f * (1.0 - f) / dn) / width;
  }
  return h;
}

std::string Histogram::to_json() const {
  std::string out = "{";
  append_u64(out, "n_total", n_total);
  out += ",";
  append_u64(out, "n_binned", n_binned);
  out += ",";
  append_double(out, "atom_freq", atom_freq);
  out += ",\"edges\":[";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", edges[i]);
    out += buf;
  }
  out += "],\"count\":[";
  for (std::size_t i = 0; i < count.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%llu", i ? "," : "",
                  static_cast<unsigned long long>(count[i]));
    out += buf;
  }
  out += "],\"density\":[";
  for (std::size_t i = 0; i < density.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", density[i]);
    out += buf;
  }
  out += "]}";
  return out;
}

}  // namespace gcpreset
