// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: evaluate the closed-form laws on grids (CSV),
// run the path simulator and the validation suites (JSON).
// Exit codes: 0 success, 1 failed validation checks, 2 bad flags,
// 3 domain errors.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gcpreset/errors.hpp"
#include "gcpreset/law.hpp"
#include "gcpreset/manifest.hpp"
#include "gcpreset/params.hpp"
#include "gcpreset/simulate.hpp"
#include "gcpreset/validation.hpp"

namespace {

using namespace gcpreset;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

unsigned default_workers() {
  if (const char* env = std::getenv("GCPRESET_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

VelocityStart parse_start(const std::string& text) {
  if (text == "v1") return VelocityStart::fixed(1);
  if (text == "v2") return VelocityStart::fixed(2);
  if (text.rfind("random:", 0) == 0) return VelocityStart::random(std::stod(text.substr(7)));
  throw CLI::ValidationError("--start", "expected v1, v2 or random:<q>");
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::domain, "cannot open output file " + path);
  out << body;
}

struct ParamFlags {
  double lambda = 1.0, xi = 0.0, v1 = 1.0, v2 = -1.0;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--lambda", lambda, "GCP intensity (events per unit time)")->required();
    cmd.add_option("--xi", xi, "reset rate (0 disables resetting)")->required();
    cmd.add_option("--v1", v1, "fast velocity")->required();
    cmd.add_option("--v2", v2, "slow velocity (v2 < v1)")->required();
  }
  MotionParams params() const { return MotionParams(lambda, xi, v1, v2); }
};

// ---------------------------------------------------------------- density

struct DensityArgs {
  ParamFlags pf;
  double t = 1.0;
  std::string start_text = "v1";
  std::string law = "pdf";
  int grid = 200;
  double x_min = 0.0, x_max = 0.0;
  bool have_range = false;
  std::string out;
};

int run_density(const DensityArgs& a) {
  const MotionParams p = a.pf.params();
  const VelocityStart start = parse_start(a.start_text);
  const EvalFrame f = eval_frame(p);
  const VelocityStart fstart = f.map_start(start);

  const bool stationary_law = a.law == "stationary" || a.law == "random-stationary";
  if (!stationary_law && !(a.t > 0.0)) fail(errc::domain, "--t must be positive");

  double lo, hi;
  if (a.have_range) {
    lo = a.x_min;
    hi = a.x_max;
    if (!(lo < hi)) fail(errc::domain, "need --x-min < --x-max");
  } else if (stationary_law) {
    if (p.xi() == 0.0) fail(errc::xi_zero, "stationary law requires xi > 0");
    const double span = 5.0 / p.xi();  // several mean reset intervals
    lo = p.v2() < 0.0 ? p.v2() * span : 0.0;
    hi = p.v1() > 0.0 ? p.v1() * span : 0.0;
    if (p.regime() == VelocityRegime::both_negative) lo = p.v2() * span, hi = 0.0;
  } else {
    const EvalFrame g = eval_frame(p);
    lo = g.mirrored ? -support_upper(a.t, g.params) : support_lower(a.t, g.params);
    hi = g.mirrored ? -support_lower(a.t, g.params) : support_upper(a.t, g.params);
  }

  const int sub_index = a.law == "sub:1" ? 1 : a.law == "sub:2" ? 2 : 0;

  // one row: x, ac, p1, p2, atom_at
  const auto eval_row = [&](double x) -> std::array<std::optional<double>, 4> {
    const double fx = f.map_x(x);
    if (a.law == "pdf") {
      const LawValue v = pdf_any(x, a.t, start, p);
      return {v.ac, v.p1, v.p2,
              v.atom != 0.0 ? std::optional<double>(v.atom) : std::nullopt};
    }
    if (a.law == "flow") {
      const int j = fstart.fixed_index();  // flow requires a fixed start
      const FlowValue w = flow(fx, a.t, j, f.params);
      const double sign = f.mirrored ? -1.0 : 1.0;
      const LawValue v = pdf_any(x, a.t, start, p);
      return {sign * w.ac, v.p1, v.p2,
              w.atom != 0.0 ? std::optional<double>(sign * w.atom) : std::nullopt};
    }
    if (sub_index != 0) {
      const int fi = f.mirrored ? 3 - sub_index : sub_index;
      double ac = 0.0, atom = 0.0;
      for (int j = 1; j <= 2; ++j) {
        const double w = fstart.weight(j);
        if (w == 0.0) continue;
        const LawValue v = subdensity(fi, j, fx, a.t, f.params);
        ac += w * v.ac;
        atom += w * v.atom;
      }
      std::array<std::optional<double>, 4> row{ac, std::nullopt, std::nullopt,
                                               atom != 0.0 ? std::optional<double>(atom)
                                                           : std::nullopt};
      (sub_index == 1 ? row[1] : row[2]) = ac;
      return row;
    }
    if (a.law == "lambda-inf")
      return {pdf_lambda_inf(fx, a.t, f.params), std::nullopt, std::nullopt, std::nullopt};
    if (a.law == "stationary") {
      const int j = fstart.fixed_index();
      return {stationary_pdf(fx, j, f.params), std::nullopt, std::nullopt, std::nullopt};
    }
    if (a.law == "random-stationary")
      return {pdf_random_stationary(fx, fstart.q(), f.params), std::nullopt, std::nullopt,
              std::nullopt};
    throw CLI::ValidationError("--law", "unknown law " + a.law);
  };

  RunManifest manifest{p, start,
                       "density --law " + a.law + " --t " + fmt17(stationary_law ? 0.0 : a.t) +
                           " --grid " + std::to_string(a.grid) + " --x-min " + fmt17(lo) +
                           " --x-max " + fmt17(hi),
                       0, 0, 1, ""};

  std::string body = "# manifest=" + manifest.hash() + " " + manifest.canonical_json() + "\n";
  body += "x,ac,p1,p2,atom_at\n";
  for (int i = 0; i < a.grid; ++i) {
    const double x = a.grid == 1 ? lo : lo + (hi - lo) * i / (a.grid - 1);
    const auto row = eval_row(x);
    body += fmt17(x);
    for (const auto& cell : row) {
      body += ",";
      if (cell) body += fmt17(*cell);
    }
    body += "\n";
  }
  write_output(a.out, body);
  std::cerr << "density: " << a.grid << " rows, manifest " << manifest.hash() << "\n";
  return 0;
}

// ---------------------------------------------------------------- moments

struct MomentArgs {
  ParamFlags pf;
  double t_max = 5.0;
  int steps = 100;
  std::string out;
};

int run_moments(const MomentArgs& a) {
  const MotionParams p = a.pf.params();
  if (!(a.t_max > 0.0) || a.steps < 1) fail(errc::domain, "need --t-max > 0 and --steps >= 1");
  const EvalFrame f = eval_frame(p);
  const double sign = f.mirrored ? -1.0 : 1.0;

  RunManifest manifest{p, VelocityStart::fixed(1),
                       "moments --t-max " + fmt17(a.t_max) + " --steps " +
                           std::to_string(a.steps),
                       0, 0, 1, ""};
  std::string body = "# manifest=" + manifest.hash() + " " + manifest.canonical_json() + "\n";
  body += "t,mean_j1,mean_j2,second_j1,second_j2,variance_j1,variance_j2,msd_j1,msd_j2\n";
  for (int i = 0; i <= a.steps; ++i) {
    const double t = a.t_max * i / a.steps;
    const int j1 = f.map_j(1), j2 = f.map_j(2);
    body += fmt17(t);
    body += "," + fmt17(sign * mean(t, j1, f.params));
    body += "," + fmt17(sign * mean(t, j2, f.params));
    body += "," + fmt17(second_moment(t, j1, f.params));
    body += "," + fmt17(second_moment(t, j2, f.params));
    body += "," + fmt17(variance(t, j1, f.params));
    body += "," + fmt17(variance(t, j2, f.params));
    body += "," + fmt17(mean_square_distance(p.xi(), t, j1, f.params));
    body += "," + fmt17(mean_square_distance(p.xi(), t, j2, f.params));
    body += "\n";
  }
  write_output(a.out, body);
  std::cerr << "moments: " << a.steps + 1 << " rows, manifest " << manifest.hash() << "\n";
  return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  ParamFlags pf;
  double t = 1.0;
  std::string start_text = "v1";
  std::uint64_t n_paths = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  int bins = 40;
  std::string out;
  std::string raw_out;
};

int run_simulate(const SimulateArgs& a) {
  const MotionParams p = a.pf.params();
  const VelocityStart start = parse_start(a.start_text);
  const unsigned workers = a.workers ? a.workers : default_workers();
  const SimConfig cfg{a.t, a.n_paths, a.seed, workers};
  const bool keep = a.bins > 0 || !a.raw_out.empty();
  const BatchResult batch = run_batch(p, start, cfg, keep);

  RunManifest manifest{p, start, "simulate --t " + fmt17(a.t), a.seed, a.n_paths, workers, ""};
  std::string body = "{\"manifest\":" + manifest.canonical_json() +
                     ",\"manifest_hash\":\"" + manifest.hash() + "\"";
  body += ",\"summary\":" + batch.summary.to_json();
  if (a.bins > 0) {
    const EvalFrame f = eval_frame(p);
    const double lo = f.mirrored ? -support_upper(a.t, f.params) : support_lower(a.t, f.params);
    const double hi = f.mirrored ? -support_lower(a.t, f.params) : support_upper(a.t, f.params);
    body += ",\"histogram\":" + empirical_density(batch.paths, a.bins, lo, hi).to_json();
  }
  body += "}\n";
  write_output(a.out, body);

  if (!a.raw_out.empty()) {
    std::string raw = "# manifest=" + manifest.hash() + "\n";
    raw += "path_index,position,velocity,is_atom,resets\n";
    for (std::uint64_t i = 0; i < batch.paths.size(); ++i) {
      const PathOutcome& o = batch.paths[i];
      raw += std::to_string(i) + "," + fmt17(o.position) + "," + std::to_string(o.velocity) +
             "," + (o.is_atom ? "1" : "0") + "," + std::to_string(o.resets) + "\n";
    }
    write_output(a.raw_out, raw);
  }
  std::cerr << "simulate: n=" << a.n_paths << " workers=" << workers << " manifest "
            << manifest.hash() << "\n";
  return 0;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  std::string suite = "fast";
  std::uint64_t seed = 20240901;
  unsigned workers = 0;
  std::string out;
};

int run_validate(const ValidateArgs& a) {
  const Suite suite = a.suite == "full" ? Suite::full : Suite::fast;
  const unsigned workers = a.workers ? a.workers : default_workers();
  const auto reports = run_suite(suite, workers, a.seed);
  const bool ok = all_passed(reports);
  std::string body = "{\"suite\":\"" + a.suite + "\",\"seed\":" + std::to_string(a.seed) +
                     ",\"tool_version\":\"" + kToolVersion + "\",\"all_passed\":" +
                     (ok ? "true" : "false") + ",\"checks\":" + reports_to_json(reports) + "}\n";
  write_output(a.out, body);
  std::size_t failed = 0;
  for (const auto& r : reports)
    if (!r.passed) {
      ++failed;
      std::cerr << "FAILED " << r.check_id << ": observed " << r.observed << " target "
                << r.target << " tol " << r.tolerance << (r.relative ? " (rel)" : "") << "\n";
    }
  std::cerr << "validate: " << reports.size() - failed << "/" << reports.size()
            << " checks passed\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Telegraph process driven by geometric counting processes with Poisson resetting"};
  app.require_subcommand(1);

  DensityArgs da;
  auto* density = app.add_subcommand("density", "evaluate a position law on an x-grid (CSV)");
  da.pf.add_to(*density);
  density->add_option("--t", da.t, "horizon");
  density->add_option("--start", da.start_text, "v1, v2 or random:<q>");
  density
      ->add_option("--law", da.law,
                   "pdf | flow | sub:1 | sub:2 | lambda-inf | stationary | random-stationary")
      ->check(CLI::IsMember({"pdf", "flow", "sub:1", "sub:2", "lambda-inf", "stationary",
                             "random-stationary"}));
  density->add_option("--grid", da.grid, "number of grid points")->check(CLI::PositiveNumber);
  auto* xmin = density->add_option("--x-min", da.x_min, "grid lower end");
  auto* xmax = density->add_option("--x-max", da.x_max, "grid upper end");
  density->add_option("--out", da.out, "output file (default stdout)");

  MomentArgs ma;
  auto* moments = app.add_subcommand("moments", "moment and distance curves over a t-grid (CSV)");
  ma.pf.add_to(*moments);
  moments->add_option("--t-max", ma.t_max, "largest horizon")->required();
  moments->add_option("--steps", ma.steps, "grid steps")->check(CLI::PositiveNumber);
  moments->add_option("--out", ma.out, "output file (default stdout)");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo batch summary (JSON)");
  sa.pf.add_to(*simulate);
  simulate->add_option("--t", sa.t, "horizon")->required();
  simulate->add_option("--start", sa.start_text, "v1, v2 or random:<q>");
  simulate->add_option("--n-paths", sa.n_paths, "number of paths")->required();
  simulate->add_option("--seed", sa.seed, "RNG seed");
  simulate->add_option("--workers", sa.workers, "worker threads (default GCPRESET_WORKERS)");
  simulate->add_option("--bins", sa.bins, "histogram bins (0 disables)");
  simulate->add_option("--out", sa.out, "output file (default stdout)");
  simulate->add_option("--raw-out", sa.raw_out, "raw per-path sample CSV");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "oracle check suite (JSON report)");
  validate->add_option("--suite", va.suite, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}));
  validate->add_option("--seed", va.seed, "RNG seed for the statistical checks");
  validate->add_option("--workers", va.workers, "worker threads");
  validate->add_option("--out", va.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (density->parsed()) {
      da.have_range = xmin->count() > 0 && xmax->count() > 0;
      return run_density(da);
    }
    if (moments->parsed()) return run_moments(ma);
    if (simulate->parsed()) return run_simulate(sa);
    if (validate->parsed()) return run_validate(va);
  } catch (const gcpreset::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
