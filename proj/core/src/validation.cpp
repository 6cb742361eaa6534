// SPDX-License-Identifier: Apache-2.0
#include "gcpreset/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "gcpreset/gcp.hpp"
#include "gcpreset/law.hpp"
#include "gcpreset/manifest.hpp"
#include "gcpreset/quadrature.hpp"
#include "gcpreset/rng.hpp"
#include "gcpreset/specfun.hpp"

namespace gcpreset {

namespace {

std::vector<double> interior_grid(double lo, double hi, int n) {
  std::vector<double> xs;
  xs.reserve(n);
  for (int i = 1; i <= n; ++i) xs.push_back(lo + (hi - lo) * i / (n + 1));
  return xs;
}

std::vector<double> law_breakpoints(double t, const MotionParams& p) {
  std::vector<double> pts{support_lower(t, p), support_upper(t, p)};
  for (double b : {0.0, p.v2() * t})
    if (pts.front() < b && b < pts.back()) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  return pts;
}

double analytic_mean(double t, const VelocityStart& s, const MotionParams& p) {
  const EvalFrame f = eval_frame(p);
  const VelocityStart ms = f.map_start(s);
  const double m = ms.weight(1) * mean(t, 1, f.params) + ms.weight(2) * mean(t, 2, f.params);
  return f.mirrored ? -m : m;
}

double analytic_second(double t, const VelocityStart& s, const MotionParams& p) {
  const EvalFrame f = eval_frame(p);
  const VelocityStart ms = f.map_start(s);
  return ms.weight(1) * second_moment(t, 1, f.params) +
         ms.weight(2) * second_moment(t, 2, f.params);
}

// ac mass of the position law on [a, b] in original coordinates.
double ac_mass(double a, double b, double t, const VelocityStart& s, const MotionParams& p) {
  const EvalFrame f = eval_frame(p);
  const VelocityStart ms = f.map_start(s);
  const double lo = f.mirrored ? -b : a;
  const double hi = f.mirrored ? -a : b;
  std::vector<double> pts{lo, hi};
  for (double c : law_breakpoints(t, f.params))
    if (lo < c && c < hi) pts.push_back(c);
  std::sort(pts.begin(), pts.end());
  QuadratureOptions opts;
  opts.abs_tol = 1e-11;
  opts.rel_tol = 1e-9;
  return integrate_split([&](double x) { return pdf(x, t, ms, f.params).ac; }, pts, opts);
}

// ac mass of the end-velocity-i sub-density on [a, b].
double sub_mass(int i, double a, double b, double t, const VelocityStart& s,
                const MotionParams& p) {
  const EvalFrame f = eval_frame(p);
  const VelocityStart ms = f.map_start(s);
  const int mi = f.mirrored ? 3 - i : i;
  const double lo = f.mirrored ? -b : a;
  const double hi = f.mirrored ? -a : b;
  std::vector<double> pts{lo, hi};
  for (double c : law_breakpoints(t, f.params))
    if (lo < c && c < hi) pts.push_back(c);
  std::sort(pts.begin(), pts.end());
  QuadratureOptions opts;
  opts.abs_tol = 1e-11;
  opts.rel_tol = 1e-9;
  return integrate_split(
      [&](double x) {
        const LawValue v = pdf(x, t, ms, f.params);
        return mi == 1 ? v.p1 : v.p2;
      },
      pts, opts);
}

double golden_section_min(const std::function<double(double)>& f, double a, double b) {
  constexpr double phi = 0.6180339887498949;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 300 && (b - a) > 1e-13 * (1.0 + std::fabs(a) + std::fabs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

void append_json_double(std::string& out, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "\"%s\":%.17g", key, v);
  out += buf;
}

std::string param_detail(const MotionParams& p, double t, const char* extra = "") {
  char buf[160];
  std::snprintf(buf, sizeof buf, "lambda=%g xi=%g v=(%g,%g) t=%g %s", p.lambda(), p.xi(), p.v1(),
                p.v2(), t, extra);
  return buf;
}

}  // namespace

CheckReport make_check(std::string id, double target, double observed, double tolerance,
                       bool relative, std::string detail) {
  CheckReport r;
  r.check_id = std::move(id);
  r.target = target;
  r.observed = observed;
  r.tolerance = tolerance;
  r.relative = relative;
  r.detail = std::move(detail);
  const double scale = relative ? std::fabs(target) : 1.0;
  r.passed = std::isfinite(observed) && std::fabs(observed - target) <= tolerance * scale;
  return r;
}

std::string CheckReport::to_json() const {
  std::string out = "{\"check_id\":\"" + check_id + "\",";
  append_json_double(out, "target", target);
  out += ",";
  append_json_double(out, "observed", observed);
  out += ",";
  append_json_double(out, "tolerance", tolerance);
  out += ",\"relative\":";
  out += relative ? "true" : "false";
  out += ",\"passed\":";
  out += passed ? "true" : "false";
  out += ",\"detail\":\"" + detail + "\"}";
  return out;
}

CheckReport check_normalization(const MotionParams& p, const VelocityStart& start, double t) {
  const EvalFrame f = eval_frame(p);
  const double lo = support_lower(t, f.params), hi = support_upper(t, f.params);
  const double total = ac_mass(f.mirrored ? -hi : lo, f.mirrored ? -lo : hi, t, start, p) +
                       atom_mass(1, t, f.params);
  char id[120];
  std::snprintf(id, sizeof id, "norm[%s][%s]/xi=%g/t=%g", start_to_string(start).c_str(),
                to_string(p.regime()), p.xi(), t);
  return make_check(id, 1.0, total, 1e-8, false, param_detail(p, t));
}

double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> expected) {
  if (observed.size() != expected.size()) fail(errc::domain, "size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) fail(errc::domain, "expected counts must be positive");
    const double d = static_cast<double>(observed[i]) - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

double chi_square_critical(int dof, double upper_tail_prob) {
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, upper_tail_prob));
}

double ks_critical(std::size_t n, double upper_tail_prob) {
  return std::sqrt(-0.5 * std::log(upper_tail_prob / 2.0)) / std::sqrt(static_cast<double>(n));
}

std::vector<CheckReport> check_mc_agreement(const MotionParams& p, const VelocityStart& start,
                                            const SimConfig& cfg, unsigned selector) {
  std::vector<CheckReport> out;
  const bool need_paths =
      selector & (static_cast<unsigned>(McCheck::density_chi2) |
                  static_cast<unsigned>(McCheck::subdensity_chi2));
  const BatchResult batch = run_batch(p, start, cfg, need_paths);
  const BatchSummary& s = batch.summary;
  const double t = cfg.horizon_t;
  const std::string tail =
      "n=" + std::to_string(cfg.n_paths) + " seed=" + std::to_string(cfg.seed);

  if (selector & static_cast<unsigned>(McCheck::moments)) {
    out.push_back(make_check("mc/mean[" + start_to_string(start) + "]", analytic_mean(t, start, p),
                             s.mean, 4.0 * s.mean_se, false, param_detail(p, t, tail.c_str())));
    out.push_back(make_check("mc/second[" + start_to_string(start) + "]",
                             analytic_second(t, start, p), s.second, 4.0 * s.second_se, false,
                             param_detail(p, t, tail.c_str())));
  }
  if (selector & static_cast<unsigned>(McCheck::atom)) {
    out.push_back(make_check("mc/atom", atom_mass(1, t, p), s.atom_freq,
                             4.0 * std::max(s.atom_se, 1e-12), false,
                             param_detail(p, t, tail.c_str())));
  }
  if (selector & static_cast<unsigned>(McCheck::density_chi2)) {
    const EvalFrame f = eval_frame(p);
    const double lo = f.mirrored ? -support_upper(t, f.params) : support_lower(t, f.params);
    const double hi = f.mirrored ? -support_lower(t, f.params) : support_upper(t, f.params);
    constexpr int bins = 40;
    const Histogram h = empirical_density(batch.paths, bins, lo, hi);
    const double ac_total = 1.0 - atom_mass(1, t, f.params);
    std::vector<double> expected(bins);
    for (int b = 0; b < bins; ++b)
      expected[b] =
          static_cast<double>(h.n_binned) * ac_mass(h.edges[b], h.edges[b + 1], t, start, p) /
          ac_total;
    const double stat = chi_square_statistic(h.count, expected);
    const double crit = chi_square_critical(bins - 1, 0.01);
    CheckReport r = make_check("mc/density-chi2", 0.0, stat, crit, false,
                               param_detail(p, t, tail.c_str()));
    r.passed = stat < crit;
    out.push_back(r);
  }
  if (selector & static_cast<unsigned>(McCheck::subdensity_chi2)) {
    constexpr int bins = 24;
    const EvalFrame f = eval_frame(p);
    const double lo = f.mirrored ? -support_upper(t, f.params) : support_lower(t, f.params);
    const double hi = f.mirrored ? -support_lower(t, f.params) : support_upper(t, f.params);
    const double width = (hi - lo) / bins;
    for (int vel = 1; vel <= 2; ++vel) {
      std::vector<std::uint64_t> counts(bins, 0);
      std::uint64_t n_class = 0;
      for (const PathOutcome& o : batch.paths) {
        if (o.is_atom || o.velocity != vel) continue;
        const int b =
            std::min(bins - 1, std::max(0, static_cast<int>((o.position - lo) / width)));
        ++counts[b];
        ++n_class;
      }
      std::vector<double> mass(bins);
      double mass_total = 0.0;
      for (int b = 0; b < bins; ++b) {
        mass[b] = sub_mass(vel, lo + b * width, lo + (b + 1) * width, t, start, p);
        mass_total += mass[b];
      }
      std::vector<double> expected(bins);
      for (int b = 0; b < bins; ++b)
        expected[b] = static_cast<double>(n_class) * mass[b] / mass_total;
      const double stat = chi_square_statistic(counts, expected);
      const double crit = chi_square_critical(bins - 1, 0.01);
      CheckReport r = make_check("mc/subdensity-chi2[v" + std::to_string(vel) + "]", 0.0, stat,
                                 crit, false, param_detail(p, t, tail.c_str()));
      r.passed = stat < crit;
      out.push_back(r);
    }
  }
  return out;
}

namespace {

// Worst absolute deviation |f(x) - g(x)| over a grid.
double max_abs_dev(const std::vector<double>& xs, const std::function<double(double)>& f,
                   const std::function<double(double)>& g) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::fabs(f(x) - g(x)));
  return worst;
}

void add_analytic_checks(std::vector<CheckReport>& out) {
  const MotionParams straddle(1.0, 2.0, 1.0, -1.0);
  const MotionParams straddle_wide(1.0, 0.5, 2.0, -4.0);
  const MotionParams bothpos(1.0, 2.0, 4.0, 2.0);
  const MotionParams bothpos_hi(2.0, 10.0, 3.0, 0.5);
  const MotionParams bothneg(1.0, 2.0, -1.0, -2.0);
  const auto v1 = VelocityStart::fixed(1);
  const auto v2 = VelocityStart::fixed(2);
  const auto rnd = VelocityStart::random(0.3);

  // normalization across regimes, starts and reset rates (xi in {0,.5,2,10})
  out.push_back(check_normalization(straddle, v1, 1.5));
  out.push_back(check_normalization(straddle, v2, 0.5));
  out.push_back(check_normalization(straddle, rnd, 1.5));
  out.push_back(check_normalization(straddle_wide, v2, 1.0));
  out.push_back(check_normalization(straddle.with_xi(0.0), v1, 1.5));
  out.push_back(check_normalization(bothpos, v1, 0.5));
  out.push_back(check_normalization(bothpos, v2, 1.5));
  out.push_back(check_normalization(bothpos, rnd, 0.5));
  out.push_back(check_normalization(bothpos_hi, v2, 1.0));
  out.push_back(check_normalization(bothpos.with_xi(0.0), v2, 1.0));
  out.push_back(check_normalization(bothneg, v1, 0.8));

  // pdf assembled from sub-densities vs its own closed form
  for (const MotionParams& p : {straddle, bothpos}) {
    const double t = 1.2;
    const auto xs = interior_grid(support_lower(t, p), support_upper(t, p), 160);
    double worst = 0.0;
    for (int j = 1; j <= 2; ++j)
      worst = std::max(
          worst, max_abs_dev(
                     xs, [&](double x) { return pdf(x, t, VelocityStart::fixed(j), p).ac; },
                     [&](double x) { return pdf_marginal_ac(x, t, j, p); }));
    out.push_back(make_check(std::string("identity/pdf-decomposition[") + to_string(p.regime()) +
                                 "]",
                             0.0, worst, 1e-12, false, param_detail(p, t)));
  }

  // flow closed form vs sub-density difference
  for (const MotionParams& p : {straddle, bothpos}) {
    const double t = 1.2;
    const auto xs = interior_grid(support_lower(t, p), support_upper(t, p), 160);
    double worst = 0.0;
    for (int j = 1; j <= 2; ++j)
      worst = std::max(
          worst,
          max_abs_dev(
              xs, [&](double x) { return flow(x, t, j, p).ac; },
              [&](double x) {
                return subdensity(1, j, x, t, p).ac - subdensity(2, j, x, t, p).ac;
              }));
    out.push_back(make_check(std::string("identity/flow[") + to_string(p.regime()) + "]", 0.0,
                             worst, 1e-12, false, param_detail(p, t)));
  }

  // sub-density limits toward the ends of the diffusion interval
  {
    const double t = 1.5;
    double worst = 0.0;
    const auto probe = [&](const MotionParams& p, int end_j) {
      const double vt = p.v(end_j) * t;
      const double lam = p.lambda(), xi = p.xi(), d = p.v1() - p.v2();
      const double u = 1.0 + lam * t;
      const double x = vt - (end_j == 1 ? 1e-10 : -1e-10);
      const double l_same_same =
          std::exp(-xi * t) / u * (xi / std::fabs(p.v(end_j)) + lam * lam * t / (d * u));
      const double l_same_other = std::exp(-xi * t) * lam / (d * u);
      const double l_other_same = std::exp(-xi * t) * lam / (d * u * u);
      worst = std::max(worst,
                       std::fabs(subdensity(end_j, end_j, x, t, p).ac - l_same_same));
      worst = std::max(
          worst, std::fabs(subdensity(end_j, 3 - end_j, x, t, p).ac - l_same_other));
      worst = std::max(
          worst, std::fabs(subdensity(3 - end_j, end_j, x, t, p).ac - l_other_same));
    };
    probe(straddle, 1);
    probe(straddle, 2);
    probe(straddle_wide, 1);
    probe(straddle_wide, 2);
    probe(bothpos, 1);  // at v2 t the reset kernels do not vanish, so only the v1 end here
    out.push_back(make_check("identity/boundary-limits", 0.0, worst, 1e-8, false,
                             "worst deviation from the diffusion-interval limits"));
  }
  {
    // straddling only: p_{3-j}(. | v_{3-j}) vanishes at v_j t
    const double t = 1.5;
    const double x1 = straddle.v1() * t - 1e-10;
    const double x2 = straddle.v2() * t + 1e-10;
    const double worst = std::max(std::fabs(subdensity(2, 2, x1, t, straddle).ac),
                                  std::fabs(subdensity(1, 1, x2, t, straddle).ac));
    out.push_back(make_check("identity/boundary-limits-vanish", 0.0, worst, 1e-8, false,
                             param_detail(straddle, t)));
  }

  // moment generating function: closed form vs quadrature of the density
  {
    double worst = 0.0;
    const double t = 1.5;
    for (int j = 1; j <= 2; ++j)
      for (double z : interior_grid(2.0 / straddle.v2(), 2.0 / straddle.v1(), 9))
        worst = std::max(worst, std::fabs(mgf(z, t, j, straddle) /
                                              mgf_by_quadrature(z, t, j, straddle) -
                                          1.0));
    for (double z : interior_grid(-3.0, 2.0 / bothpos.v1(), 9))
      worst = std::max(
          worst, std::fabs(mgf(z, t, 1, bothpos) / mgf_by_quadrature(z, t, 1, bothpos) - 1.0));
    out.push_back(
        make_check("mgf/closed-vs-quadrature", 0.0, worst, 1e-8, false, "relative deviation"));
  }

  // mgf derivatives at zero vs the moment formulas
  {
    double worst = 0.0;
    for (const MotionParams& p : {straddle, bothpos}) {
      const double t = 1.25;
      const double h = 1e-3;
      for (int j = 1; j <= 2; ++j) {
        const double m1 = (mgf(-2 * h, t, j, p) - 8 * mgf(-h, t, j, p) + 8 * mgf(h, t, j, p) -
                           mgf(2 * h, t, j, p)) /
                          (12 * h);
        const double m2 = (-mgf(-2 * h, t, j, p) + 16 * mgf(-h, t, j, p) - 30.0 +
                           16 * mgf(h, t, j, p) - mgf(2 * h, t, j, p)) /
                          (12 * h * h);
        worst = std::max(worst, std::fabs(m1 / mean(t, j, p) - 1.0));
        worst = std::max(worst, std::fabs(m2 / second_moment(t, j, p) - 1.0));
      }
    }
    out.push_back(make_check("mgf/moment-consistency", 0.0, worst, 1e-5, false,
                             "relative deviation of finite differences"));
  }

  // mean symmetry: E_1 + E_2 = (v1+v2)(1-e^{-xi t})/xi
  {
    double worst = 0.0;
    for (const MotionParams& p : {straddle, straddle_wide, bothpos, bothpos_hi})
      for (double t : interior_grid(0.0, 5.0, 25)) {
        const double target =
            p.xi() > 0.0 ? (p.v1() + p.v2()) * -std::expm1(-p.xi() * t) / p.xi()
                         : (p.v1() + p.v2()) * t;
        worst = std::max(worst, std::fabs(mean(t, 1, p) + mean(t, 2, p) - target));
      }
    out.push_back(make_check("moments/mean-symmetry", 0.0, worst, 1e-10, false,
                             "100-point (t, params) grid"));
  }

  // random start is the q-mixture of the fixed starts
  {
    const double t = 1.1, q = 0.3;
    double worst = 0.0;
    for (const MotionParams& p : {straddle, bothpos}) {
      const auto xs = interior_grid(support_lower(t, p), support_upper(t, p), 80);
      for (double x : xs) {
        const double mixed = pdf(x, t, VelocityStart::random(q), p).ac;
        const double manual =
            q * pdf(x, t, v1, p).ac + (1.0 - q) * pdf(x, t, v2, p).ac;
        worst = std::max(worst, std::fabs(mixed - manual));
      }
    }
    out.push_back(make_check("identity/mixture-linearity", 0.0, worst, 1e-14, false, ""));
  }

  // reflection: BothNegative laws equal the mirrored BothPositive laws
  {
    const double t = 0.8;
    const Reflection r = reflect(bothneg, 1);
    const auto xs = interior_grid(bothneg.v2() * t, 0.0, 60);
    double worst = 0.0;
    for (double x : xs)
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
          const double direct = pdf_any(x, t, VelocityStart::fixed(j), bothneg).ac;
          const double mirrored =
              pdf(-x, t, VelocityStart::fixed(3 - j), r.params).ac;
          worst = std::max(worst, std::fabs(direct - mirrored));
        }
    const double mean_dev =
        std::fabs(analytic_mean(t, v1, bothneg) + mean(t, 2, r.params));
    out.push_back(make_check("identity/reflection", 0.0, std::max(worst, mean_dev), 1e-12,
                             false, param_detail(bothneg, t)));
  }

  // long-horizon pdf settles on the stationary density
  {
    double worst = 0.0;
    for (const MotionParams& p : {straddle, bothpos}) {
      const double t = 200.0 / p.xi();
      const auto xs = interior_grid(p.regime() == VelocityRegime::straddling ? -3.0 : 0.0, 3.0,
                                    60);
      for (int j = 1; j <= 2; ++j)
        for (double x : xs) {
          if (x <= support_lower(t, p) || x >= support_upper(t, p)) continue;
          worst = std::max(worst, std::fabs(pdf(x, t, VelocityStart::fixed(j), p).ac -
                                            stationary_pdf(x, j, p)));
        }
    }
    out.push_back(make_check("limits/stationary-consistency", 0.0, worst, 1e-4, false,
                             "pdf at t = 200/xi vs stationary density"));
  }

  // stationary and limit densities integrate to one
  {
    QuadratureOptions opts;
    opts.abs_tol = 1e-10;
    opts.rel_tol = 1e-9;
    const MotionParams p(1.0, 2.0, 2.0, -2.0);
    const double mass_neg = integrate_half_line(
        [&](double u) { return stationary_pdf(-u, 1, p); }, 0.0, opts);
    const double mass_pos = integrate_half_line(
        [&](double u) { return stationary_pdf(u, 1, p); }, 0.0, opts);
    out.push_back(make_check("norm/stationary[straddling]", 1.0, mass_neg + mass_pos, 1e-8,
                             false, param_detail(p, 0.0)));
    const MotionParams q(1.0, 2.0, 4.0, 2.0);
    const double mass = integrate_half_line(
        [&](double u) { return stationary_pdf(u, 1, q); }, 0.0, opts);
    out.push_back(make_check("norm/stationary[both_positive]", 1.0, mass, 1e-8, false,
                             param_detail(q, 0.0)));
  }
  {
    // lambda -> inf density: integrable log singularity at the origin
    const MotionParams p(1.0, 1.0, 1.0, -1.0);
    const double t = 2.0;
    QuadratureOptions opts;
    opts.abs_tol = 1e-10;
    opts.rel_tol = 1e-9;
    const double below = integrate_singular_endpoints(
        [&](double x) { return pdf_lambda_inf(x, t, p); }, p.v2() * t, 0.0, opts);
    const double above = integrate_singular_endpoints(
        [&](double x) { return pdf_lambda_inf(x, t, p); }, 0.0, p.v1() * t, opts);
    out.push_back(make_check("norm/lambda-inf", 1.0, below + above, 1e-8, false,
                             param_detail(p, t)));
  }

  // pdf at large lambda approaches the lambda -> inf density
  {
    double worst = 0.0;
    for (const MotionParams& base : {straddle, bothpos}) {
      const MotionParams p = base.with_lambda(1e6);
      const double t = 1.5;
      for (double x : interior_grid(support_lower(t, p), support_upper(t, p), 40)) {
        if (std::fabs(x) < 0.05) continue;  // stay away from the singular origin
        worst = std::max(worst,
                         std::fabs(pdf(x, t, v1, p).ac - pdf_lambda_inf(x, t, base)));
      }
    }
    out.push_back(make_check("limits/pdf-lambda-inf", 0.0, worst, 1e-4, false,
                             "lambda = 1e6 vs closed-form limit"));
  }

  // random-start limit laws
  {
    const MotionParams p(1.0, 2.0, 2.0, -2.0);
    const double t = 1.5;
    double worst = 0.0;
    for (double x : interior_grid(p.v2() * t, p.v1() * t, 30)) {
      if (x == 0.0) continue;
      worst = std::max(worst, std::fabs(pdf_random_lambda_inf(x, t, 0.3, p) -
                                        pdf_lambda_inf(x, t, p)));
    }
    for (double x : interior_grid(-3.0, 3.0, 30)) {
      worst = std::max(worst,
                       std::fabs(pdf_random_stationary(x, 1.0, p) - stationary_pdf(x, 1, p)));
      const double mix = 0.4 * stationary_pdf(x, 1, p) + 0.6 * stationary_pdf(x, 2, p);
      worst = std::max(worst, std::fabs(pdf_random_stationary(x, 0.4, p) - mix));
    }
    out.push_back(make_check("limits/random-start", 0.0, worst, 1e-12, false, ""));
  }

  // moment limits: small xi, large lambda, long horizon, large xi
  {
    double worst = 0.0;
    const double t = 2.5;  // off the zero crossing of the (2, -4) reset-free mean
    for (const MotionParams& base : {straddle_wide, bothpos}) {
      const MotionParams tiny_xi = base.with_xi(1e-8);
      for (int j = 1; j <= 2; ++j) {
        worst = std::max(worst, std::fabs(mean(t, j, tiny_xi) /
                                              mean(t, j, base.with_xi(0.0)) -
                                          1.0));
        worst = std::max(worst, std::fabs(second_moment(t, j, tiny_xi) /
                                              second_moment(t, j, base.with_xi(0.0)) -
                                          1.0));
      }
      const MotionParams big_lam = base.with_lambda(1e8);
      worst = std::max(worst,
                       std::fabs(mean(t, 1, big_lam) / mean_lambda_inf(t, base) - 1.0));
      worst = std::max(worst, std::fabs(second_moment(t, 1, big_lam) /
                                            second_moment_lambda_inf(t, base) -
                                        1.0));
      const double t_long = 1e3 / base.xi();
      const LongRunMoments lr = long_run_moments(1, base);
      worst = std::max(worst, std::fabs(variance(t_long, 1, base) / lr.variance - 1.0));
    }
    out.push_back(make_check("limits/moments", 0.0, worst, 1e-5, false,
                             "relative deviation of the limit forms"));
  }

  // mean-square distance: the two assembly routes agree
  {
    double worst = 0.0;
    for (const MotionParams& p : {straddle_wide, bothpos}) {
      for (double xi : {0.3, 1.0, 4.0})
        for (int j = 1; j <= 2; ++j)
          for (double t : {0.7, 3.0}) {
            const MotionParams pr = p.with_xi(xi);
            const double direct = mean_square_distance(xi, t, j, p);
            const double assembled = second_moment(t, j, pr) + noreset_second_moment(t, j, p) -
                                     2.0 * mean(t, j, pr) * noreset_mean(t, j, p);
            worst = std::max(worst, std::fabs(direct / assembled - 1.0));
          }
    }
    out.push_back(
        make_check("msd/route-consistency", 0.0, worst, 1e-9, false, "relative deviation"));
  }
  {
    const MotionParams p(1.0, 0.0, 3.0, -1.0);
    const double t = 3.0;
    out.push_back(make_check("msd/xi-zero", 2.0 * noreset_variance(t, p),
                             mean_square_distance(0.0, t, 1, p), 1e-12, true,
                             param_detail(p, t)));
    out.push_back(make_check("msd/xi-inf", noreset_second_moment(t, 1, p),
                             mean_square_distance(1e6, t, 1, p), 1e-4, true,
                             param_detail(p, t)));
  }

  // extremum of the conditional mean vs direct search
  {
    const MotionParams pmax(1.0, 2.0, 2.0, -5.0);
    const auto ext1 = mean_extremum(pmax, 1);
    const double argmax = golden_section_min(
        [&](double t) { return -mean(t, 1, pmax); }, 1e-4, 5.0);
    double worst = std::fabs(ext1->t - argmax);
    const MotionParams pmin(1.0, 2.0, 5.0, -1.0);
    const auto ext2 = mean_extremum(pmin, 2);
    const double argmin = golden_section_min(
        [&](double t) { return mean(t, 2, pmin); }, 1e-4, 5.0);
    worst = std::max(worst, std::fabs(ext2->t - argmin));
    out.push_back(make_check("moments/extremum", 0.0, worst, 1e-6, false,
                             "formula vs golden-section search"));
  }

  // GCP marginals
  {
    const GcpLaw law(1.0);
    double mass = 0.0;
    for (int k = 0; k < 400; ++k) mass += increment_pmf(k, 1.0, law);
    mass += std::pow(1.0 / 2.0, 400);  // geometric tail at lambda s = 1
    out.push_back(make_check("gcp/increment-mass", 1.0, mass, 1e-12, false, "lambda=1 s=1"));
    QuadratureOptions opts;
    const double epoch_mass = integrate_half_line(
        [&](double u) { return epoch_pdf(2, u, law); }, 0.0, opts);
    out.push_back(make_check("gcp/epoch-mass", 1.0, epoch_mass, 1e-8, false, "n=2 lambda=1"));
    const double inter_mass = integrate_half_line(
        [&](double u) { return intertime_pdf(u, law); }, 0.0, opts);
    out.push_back(make_check("gcp/intertime-mass", 1.0, inter_mass, 1e-8, false, "lambda=1"));
  }

  // atom mass special values
  {
    const MotionParams p(1.0, 2.0, 1.0, -1.0);
    out.push_back(make_check("atom/at-zero", 1.0, atom_mass(1, 0.0, p), 0.0, false, "t=0"));
    out.push_back(make_check("atom/no-reset", 1.0 / 2.5, atom_mass(1, 1.5, p.with_xi(0.0)),
                             1e-15, true, "xi=0 t=1.5"));
    out.push_back(make_check("atom/value", 0.24525296078096155, atom_mass(1, 0.5, p), 1e-15,
                             true, "lambda=1 xi=2 t=0.5"));
  }
}

void add_fast_mc_checks(std::vector<CheckReport>& out, unsigned workers, std::uint64_t seed) {
  const MotionParams straddle(1.0, 2.0, 1.0, -1.0);
  const MotionParams bothneg(1.0, 2.0, -1.0, -2.0);
  SimConfig cfg{0.5, 30000, seed, workers};
  auto atom_checks = check_mc_agreement(straddle, VelocityStart::fixed(1), cfg,
                                        static_cast<unsigned>(McCheck::atom) |
                                            static_cast<unsigned>(McCheck::moments));
  for (auto& r : atom_checks) r.check_id = "fast-" + r.check_id;
  out.insert(out.end(), atom_checks.begin(), atom_checks.end());

  // reflected regime against the mirrored closed form
  SimConfig cfg_neg{0.8, 30000, seed + 1, workers};
  auto neg_checks =
      check_mc_agreement(bothneg, VelocityStart::fixed(1), cfg_neg,
                         static_cast<unsigned>(McCheck::moments));
  for (auto& r : neg_checks) r.check_id = "fast-reflect-" + r.check_id;
  out.insert(out.end(), neg_checks.begin(), neg_checks.end());

  // all sampled positions stay inside the diffusion interval
  const BatchResult batch = run_batch(straddle, VelocityStart::fixed(1), cfg, true);
  double overshoot = 0.0;
  for (const PathOutcome& o : batch.paths)
    overshoot = std::max({overshoot, o.position - straddle.v1() * cfg.horizon_t,
                          straddle.v2() * cfg.horizon_t - o.position});
  out.push_back(make_check("fast-mc/support", 0.0, overshoot, 0.0, false,
                           "max overshoot outside [v2 t, v1 t]"));

  // determinism: byte-identical summaries for 1 and 4 workers
  SimConfig one{1.5, 20000, seed + 2, 1};
  SimConfig four{1.5, 20000, seed + 2, 4};
  const std::string a = run_batch(straddle, VelocityStart::random(0.3), one).summary.to_json();
  const std::string b = run_batch(straddle, VelocityStart::random(0.3), four).summary.to_json();
  out.push_back(make_check("fast-mc/worker-determinism", 0.0, a == b ? 0.0 : 1.0, 0.0, false,
                           "summary bytes for workers 1 vs 4"));
}

void add_full_mc_checks(std::vector<CheckReport>& out, unsigned workers, std::uint64_t seed) {
  constexpr std::uint64_t n = 1'000'000;
  const auto v1 = VelocityStart::fixed(1);
  const auto v2 = VelocityStart::fixed(2);

  // atom frequency at the closed-form mass
  {
    const MotionParams p(1.0, 2.0, 1.0, -1.0);
    auto checks = check_mc_agreement(p, v1, SimConfig{0.5, n, seed, workers},
                                     static_cast<unsigned>(McCheck::atom));
    out.insert(out.end(), checks.begin(), checks.end());
  }
  // moments at both starts
  {
    const MotionParams p(1.0, 2.0, 2.0, -4.0);
    for (const auto& s : {v1, v2}) {
      auto checks = check_mc_agreement(p, s, SimConfig{1.0, n, seed + 3, workers},
                                       static_cast<unsigned>(McCheck::moments));
      out.insert(out.end(), checks.begin(), checks.end());
    }
  }
  // density over both regimes, plus the velocity-conditioned split
  {
    const MotionParams p(1.0, 2.0, 1.0, -1.0);
    auto checks = check_mc_agreement(p, v1, SimConfig{1.5, n, seed + 5, workers},
                                     static_cast<unsigned>(McCheck::density_chi2) |
                                         static_cast<unsigned>(McCheck::subdensity_chi2));
    for (auto& r : checks) r.check_id += "[straddling]";
    out.insert(out.end(), checks.begin(), checks.end());
  }
  {
    const MotionParams p(1.0, 2.0, 4.0, 2.0);
    auto checks = check_mc_agreement(p, v1, SimConfig{1.5, n, seed + 6, workers},
                                     static_cast<unsigned>(McCheck::density_chi2));
    for (auto& r : checks) r.check_id += "[both_positive]";
    out.insert(out.end(), checks.begin(), checks.end());
  }
  // random start mixture
  {
    const MotionParams p(1.0, 2.0, 2.0, -4.0);
    auto checks = check_mc_agreement(p, VelocityStart::random(0.3),
                                     SimConfig{1.0, n, seed + 7, workers},
                                     static_cast<unsigned>(McCheck::moments));
    out.insert(out.end(), checks.begin(), checks.end());
  }
  // stationary law via a long horizon
  {
    const MotionParams p(1.0, 2.0, 2.0, -2.0);
    const double t = 50.0;
    const BatchResult batch = run_batch(p, v1, SimConfig{t, n, seed + 8, workers}, true);
    constexpr int bins = 40;
    const double lo = -4.0, hi = 4.0;
    std::vector<std::uint64_t> counts(bins, 0);
    std::uint64_t inside = 0;
    const double width = (hi - lo) / bins;
    for (const PathOutcome& o : batch.paths) {
      if (o.position < lo || o.position >= hi) continue;
      ++counts[static_cast<int>((o.position - lo) / width)];
      ++inside;
    }
    QuadratureOptions opts;
    std::vector<double> mass(bins);
    double mass_total = 0.0;
    for (int b = 0; b < bins; ++b) {
      std::vector<double> pts{lo + b * width, lo + (b + 1) * width};
      if (pts[0] < 0.0 && 0.0 < pts[1]) pts.insert(pts.begin() + 1, 0.0);
      mass[b] = integrate_split([&](double x) { return stationary_pdf(x, 1, p); }, pts, opts);
      mass_total += mass[b];
    }
    std::vector<double> expected(bins);
    for (int b = 0; b < bins; ++b)
      expected[b] = static_cast<double>(inside) * mass[b] / mass_total;
    const double stat = chi_square_statistic(counts, expected);
    const double crit = chi_square_critical(bins - 1, 0.01);
    CheckReport r = make_check("mc/stationary-chi2", 0.0, stat, crit, false,
                               param_detail(p, t, "n=1e6"));
    r.passed = stat < crit;
    out.push_back(r);
  }
  // mean-square distance via two uncoupled batches
  {
    const MotionParams p(1.0, 2.0, 2.0, -4.0);
    const double t = 1.0;
    const BatchResult with_reset = run_batch(p, v1, SimConfig{t, n, seed + 9, workers}, true);
    const BatchResult no_reset =
        run_batch(p.with_xi(0.0), v1, SimConfig{t, n, seed + 10, workers}, true);
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double d = with_reset.paths[i].position - no_reset.paths[i].position;
      sum += d * d;
      sum2 += d * d * d * d;
    }
    const double est = sum / n;
    const double se = std::sqrt(std::max(0.0, sum2 / n - est * est) / n);
    out.push_back(make_check("mc/msd", mean_square_distance(p.xi(), t, 1, p), est, 4.0 * se,
                             false, param_detail(p, t, "pairwise over two batches")));
  }
  // reset counts are Poisson: dispersion index near one
  {
    const MotionParams p(1.0, 2.0, 1.0, -1.0);
    const BatchSummary s =
        run_batch(p, v1, SimConfig{1.5, n, seed + 11, workers}).summary;
    out.push_back(make_check("mc/reset-dispersion", 1.0, s.reset_dispersion,
                             4.0 * std::sqrt(2.0 / static_cast<double>(n)), false,
                             "Poisson count dispersion"));
  }
  // first-sojourn marginal is the modified Pareto law
  {
    constexpr std::uint64_t m = 100'000;
    const double lam = 1.0;
    std::vector<double> durations(m);
    for (std::uint64_t i = 0; i < m; ++i) {
      PathRng rng(seed + 12, i);
      const GcpLaw law(lam);
      const MixedRatePair rates = draw_rate_pair(law, rng);
      durations[i] = rng.exponential_rate(rates.alpha1);
    }
    std::sort(durations.begin(), durations.end());
    double dstat = 0.0;
    for (std::uint64_t i = 0; i < m; ++i) {
      const double cdf = lam * durations[i] / (1.0 + lam * durations[i]);
      dstat = std::max(dstat, std::fabs(cdf - static_cast<double>(i + 1) / m));
      dstat = std::max(dstat, std::fabs(cdf - static_cast<double>(i) / m));
    }
    CheckReport r = make_check("mc/first-sojourn-ks", 0.0, dstat, ks_critical(m, 0.01), false,
                               "KS vs modified Pareto intertime");
    r.passed = dstat < ks_critical(m, 0.01);
    out.push_back(r);
  }
  // xi = 0 batch reproduces the reset-free moments and variance
  {
    const MotionParams p(1.0, 0.0, 2.0, -4.0);
    const double t = 1.0;
    const BatchSummary s = run_batch(p, v1, SimConfig{t, n, seed + 13, workers}).summary;
    out.push_back(make_check("mc/noreset-mean", noreset_mean(t, 1, p), s.mean, 4.0 * s.mean_se,
                             false, param_detail(p, t)));
    out.push_back(make_check("mc/noreset-second", noreset_second_moment(t, 1, p), s.second,
                             4.0 * s.second_se, false, param_detail(p, t)));
    const double var_est = s.second - s.mean * s.mean;
    const double var_se = std::sqrt(s.second_se * s.second_se +
                                    4.0 * s.mean * s.mean * s.mean_se * s.mean_se);
    out.push_back(make_check("mc/noreset-variance", noreset_variance(t, p), var_est,
                             4.0 * var_se, false, param_detail(p, t)));
    // zero-event probability of the underlying GCP
    out.push_back(make_check("mc/gcp-zero-events", 1.0 / (1.0 + p.lambda() * t), s.atom_freq,
                             4.0 * s.atom_se, false, "fraction with no velocity change"));
  }
}

}  // namespace

std::vector<CheckReport> run_suite(Suite suite, unsigned workers, std::uint64_t seed) {
  std::vector<CheckReport> out;
  add_analytic_checks(out);
  add_fast_mc_checks(out, workers, seed);
  if (suite == Suite::full) add_full_mc_checks(out, workers, seed);
  std::sort(out.begin(), out.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });
  return out;
}

std::string reports_to_json(std::span<const CheckReport> reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out += ",";
    out += reports[i].to_json();
  }
  out += "]";
  return out;
}

bool all_passed(std::span<const CheckReport> reports) {
  for (const CheckReport& r : reports)
    if (!r.passed) return false;
  return true;
}

}  // namespace gcpreset
