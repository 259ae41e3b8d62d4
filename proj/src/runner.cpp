#include "eaq/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "eaq/csv.hpp"
#include "eaq/fclt.hpp"
#include "eaq/fluid.hpp"
#include "eaq/gillespie.hpp"
#include "eaq/rng.hpp"
#include "eaq/stats.hpp"

namespace eaq {

namespace {

namespace fs = std::filesystem;

std::vector<double> linspace(double t_end, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] =
        t_end * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

// Doubling bracket for the steady-state scan: G(0) > 0, so expand until the
// drift turns negative.
SteadyState locate_steady_state(const ModelParams& p) {
  double hi = 1.0;
  for (int i = 0; i < 60 && drift(p, hi) > 0.0; ++i) hi *= 2.0;
  return steady_state(p, hi);
}

void print_report(const TestReport& r) {
  std::printf("%-16s statistic=%-12.6g threshold=%-12.6g %s\n", r.name.c_str(), r.statistic,
              r.threshold, r.passed ? "PASS" : "FAIL");
}

// Bound check for the fast-queue first-passage transform at one level:
// statistic is the one-sided z-score of (empirical mean - bound).
TestReport passage_bound_report(const ModelParams& p, double beta, std::int64_t level,
                              double horizon, int reps, std::uint64_t seed) {
  const double bound = mgf_bound(p, beta, level);
  double s1 = 0.0, s2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto hs =
        hitting_time(p, level, horizon, derive_seed(seed, static_cast<std::uint64_t>(r)));
    // censored draws enter at exp(-beta*horizon) >= exp(-beta*tau): conservative
    const double v = std::exp(-beta * hs.time);
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1 / reps;
  const double var = std::max(0.0, s2 / reps - mean * mean);
  const double se = std::max(std::sqrt(var / reps), 1e-300);
  TestReport rep;
  rep.name = "mgf_bound_k" + std::to_string(level);
  rep.statistic = (mean - bound) / se;
  rep.threshold = 3.0;
  rep.passed = rep.statistic <= rep.threshold;
  char buf[128];
  std::snprintf(buf, sizeof buf, "mean=%.6g bound=%.6g se=%.3g", mean, bound, se);
  rep.details = buf;
  return rep;
}

int run_validate(const RunRequest& req, const ModelParams& p, const fs::path& out) {
  const RunConfig& cfg = req.cfg;
  const auto grid = linspace(cfg.t_end, cfg.grid_points);
  std::vector<TestReport> reports;

  const FluidSolution fluid = integrate(p, 0.0, cfg.t_end, cfg.dt_fluid);
  const EnsembleSummary es = ensemble(p, grid, cfg.replications, cfg.seed, req.threads);
  reports.push_back(flln_error(es, resample(fluid, grid)));

  const SteadyState ss = locate_steady_state(p);
  const OccupationMeasure om = occupation_window(p, 0.5 * cfg.t_end, cfg.t_end, State{0, 0},
                                                 derive_seed(cfg.seed, 1u << 20));
  reports.push_back(tv_occupation(om, p, ss.y));

  const int K = truncation_from(cfg, p);
  const SigmaFProfile prof = sigma_f(p, fluid, K, PoissonMethod::exact_recursion);
  const double vT = var_w(p, fluid, prof, cfg.t_end);
  const double yT = fluid.values.back();
  const double root_n = std::sqrt(static_cast<double>(cfg.n));
  std::vector<double> samples(es.terminal.size());
  double sv1 = 0.0, sv2 = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = root_n * (es.terminal[i] - yT);
    sv1 += samples[i];
    sv2 += samples[i] * samples[i];
  }
  reports.push_back(cfg.alpha == 0.01 ? ks_gaussian(samples, vT)
                                      : ks_gaussian(samples, vT, cfg.alpha));

  const double R = static_cast<double>(samples.size());
  const double sample_var = (sv2 - sv1 * sv1 / R) / (R - 1.0);
  TestReport ratio;
  ratio.name = "variance_ratio";
  ratio.statistic = std::abs(std::log(sample_var / vT));
  ratio.threshold = std::log(1.25);
  ratio.passed = ratio.statistic <= ratio.threshold;
  char buf[96];
  std::snprintf(buf, sizeof buf, "sample=%.6g limit=%.6g", sample_var, vT);
  ratio.details = buf;
  reports.push_back(ratio);

  // First-passage bound smoke battery at a fixed small scale; the gate is a
  // one-sided inequality, so scale does not need to match the config.
  const ModelParams p_small = make_preset(cfg.preset, cfg.rates, 100);
  for (std::int64_t level : {3, 5, 8})
    reports.push_back(passage_bound_report(p_small, 1.0, level, 20.0, 2000,
                                         derive_seed(cfg.seed, 77 + static_cast<std::uint64_t>(level))));

  bool all = true;
  for (const auto& r : reports) {
    print_report(r);
    all = all && r.passed;
  }
  write_reports_csv((out / "report.csv").string(), reports);
  std::cout << (out / "report.csv").string() << "\n";
  return all ? 0 : 1;
}

}  // namespace

int run(const RunRequest& req) {
  const RunConfig& cfg = req.cfg;
  if (cfg.out_dir.empty())
    throw std::invalid_argument("no output directory (set output.directory or pass --out)");
  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  {
    std::ofstream snap(out / "config.json");
    if (!snap) throw std::runtime_error("cannot write config snapshot");
    snap << req.config_source_text;
  }

  const ModelParams p = model_from(cfg);

  if (req.subcommand == "simulate") {
    const auto grid = linspace(cfg.t_end, cfg.grid_points);
    for (int r = 0; r < cfg.replications; ++r) {
      const auto states =
          simulate_on_grid(p, grid, State{0, 0}, derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
      char name[48];
      std::snprintf(name, sizeof name, "trajectory_%03d.csv", r);
      write_trajectory_csv((out / name).string(), grid, states);
    }
    std::cout << cfg.replications << " trajectories in " << out.string() << "\n";
    return 0;
  }
  if (req.subcommand == "fluid") {
    const FluidSolution fluid = integrate(p, 0.0, cfg.t_end, cfg.dt_fluid);
    write_fluid_csv((out / "fluid.csv").string(), fluid);
    std::cout << (out / "fluid.csv").string() << "\n";
    return 0;
  }
  if (req.subcommand == "fclt") {
    const FluidSolution fluid = integrate(p, 0.0, cfg.t_end, cfg.dt_fluid);
    const int K = truncation_from(cfg, p);
    const SigmaFProfile prof = sigma_f(p, fluid, K, PoissonMethod::exact_recursion);
    write_sigma_f_csv((out / "sigmaF.csv").string(), prof);
    write_var_w_csv((out / "varW.csv").string(), prof, var_w_profile(p, fluid, prof));
    std::cout << (out / "sigmaF.csv").string() << "\n" << (out / "varW.csv").string() << "\n";
    return 0;
  }
  if (req.subcommand == "sweep") {
    constexpr int kPoints = 21;
    std::vector<double> lb(kPoints), ys(kPoints);
    for (int i = 0; i < kPoints; ++i) {
      lb[static_cast<std::size_t>(i)] = 0.5 + (6.0 - 0.5) * static_cast<double>(i) / (kPoints - 1);
      PresetParams q = cfg.rates;
      q.lambda_B = lb[static_cast<std::size_t>(i)];
      const ModelParams swept = make_preset(cfg.preset, q, cfg.n);
      ys[static_cast<std::size_t>(i)] = locate_steady_state(swept).y;
    }
    write_sweep_csv((out / "sweep.csv").string(), lb, ys);
    std::cout << (out / "sweep.csv").string() << "\n";
    return 0;
  }
  if (req.subcommand == "validate") return run_validate(req, p, out);
  throw std::invalid_argument("unknown subcommand: " + req.subcommand);
}

}  // namespace eaq
