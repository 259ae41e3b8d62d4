#include "eaq/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "eaq/rng.hpp"

namespace eaq {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

EnsembleSummary ensemble(const ModelParams& p, const std::vector<double>& grid, int replications,
                         std::uint64_t seed, int threads, const SimOptions& opt) {
  require(replications >= 1, "ensemble: replications must be >= 1");
  require(!grid.empty(), "ensemble: grid must be nonempty");
  const std::size_t N = grid.size();
  const auto R = static_cast<std::size_t>(replications);
  std::vector<std::vector<double>> slots(R);

  int workers = threads;
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, replications);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_msg;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= R || failed.load()) return;
      try {
        const auto path = simulate_on_grid(p, grid, State{0, 0}, derive_seed(seed, r), opt);
        auto& slot = slots[r];
        slot.resize(N);
        for (std::size_t i = 0; i < N; ++i) slot[i] = path[i].y1;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        error_msg = e.what();
        failed.store(true);
        return;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("ensemble: " + error_msg);

  EnsembleSummary es;
  es.grid = grid;
  es.replications = replications;
  es.n = p.n;
  es.mean.assign(N, 0.0);
  es.sd.assign(N, 0.0);
  es.terminal.resize(R);
  for (std::size_t r = 0; r < R; ++r) es.terminal[r] = slots[r].back();
  for (std::size_t i = 0; i < N; ++i) {
    double s = 0.0;
    for (std::size_t r = 0; r < R; ++r) s += slots[r][i];
    const double mean = s / static_cast<double>(R);
    es.mean[i] = mean;
    if (R > 1) {
      double q = 0.0;
      for (std::size_t r = 0; r < R; ++r) {
        const double d = slots[r][i] - mean;
        q += d * d;
      }
      es.sd[i] = std::sqrt(q / static_cast<double>(R - 1));
    }
  }
  return es;
}

TestReport flln_error(const EnsembleSummary& es, const FluidSolution& fs) {
  require(es.grid.size() == fs.grid.size(), "flln_error: grids differ");
  for (std::size_t i = 0; i < es.grid.size(); ++i)
    require(std::abs(es.grid[i] - fs.grid[i]) <= 1e-12 * std::max(1.0, es.grid.back()),
            "flln_error: grids differ");
  const double root_r = std::sqrt(static_cast<double>(es.replications));
  const double root_n = std::sqrt(static_cast<double>(es.n));
  double worst = 0.0;
  double worst_t = 0.0;
  for (std::size_t i = 0; i < es.grid.size(); ++i) {
    const double band = 3.0 * es.sd[i] / root_r + 10.0 / root_n + 1e-3;
    const double z = std::abs(es.mean[i] - fs.values[i]) / band;
    if (z > worst) {
      worst = z;
      worst_t = es.grid[i];
    }
  }
  TestReport rep;
  rep.name = "flln_error";
  rep.statistic = worst;
  rep.threshold = 1.0;
  rep.passed = worst <= rep.threshold;
  rep.details = "worst at t=" + format_double(worst_t);
  return rep;
}

namespace {

TestReport ks_with_threshold(const std::vector<double>& samples, double variance,
                             double critical) {
  require(std::isfinite(variance) && variance > 0.0, "ks_gaussian: variance must be > 0");
  require(samples.size() >= 8, "ks_gaussian: need at least 8 samples");
  const double scale = std::sqrt(variance);
  std::vector<double> z(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) z[i] = samples[i] / scale;
  std::sort(z.begin(), z.end());
  const auto R = static_cast<double>(z.size());
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double c = normal_cdf(z[i]);
    d = std::max(d, c - static_cast<double>(i) / R);
    d = std::max(d, static_cast<double>(i + 1) / R - c);
  }
  TestReport rep;
  rep.name = "ks_gaussian";
  rep.statistic = d;
  rep.threshold = critical / std::sqrt(R);
  rep.passed = d <= rep.threshold;
  rep.details = "R=" + std::to_string(z.size());
  return rep;
}

}  // namespace

TestReport ks_gaussian(const std::vector<double>& samples, double variance) {
  return ks_with_threshold(samples, variance, 1.628);
}

TestReport ks_gaussian(const std::vector<double>& samples, double variance, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "ks_gaussian: alpha must lie in (0, 1)");
  return ks_with_threshold(samples, variance, std::sqrt(-std::log(alpha / 2.0) / 2.0));
}

TestReport tv_occupation(const OccupationMeasure& om, const ModelParams& p, double y1_ref) {
  require(om.horizon > 0.0, "tv_occupation: empty occupation measure");
  const double m = m_of(p, y1_ref);
  const auto spread = static_cast<std::size_t>(std::ceil(m + 10.0 * std::sqrt(m) + 30.0));
  const std::size_t kmax = std::max(om.weights.size(), spread + 1);
  double tv = 0.0;
  double pi_mass = 0.0;
  for (std::size_t k = 0; k < kmax; ++k) {
    const double emp = k < om.weights.size() ? om.weights[k] / om.horizon : 0.0;
    const double pi = pi_pmf(p, y1_ref, static_cast<std::int64_t>(k));
    pi_mass += pi;
    tv += std::abs(emp - pi);
  }
  tv = 0.5 * (tv + std::max(0.0, 1.0 - pi_mass));  // frozen-law mass beyond kmax
  TestReport rep;
  rep.name = "tv_occupation";
  rep.statistic = tv;
  rep.threshold = 0.05;
  rep.passed = tv <= rep.threshold;
  rep.details = "y1_ref=" + format_double(y1_ref);
  return rep;
}

}  // namespace eaq
