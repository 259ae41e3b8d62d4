#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "eaq/fclt.hpp"
#include "eaq/fluid.hpp"
#include "eaq/gillespie.hpp"
#include "eaq/model.hpp"
#include "eaq/rng.hpp"
#include "eaq/stats.hpp"

using namespace eaq;

namespace {

PresetParams base_rates() { return PresetParams{5.0, 2.0, 3.0, 2.0, 2.0}; }

ModelParams preset_a(std::int64_t n) {
  return make_preset(Preset::constant_arrivals, base_rates(), n);
}

std::vector<double> linspace(double t_end, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = t_end * i / (points - 1);
  return g;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST_CASE("ensemble is deterministic and thread-count independent") {
  const auto p = preset_a(30);
  const auto grid = linspace(1.0, 5);
  const auto a = ensemble(p, grid, 8, 20240815, 1);
  const auto b = ensemble(p, grid, 8, 20240815, 4);
  const auto c = ensemble(p, grid, 8, 20240815, 1);
  REQUIRE(a.mean.size() == b.mean.size());
  for (std::size_t i = 0; i < a.mean.size(); ++i) {
    CHECK(a.mean[i] == b.mean[i]);
    CHECK(a.sd[i] == b.sd[i]);
    CHECK(a.mean[i] == c.mean[i]);
  }
  for (std::size_t r = 0; r < a.terminal.size(); ++r) CHECK(a.terminal[r] == b.terminal[r]);

  const auto d = ensemble(p, grid, 8, 999, 2);
  CHECK(a.mean != d.mean);
  CHECK(a.sd.back() > 0.0);
}

TEST_CASE("replication streams are distinct") {
  const auto p = preset_a(30);
  const auto t0 = simulate(p, 1.0, State{0, 0}, derive_seed(77, 0));
  const auto t1 = simulate(p, 1.0, State{0, 0}, derive_seed(77, 1));
  CHECK(t0.digest != t1.digest);
}

TEST_CASE("singleton grid ensemble is the initial state") {
  const auto p = preset_a(30);
  const auto es = ensemble(p, {0.0}, 4, 5, 1);
  CHECK(es.mean[0] == 0.0);
  CHECK(es.sd[0] == 0.0);
}

TEST_CASE("flln statistic on synthetic ensembles") {
  FluidSolution fs;
  fs.grid = linspace(2.0, 9);
  fs.values.assign(9, 1.25);
  fs.dt = 0.25;

  EnsembleSummary es;
  es.grid = fs.grid;
  es.mean = fs.values;
  es.sd.assign(9, 0.01);
  es.terminal.assign(100, 1.25);
  es.replications = 100;
  es.n = 10000;

  const auto pass = flln_error(es, fs);
  CHECK(pass.passed);
  CHECK(pass.statistic == 0.0);
  CHECK(pass.threshold == 1.0);

  es.mean[4] += 1.0;
  const auto fail = flln_error(es, fs);
  CHECK_FALSE(fail.passed);
  CHECK(fail.statistic > 1.0);

  EnsembleSummary wrong = es;
  wrong.grid[3] += 0.1;
  CHECK_THROWS_AS(flln_error(wrong, fs), std::invalid_argument);
}

TEST_CASE("ks statistic accepts true Gaussians and rejects shifts") {
  CounterRng rng = CounterRng::for_stream(4711, 0);
  const int R = 5000;
  std::vector<double> samples(R);
  for (int i = 0; i < R; ++i) samples[static_cast<std::size_t>(i)] = 2.0 * rng.next_normal();
  const auto ok = ks_gaussian(samples, 4.0);
  CHECK(ok.passed);
  CHECK(ok.threshold == doctest::Approx(1.628 / std::sqrt(5000.0)).epsilon(1e-12));

  for (double& v : samples) v += 6.0;  // three sigma off
  CHECK_FALSE(ks_gaussian(samples, 4.0).passed);

  CHECK_THROWS_AS(ks_gaussian(samples, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ks_gaussian(std::vector<double>{1.0, 2.0}, 1.0), std::invalid_argument);

  const auto alt = ks_gaussian(samples, 4.0, 0.05);
  CHECK(alt.threshold == doctest::Approx(std::sqrt(-std::log(0.025) / 2.0) / std::sqrt(5000.0))
                             .epsilon(1e-12));
}

TEST_CASE("total variation against the frozen law") {
  const auto p = preset_a(10);
  const double y1 = 0.4;
  OccupationMeasure om;
  om.horizon = 3.0;
  om.weights.resize(41);
  for (std::size_t k = 0; k <= 40; ++k)
    om.weights[k] = om.horizon * pi_pmf(p, y1, static_cast<std::int64_t>(k));
  const auto ok = tv_occupation(om, p, y1);
  CHECK(ok.passed);
  CHECK(ok.statistic <= 1e-6);

  OccupationMeasure point;
  point.horizon = 1.0;
  point.weights = {1.0};
  const auto bad = tv_occupation(point, p, 0.0);  // m = 1.5 at the origin
  CHECK_FALSE(bad.passed);
  CHECK(bad.statistic == doctest::Approx(1.0 - std::exp(-1.5)).epsilon(1e-6));
}

TEST_CASE("fluctuation ensemble is Gaussian with the predicted variance") {
  const auto p = preset_a(10);
  const auto fs = integrate(p, 0.0, 5.0, 0.01);
  const auto prof = sigma_f(p, fs, truncation_floor(p), PoissonMethod::exact_recursion);
  const double vT = var_w(p, fs, prof, 5.0);
  const int R = 10000;
  std::vector<double> terminal(R);
  for (int r = 0; r < R; ++r)
    terminal[static_cast<std::size_t>(r)] =
        simulate_w(p, fs, prof, 0.01, derive_seed(20250815, static_cast<std::uint64_t>(r)))
            .values.back();
  const auto ks = ks_gaussian(terminal, vT);
  CHECK(ks.passed);

  double s1 = 0.0, s2 = 0.0;
  for (double v : terminal) {
    s1 += v;
    s2 += v * v;
  }
  const double sample_var = (s2 - s1 * s1 / R) / (R - 1.0);
  CHECK(std::abs(std::log(sample_var / vT)) <= std::log(1.25));
}

TEST_CASE("ensemble mean converges to the fluid path as n grows") {
  const auto grid = linspace(2.0, 11);
  std::vector<double> med;
  for (std::int64_t n : {1000, 10000, 100000}) {
    const auto p = preset_a(n);
    const auto fs = resample(integrate(p, 0.0, 2.0, 1e-3), grid);
    std::vector<double> worst_dev;
    for (int meta = 0; meta < 5; ++meta) {
      const auto es = ensemble(p, grid, 32, derive_seed(606, static_cast<std::uint64_t>(meta)), 1);
      CHECK(flln_error(es, fs).passed);
      double worst = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::abs(es.mean[i] - fs.values[i]));
      worst_dev.push_back(worst);
    }
    med.push_back(median(worst_dev));
  }
  CHECK(med[1] < med[0]);
  CHECK(med[2] < med[1]);
  CHECK(med[2] < med[0] / 3.0);
}
