#include "eaq/gillespie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "eaq/rng.hpp"

namespace eaq {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Direct-method SSA loop. The sink sees the initial state, every post-jump
// state (return false to stop early), and the final time. One exponential and
// one categorical uniform are drawn per event, in that order, so any sink
// replays the identical path for a given stream.
template <class Sink>
void run_core(const ModelParams& p, double t_end, State init, std::uint64_t seed,
              const SimOptions& opt, Sink&& sink) {
  require(std::isfinite(t_end) && t_end >= 0.0, "simulate: t_end must be >= 0");
  require(init.x1 >= 0 && init.x2 >= 0, "simulate: initial state must be nonnegative");
  CounterRng rng = CounterRng::for_stream(seed, 0);
  State x = init;
  double t = 0.0;
  if (!sink.start(scale_state(p, x))) return;
  std::uint64_t events = 0;
  for (;;) {
    const auto a = propensities(p, x);
    const double total = a[0] + a[1] + a[2] + a[3] + a[4];
    if (total <= 0.0) break;  // absorbing state
    const double wait = rng.next_exponential(total);
    if (t + wait > t_end) break;
    t += wait;
    double u = rng.next_unit() * total;
    int ch = 0;
    double acc = a[0];
    while (ch < 4 && u > acc) {
      ++ch;
      acc += a[ch];
    }
    x.x1 += kChannels[ch].dx1;
    x.x2 += kChannels[ch].dx2;
    ++events;
    if (events >= opt.event_cap)
      throw std::runtime_error("simulate: event cap " + std::to_string(opt.event_cap) +
                               " reached at t = " + std::to_string(t));
    if (!sink.event(t, scale_state(p, x))) return;
  }
  sink.finish(t_end);
}

struct Recorder {
  Trajectory tr;
  bool start(ScaledState s) {
    tr.times.push_back(0.0);
    tr.states.push_back(s);
    return true;
  }
  bool event(double t, ScaledState s) {
    tr.times.push_back(t);
    tr.states.push_back(s);
    return true;
  }
  void finish(double) {}
};

struct GridSampler {
  const std::vector<double>& grid;
  std::vector<ScaledState> out;
  std::size_t idx = 0;
  ScaledState held{};
  explicit GridSampler(const std::vector<double>& g) : grid(g) { out.resize(g.size()); }
  bool start(ScaledState s) {
    held = s;
    return true;
  }
  bool event(double t, ScaledState s) {
    while (idx < grid.size() && grid[idx] < t) out[idx++] = held;
    held = s;
    return true;
  }
  void finish(double) {
    while (idx < grid.size()) out[idx++] = held;
  }
};

struct WindowAccumulator {
  double a, b;
  OccupationMeasure om;
  double last_t = 0.0;
  std::int64_t last_level = 0;
  explicit WindowAccumulator(double a_, double b_) : a(a_), b(b_) { om.horizon = b - a; }
  void deposit(double upto) {
    const double lo = std::max(last_t, a);
    const double hi = std::min(upto, b);
    if (hi > lo) {
      const auto k = static_cast<std::size_t>(last_level);
      if (om.weights.size() <= k) om.weights.resize(k + 1, 0.0);
      om.weights[k] += hi - lo;
    }
  }
  bool start(ScaledState s) {
    last_level = s.y2;
    return true;
  }
  bool event(double t, ScaledState s) {
    deposit(t);
    last_t = t;
    last_level = s.y2;
    return last_t < b;
  }
  void finish(double t_end) { deposit(t_end); }
};

struct HitDetector {
  std::int64_t level;
  HittingSample hs;
  explicit HitDetector(std::int64_t k, double horizon) : level(k) {
    hs.level = k;
    hs.horizon = horizon;
  }
  bool start(ScaledState s) {
    if (s.y2 >= level) {
      hs.time = 0.0;
      hs.censored = false;
      return false;
    }
    return true;
  }
  bool event(double t, ScaledState s) {
    if (s.y2 >= level) {
      hs.time = t;
      hs.censored = false;
      return false;
    }
    return true;
  }
  void finish(double t_end) {
    hs.time = t_end;
    hs.censored = true;
  }
};

void check_grid(const std::vector<double>& grid, double t_end) {
  require(!grid.empty(), "grid must be nonempty");
  require(grid.front() >= 0.0, "grid must start at or after 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    require(grid[i] >= grid[i - 1], "grid must be ascending");
  require(grid.back() <= t_end * (1.0 + 1e-12) + 1e-300, "grid exceeds horizon");
}

}  // namespace

Trajectory simulate(const ModelParams& p, double t_end, State init, std::uint64_t seed,
                    const SimOptions& opt) {
  Recorder rec;
  run_core(p, t_end, init, seed, opt, rec);
  rec.tr.t_end = t_end;
  rec.tr.digest = mix64(params_digest(p) ^ mix64(seed));
  return std::move(rec.tr);
}

std::vector<ScaledState> sample_path(const Trajectory& tr, const std::vector<double>& grid) {
  check_grid(grid, tr.t_end);
  std::vector<ScaledState> out(grid.size());
  std::size_t j = 0;  // last event index with times[j] <= grid[i]
  for (std::size_t i = 0; i < grid.size(); ++i) {
    while (j + 1 < tr.times.size() && tr.times[j + 1] <= grid[i]) ++j;
    out[i] = tr.states[j];
  }
  return out;
}

OccupationMeasure occupation_measure(const Trajectory& tr, double horizon) {
  require(horizon > 0.0, "occupation_measure: horizon must be > 0");
  if (horizon > tr.t_end * (1.0 + 1e-12))
    throw std::invalid_argument("occupation_measure: horizon exceeds trajectory horizon");
  OccupationMeasure om;
  om.horizon = horizon;
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const double lo = tr.times[i];
    if (lo >= horizon) break;
    const double hi = i + 1 < tr.times.size() ? std::min(tr.times[i + 1], horizon) : horizon;
    const auto k = static_cast<std::size_t>(tr.states[i].y2);
    if (om.weights.size() <= k) om.weights.resize(k + 1, 0.0);
    om.weights[k] += hi - lo;
  }
  return om;
}

HittingSample hitting_time(const ModelParams& p, std::int64_t level, double horizon,
                           std::uint64_t seed, const SimOptions& opt) {
  require(level >= 0, "hitting_time: level must be >= 0");
  require(horizon > 0.0, "hitting_time: horizon must be > 0");
  HitDetector det(level, horizon);
  run_core(p, horizon, State{0, 0}, seed, opt, det);
  return det.hs;
}

std::vector<ScaledState> simulate_on_grid(const ModelParams& p, const std::vector<double>& grid,
                                          State init, std::uint64_t seed, const SimOptions& opt) {
  require(!grid.empty(), "simulate_on_grid: grid must be nonempty");
  const double t_end = grid.back();
  check_grid(grid, t_end);
  GridSampler gs(grid);
  run_core(p, t_end, init, seed, opt, gs);
  return std::move(gs.out);
}

OccupationMeasure occupation_window(const ModelParams& p, double a, double b, State init,
                                    std::uint64_t seed, const SimOptions& opt) {
  require(b > a && a >= 0.0, "occupation_window: need 0 <= a < b");
  WindowAccumulator acc(a, b);
  run_core(p, b, init, seed, opt, acc);
  return std::move(acc.om);
}

double mgf_bound(const ModelParams& p, double beta, std::int64_t k) {
  require(std::isfinite(beta) && beta > 0.0, "mgf_bound: beta must be > 0");
  require(k >= 0, "mgf_bound: k must be >= 0");
  const double alpha = beta / (static_cast<double>(p.n) * p.mu);
  const double log_rho = std::log(p.lambda / p.mu);
  const double lg_alpha = std::lgamma(alpha);
  const double lg_k1 = std::lgamma(static_cast<double>(k) + 1.0);
  // log-sum-exp over j of C(k,j) * Gamma(alpha+j)/Gamma(alpha) * rho^{-j}
  std::vector<double> lt(static_cast<std::size_t>(k) + 1);
  double mx = -std::numeric_limits<double>::infinity();
  for (std::int64_t j = 0; j <= k; ++j) {
    const double jd = static_cast<double>(j);
    const double lchoose = lg_k1 - std::lgamma(jd + 1.0) - std::lgamma(static_cast<double>(k - j) + 1.0);
    const double v = lchoose + std::lgamma(alpha + jd) - lg_alpha - jd * log_rho;
    lt[static_cast<std::size_t>(j)] = v;
    mx = std::max(mx, v);
  }
  double s = 0.0;
  for (double v : lt) s += std::exp(v - mx);
  return std::exp(-(mx + std::log(s)));
}

double mgf_bound_limit(const ModelParams& p, std::int64_t k) {
  require(k >= 0, "mgf_bound_limit: k must be >= 0");
  (void)p;
  // Termwise alpha -> 0 limit: every j >= 1 term vanishes, the bound -> 1.
  return 1.0;
}

}  // namespace eaq
