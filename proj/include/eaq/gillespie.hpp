#pragma once

#include <cstdint>
#include <vector>

#include "eaq/model.hpp"

namespace eaq {

struct SimOptions {
  std::uint64_t event_cap = 1'000'000'000;  // per run; exceeding it throws
};

// Event log of one exact realization. states[i] holds on [times[i], times[i+1])
// and states.back() holds up to t_end; times[0] == 0.
struct Trajectory {
  std::vector<double> times;
  std::vector<ScaledState> states;
  double t_end = 0.0;
  std::uint64_t digest = 0;  // fingerprint of generating params and seed
};

Trajectory simulate(const ModelParams& p, double t_end, State init, std::uint64_t seed,
                    const SimOptions& opt = {});

// Cadlag evaluation on an ascending grid inside [0, t_end].
std::vector<ScaledState> sample_path(const Trajectory& tr, const std::vector<double>& grid);

// Time spent at each fast-queue level over [0, horizon]; weights sum to horizon.
struct OccupationMeasure {
  double horizon = 0.0;
  std::vector<double> weights;  // index = level
};

OccupationMeasure occupation_measure(const Trajectory& tr, double horizon);

// First passage of the fast queue to `level`, started from the empty state.
// When the horizon is reached first, `censored` is set and time == horizon.
struct HittingSample {
  std::int64_t level = 0;
  double time = 0.0;
  bool censored = false;
  double horizon = 0.0;
};

HittingSample hitting_time(const ModelParams& p, std::int64_t level, double horizon,
                           std::uint64_t seed, const SimOptions& opt = {});

// Streaming variants; no event log is kept, so memory is O(grid) resp. O(levels).
std::vector<ScaledState> simulate_on_grid(const ModelParams& p, const std::vector<double>& grid,
                                          State init, std::uint64_t seed,
                                          const SimOptions& opt = {});
OccupationMeasure occupation_window(const ModelParams& p, double a, double b, State init,
                                    std::uint64_t seed, const SimOptions& opt = {});

// Laplace-transform bound for the hitting time of fast-queue level k at
// transform parameter beta > 0: equals 1 at k = 0 and is strictly decreasing
// in k. mgf_bound_limit is its termwise large-n limit, which degenerates to 1
// for every fixed k and is exposed only for documentation purposes.
double mgf_bound(const ModelParams& p, double beta, std::int64_t k);
double mgf_bound_limit(const ModelParams& p, std::int64_t k);

}  // namespace eaq
