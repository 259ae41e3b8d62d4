#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eaq/fluid.hpp"
#include "eaq/gillespie.hpp"

namespace eaq {

// Pointwise mean and standard deviation of the scaled slow coordinate over
// independent replications started from the empty state, plus the per-
// replication terminal values. Deterministic for a given seed regardless of
// the worker count.
struct EnsembleSummary {
  std::vector<double> grid;
  std::vector<double> mean;
  std::vector<double> sd;
  std::vector<double> terminal;
  int replications = 0;
  std::int64_t n = 1;
};

EnsembleSummary ensemble(const ModelParams& p, const std::vector<double>& grid, int replications,
                         std::uint64_t seed, int threads = 1, const SimOptions& opt = {});

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;  // statistic <= threshold
  std::string details;
};

// Worst normalized deviation of the ensemble mean from the fluid path:
// max_t |mean - y| / (3 sd/sqrt(R) + 10/sqrt(n) + 1e-3), threshold 1.
TestReport flln_error(const EnsembleSummary& es, const FluidSolution& fs);

// One-sample Kolmogorov-Smirnov against N(0, 1) after standardizing by
// sqrt(variance); threshold 1.628/sqrt(R) (asymptotic 1% point). The overload
// takes the level explicitly: threshold sqrt(-ln(alpha/2)/2)/sqrt(R).
TestReport ks_gaussian(const std::vector<double>& samples, double variance);
TestReport ks_gaussian(const std::vector<double>& samples, double variance, double alpha);

// Total variation between the normalized occupation measure and the frozen
// fast-queue law at y1_ref; threshold 0.05.
TestReport tv_occupation(const OccupationMeasure& om, const ModelParams& p, double y1_ref);

}  // namespace eaq
