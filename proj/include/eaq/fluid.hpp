#pragma once

#include <vector>

#include "eaq/model.hpp"

namespace eaq {

// Deterministic limit path of the slow coordinate on a uniform grid.
struct FluidSolution {
  std::vector<double> grid;    // ascending, grid.front() == 0
  std::vector<double> values;  // y(grid[i])
  double dt = 0.0;             // actual integrator step
};

// Averaged drift G(y) = r1(y) - r3(y) e^{-m(y)} - r4(y) m(y) and its derivative.
double drift(const ModelParams& p, double y);
double drift_deriv(const ModelParams& p, double y);

// Classic fixed-step RK4 from y(0) = y0. The step is adjusted to the nearest
// divisor of t_end so the grid lands on t_end exactly.
FluidSolution integrate(const ModelParams& p, double y0, double t_end, double dt);

// Linear interpolation onto a coarser grid / at a single time.
FluidSolution resample(const FluidSolution& fs, const std::vector<double>& grid);
double value_at(const FluidSolution& fs, double t);

// Smallest root of G on [0, bracket_hi], located by lattice scan plus
// bisection; sign_changes counts all sign changes seen on the lattice so
// callers can detect non-uniqueness.
struct SteadyState {
  double y = 0.0;
  int sign_changes = 0;
};

SteadyState steady_state(const ModelParams& p, double bracket_hi);

// Throughput of the slow queue at level y: r3(y) e^{-m(y)} + r4(y) m(y).
double effective_rate(const ModelParams& p, double y);

}  // namespace eaq
