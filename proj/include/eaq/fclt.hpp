#pragma once

#include <cstdint>
#include <vector>

#include "eaq/fluid.hpp"
#include "eaq/model.hpp"

namespace eaq {

// Centered fluctuation integrand at frozen slow coordinate y1:
// h(y2) = r3(y1)(1{y2=0} - e^{-m}) + r4(y1)(y2 - m). Averages to 0 under the
// frozen fast-queue law.
double h_fn(const ModelParams& p, double y1, std::int64_t y2);

enum class PoissonMethod { closed_form, exact_recursion };

// Solution of the frozen-generator Poisson equation B F = -h on levels 0..K.
// closed_form carries the two-coefficient ansatz F(k) = u1*1{k=0} + u2*k,
// which satisfies the equation exactly only at levels 0 and 1 unless the
// unassisted channel vanishes. exact_recursion is normalized to F(0) = 0
// (solutions are unique up to an additive constant; only differences matter).
struct PoissonSolution {
  double y1 = 0.0;
  PoissonMethod method = PoissonMethod::exact_recursion;
  std::vector<double> F;  // size K+1
  double u1 = 0.0;
  double u2 = 0.0;  // closed_form coefficients; zero otherwise
};

// Smallest admissible truncation level: ceil(m + 10 sqrt(m) + 20), at least 2.
// The one-argument form bounds m by lambda/mu, valid for every y1.
int truncation_floor(const ModelParams& p, double y1);
int truncation_floor(const ModelParams& p);

PoissonSolution poisson_closed(const ModelParams& p, double y1, int K);
PoissonSolution poisson_exact(const ModelParams& p, double y1, int K);

// Back-substitution defect of the Poisson equation at level k, 0 <= k < K.
double residual(const ModelParams& p, const PoissonSolution& sol, std::int64_t k);

// Diffusion-coefficient density g(t) along a fluid path, its cumulative
// integral, and the drift linearization on the same grid (kept here so path
// simulation needs no further rate evaluations).
struct SigmaFProfile {
  std::vector<double> grid;
  std::vector<double> density;
  std::vector<double> cumulative;
  std::vector<double> drift_deriv_grid;
  PoissonMethod method = PoissonMethod::exact_recursion;
  int K = 0;
};

SigmaFProfile sigma_f(const ModelParams& p, const FluidSolution& fs, int K, PoissonMethod method);

// Density rebuilt from an explicit Poisson solution (used by sigma_f and by
// gauge-invariance checks), and the collapsed closed-form expression.
double sigma_f_density(const ModelParams& p, const PoissonSolution& sol);
double sigma_f_reduced(const ModelParams& p, double y1);

// Variance of the limiting fluctuation at grid times resp. one time t:
// Var W(t) = int_0^t exp(2 int_s^t dG) g(s) ds, trapezoidal in s.
std::vector<double> var_w_profile(const ModelParams& p, const FluidSolution& fs,
                                  const SigmaFProfile& prof);
double var_w(const ModelParams& p, const FluidSolution& fs, const SigmaFProfile& prof, double t);

// Euler-Maruyama path of dW = dG(y(t)) W dt + sqrt(g(t)) dB, W(0) = 0,
// recorded on the profile grid. dt must divide the grid spacing.
struct FluctuationPath {
  std::vector<double> grid;
  std::vector<double> values;
};

FluctuationPath simulate_w(const ModelParams& p, const FluidSolution& fs,
                           const SigmaFProfile& prof, double dt, std::uint64_t seed);

}  // namespace eaq
