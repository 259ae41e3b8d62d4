#include "eaq/fclt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eaq/rng.hpp"

namespace eaq {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Frozen fast-queue coefficients at one slow coordinate.
struct Frozen {
  double r1, r3, r4, m, em;  // em = exp(-m)
};

Frozen freeze(const ModelParams& p, double y1) {
  Frozen f;
  f.r1 = p.r1.eval(y1);
  f.r3 = p.r3.eval(y1);
  f.r4 = p.r4.eval(y1);
  f.m = p.lambda / (f.r4 + p.mu);
  f.em = std::exp(-f.m);
  return f;
}

double h_at(const Frozen& f, std::int64_t y2) {
  return f.r3 * ((y2 == 0 ? 1.0 : 0.0) - f.em) + f.r4 * (static_cast<double>(y2) - f.m);
}

// Poisson(m) pmf on 0..K by upward recursion; cheap and accurate where the
// mass lives, which is all the sums below ever touch.
std::vector<double> pmf_table(double m, int K) {
  std::vector<double> pi(static_cast<std::size_t>(K) + 1);
  pi[0] = std::exp(-m);
  for (int k = 1; k <= K; ++k) pi[static_cast<std::size_t>(k)] =
      pi[static_cast<std::size_t>(k) - 1] * m / static_cast<double>(k);
  return pi;
}

void check_truncation(const ModelParams& p, double y1, int K) {
  const int floor_k = truncation_floor(p, y1);
  if (K < floor_k)
    throw std::invalid_argument("truncation level K below admissible floor");
  const auto pi = pmf_table(m_of(p, y1), K);
  double mass = 0.0;
  for (double v : pi) mass += v;
  if (1.0 - mass > 1e-10)
    throw std::invalid_argument("truncation level K leaves non-negligible tail mass");
}

void closed_coeffs(const Frozen& f, double lambda, double mu, double* u1, double* u2) {
  const double srv = f.r4 + mu;
  const double b1 = -f.r3 * (1.0 - f.em) + f.r4 * f.m;
  const double b2 = f.r3 * f.em - f.r4 * (1.0 - f.m);
  *u1 = (lambda * b2 - b1 * (lambda - srv)) / (lambda * lambda);
  *u2 = (lambda * b2 + srv * b1) / (lambda * lambda);
}

}  // namespace

double h_fn(const ModelParams& p, double y1, std::int64_t y2) {
  require(y2 >= 0, "h_fn: y2 must be >= 0");
  return h_at(freeze(p, y1), y2);
}

int truncation_floor(const ModelParams& p, double y1) {
  const double m = m_of(p, y1);
  return std::max(2, static_cast<int>(std::ceil(m + 10.0 * std::sqrt(m) + 20.0)));
}

int truncation_floor(const ModelParams& p) {
  const double m = p.lambda / p.mu;  // r4 >= 0, so m(y1) <= lambda/mu
  return std::max(2, static_cast<int>(std::ceil(m + 10.0 * std::sqrt(m) + 20.0)));
}

PoissonSolution poisson_closed(const ModelParams& p, double y1, int K) {
  check_truncation(p, y1, K);
  const Frozen f = freeze(p, y1);
  PoissonSolution sol;
  sol.y1 = y1;
  sol.method = PoissonMethod::closed_form;
  closed_coeffs(f, p.lambda, p.mu, &sol.u1, &sol.u2);
  sol.F.resize(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k)
    sol.F[static_cast<std::size_t>(k)] =
        (k == 0 ? sol.u1 : 0.0) + sol.u2 * static_cast<double>(k);
  return sol;
}

PoissonSolution poisson_exact(const ModelParams& p, double y1, int K) {
  check_truncation(p, y1, K);
  const Frozen f = freeze(p, y1);
  std::vector<double> h(static_cast<std::size_t>(K) + 1);
  for (int j = 0; j <= K; ++j) h[static_cast<std::size_t>(j)] = h_at(f, j);
  // Difference d(k) = F(k+1) - F(k) = (1/lambda) sum_{j>k} (pi(j)/pi(k)) h(j).
  // This is the centered partial-sum formula rewritten through the pmf
  // identity sum_j pi(j) h(j) = 0; the ratio recursion keeps every factor
  // well scaled where the literal partial-sum form loses all digits.
  PoissonSolution sol;
  sol.y1 = y1;
  sol.method = PoissonMethod::exact_recursion;
  sol.F.assign(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 0; k < K; ++k) {
    double ratio = 1.0;
    double s = 0.0;
    for (int j = k + 1; j <= K; ++j) {
      ratio *= f.m / static_cast<double>(j);
      s += ratio * h[static_cast<std::size_t>(j)];
    }
    sol.F[static_cast<std::size_t>(k) + 1] = sol.F[static_cast<std::size_t>(k)] + s / p.lambda;
  }
  return sol;
}

double residual(const ModelParams& p, const PoissonSolution& sol, std::int64_t k) {
  require(!sol.F.empty(), "residual: empty solution");
  const auto K = static_cast<std::int64_t>(sol.F.size()) - 1;
  require(k >= 0 && k < K, "residual: k must satisfy 0 <= k < K");
  const Frozen f = freeze(p, sol.y1);
  const auto ku = static_cast<std::size_t>(k);
  double res = p.lambda * (sol.F[ku + 1] - sol.F[ku]) + h_at(f, k);
  if (k > 0)
    res += (f.r4 + p.mu) * static_cast<double>(k) * (sol.F[ku - 1] - sol.F[ku]);
  return res;
}

double sigma_f_density(const ModelParams& p, const PoissonSolution& sol) {
  const Frozen f = freeze(p, sol.y1);
  const auto K = static_cast<int>(sol.F.size()) - 1;
  const auto pi = pmf_table(f.m, K);
  double g = f.r1 + f.r3 * f.em;
  for (int z = 1; z <= K; ++z) {
    const auto zu = static_cast<std::size_t>(z);
    const double dm1 = sol.F[zu - 1] - sol.F[zu];
    const double zpi = static_cast<double>(z) * pi[zu];
    g += (dm1 + 1.0) * (dm1 + 1.0) * f.r4 * zpi;
    g += p.mu * dm1 * dm1 * zpi;
  }
  for (int z = 0; z < K; ++z) {
    const auto zu = static_cast<std::size_t>(z);
    const double dp1 = sol.F[zu + 1] - sol.F[zu];
    g += p.lambda * dp1 * dp1 * pi[zu];
  }
  return g;
}

double sigma_f_reduced(const ModelParams& p, double y1) {
  const Frozen f = freeze(p, y1);
  double u1 = 0.0, u2 = 0.0;
  closed_coeffs(f, p.lambda, p.mu, &u1, &u2);
  const double pi0 = f.em;
  const double pi1 = f.m * f.em;
  const double d10 = u1 - u2;  // F(0) - F(1)
  return f.r1 + f.r3 * f.em +
         f.r4 * ((d10 + 1.0) * (d10 + 1.0) * pi1 + (1.0 - u2) * (1.0 - u2) * (f.m - pi1)) +
         p.lambda * (d10 * d10 * pi0 + u2 * u2 * (1.0 - pi0)) +
         p.mu * (d10 * d10 * pi1 + u2 * u2 * (f.m - pi1));
}

SigmaFProfile sigma_f(const ModelParams& p, const FluidSolution& fs, int K, PoissonMethod method) {
  require(!fs.grid.empty(), "sigma_f: empty fluid solution");
  SigmaFProfile prof;
  prof.grid = fs.grid;
  prof.method = method;
  prof.K = K;
  const std::size_t N = fs.grid.size();
  prof.density.resize(N);
  prof.cumulative.resize(N);
  prof.drift_deriv_grid.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double y = fs.values[i];
    const PoissonSolution sol = method == PoissonMethod::closed_form
                                    ? poisson_closed(p, y, K)
                                    : poisson_exact(p, y, K);
    prof.density[i] = sigma_f_density(p, sol);
    prof.drift_deriv_grid[i] = drift_deriv(p, y);
  }
  prof.cumulative[0] = 0.0;
  for (std::size_t i = 1; i < N; ++i)
    prof.cumulative[i] = prof.cumulative[i - 1] +
                         0.5 * (prof.density[i - 1] + prof.density[i]) *
                             (prof.grid[i] - prof.grid[i - 1]);
  return prof;
}

namespace {

void check_profile(const FluidSolution& fs, const SigmaFProfile& prof) {
  require(fs.grid.size() == prof.grid.size(), "profile grid does not match fluid grid");
  for (std::size_t i = 0; i < fs.grid.size(); ++i)
    require(std::abs(fs.grid[i] - prof.grid[i]) <= 1e-12 * std::max(1.0, fs.grid.back()),
            "profile grid does not match fluid grid");
}

}  // namespace

std::vector<double> var_w_profile(const ModelParams& p, const FluidSolution& fs,
                                  const SigmaFProfile& prof) {
  (void)p;
  check_profile(fs, prof);
  const std::size_t N = prof.grid.size();
  std::vector<double> var(N, 0.0);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const double h = prof.grid[i + 1] - prof.grid[i];
    const double di = 0.5 * (prof.drift_deriv_grid[i] + prof.drift_deriv_grid[i + 1]) * h;
    const double e = std::exp(2.0 * di);
    var[i + 1] = e * var[i] + 0.5 * h * (e * prof.density[i] + prof.density[i + 1]);
  }
  return var;
}

double var_w(const ModelParams& p, const FluidSolution& fs, const SigmaFProfile& prof, double t) {
  const auto var = var_w_profile(p, fs, prof);
  const double tol = 1e-9 * std::max(1.0, prof.grid.back());
  require(t >= -tol && t <= prof.grid.back() + tol, "var_w: t outside grid");
  const double tc = std::clamp(t, prof.grid.front(), prof.grid.back());
  const auto it = std::upper_bound(prof.grid.begin(), prof.grid.end(), tc);
  if (it == prof.grid.begin()) return var.front();
  if (it == prof.grid.end()) return var.back();
  const auto hi = static_cast<std::size_t>(it - prof.grid.begin());
  const std::size_t lo = hi - 1;
  const double w = (tc - prof.grid[lo]) / (prof.grid[hi] - prof.grid[lo]);
  return (1.0 - w) * var[lo] + w * var[hi];
}

FluctuationPath simulate_w(const ModelParams& p, const FluidSolution& fs,
                           const SigmaFProfile& prof, double dt, std::uint64_t seed) {
  (void)p;
  check_profile(fs, prof);
  require(std::isfinite(dt) && dt > 0.0, "simulate_w: dt must be > 0");
  CounterRng rng = CounterRng::for_stream(seed, 0);
  const std::size_t N = prof.grid.size();
  FluctuationPath wp;
  wp.grid = prof.grid;
  wp.values.assign(N, 0.0);
  double w = 0.0;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const double h = prof.grid[i + 1] - prof.grid[i];
    const auto sub = std::max<std::int64_t>(1, std::llround(h / dt));
    require(std::abs(static_cast<double>(sub) * dt - h) <= 1e-9 * h,
            "simulate_w: dt must divide the grid spacing");
    const double hs = h / static_cast<double>(sub);
    for (std::int64_t s = 0; s < sub; ++s) {
      const double frac = static_cast<double>(s) / static_cast<double>(sub);
      const double dg = (1.0 - frac) * prof.drift_deriv_grid[i] +
                        frac * prof.drift_deriv_grid[i + 1];
      const double g = std::max(0.0, (1.0 - frac) * prof.density[i] + frac * prof.density[i + 1]);
      w += dg * w * hs + std::sqrt(g * hs) * rng.next_normal();
    }
    wp.values[i + 1] = w;
  }
  return wp;
}

}  // namespace eaq
