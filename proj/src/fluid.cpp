#include "eaq/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eaq {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double drift(const ModelParams& p, double y) {
  const double m = m_of(p, y);
  return p.r1.eval(y) - p.r3.eval(y) * std::exp(-m) - p.r4.eval(y) * m;
}

double drift_deriv(const ModelParams& p, double y) {
  const double r3 = p.r3.eval(y);
  const double r4 = p.r4.eval(y);
  const double d1 = p.r1.deriv1(y);
  const double d3 = p.r3.deriv1(y);
  const double d4 = p.r4.deriv1(y);
  const double denom = r4 + p.mu;
  const double m = p.lambda / denom;
  const double mp = -p.lambda * d4 / (denom * denom);
  return d1 - (d3 - r3 * mp) * std::exp(-m) - d4 * m - r4 * mp;
}

FluidSolution integrate(const ModelParams& p, double y0, double t_end, double dt) {
  require(std::isfinite(t_end) && t_end > 0.0, "integrate: t_end must be > 0");
  require(std::isfinite(dt) && dt > 0.0, "integrate: dt must be > 0");
  require(std::isfinite(y0) && y0 >= 0.0, "integrate: y0 must be >= 0");
  const auto steps = std::max<std::int64_t>(1, std::llround(t_end / dt));
  const double h = t_end / static_cast<double>(steps);
  FluidSolution fs;
  fs.dt = h;
  fs.grid.resize(static_cast<std::size_t>(steps) + 1);
  fs.values.resize(static_cast<std::size_t>(steps) + 1);
  for (std::int64_t i = 0; i <= steps; ++i)
    fs.grid[static_cast<std::size_t>(i)] =
        t_end * static_cast<double>(i) / static_cast<double>(steps);
  double y = y0;
  fs.values[0] = y;
  for (std::int64_t i = 0; i < steps; ++i) {
    const double k1 = drift(p, y);
    const double k2 = drift(p, y + 0.5 * h * k1);
    const double k3 = drift(p, y + 0.5 * h * k2);
    const double k4 = drift(p, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    fs.values[static_cast<std::size_t>(i) + 1] = y;
  }
  return fs;
}

double value_at(const FluidSolution& fs, double t) {
  require(!fs.grid.empty(), "value_at: empty solution");
  const double tol = 1e-9 * std::max(1.0, fs.grid.back());
  require(t >= fs.grid.front() - tol && t <= fs.grid.back() + tol, "value_at: t outside grid");
  const double tc = std::clamp(t, fs.grid.front(), fs.grid.back());
  const auto it = std::upper_bound(fs.grid.begin(), fs.grid.end(), tc);
  if (it == fs.grid.begin()) return fs.values.front();
  if (it == fs.grid.end()) return fs.values.back();
  const auto hi = static_cast<std::size_t>(it - fs.grid.begin());
  const std::size_t lo = hi - 1;
  const double w = (tc - fs.grid[lo]) / (fs.grid[hi] - fs.grid[lo]);
  return (1.0 - w) * fs.values[lo] + w * fs.values[hi];
}

FluidSolution resample(const FluidSolution& fs, const std::vector<double>& grid) {
  require(!grid.empty(), "resample: grid must be nonempty");
  FluidSolution out;
  out.grid = grid;
  out.dt = fs.dt;
  out.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.values[i] = value_at(fs, grid[i]);
  return out;
}

SteadyState steady_state(const ModelParams& p, double bracket_hi) {
  require(std::isfinite(bracket_hi) && bracket_hi > 0.0, "steady_state: bracket_hi must be > 0");
  constexpr int kLattice = 4096;
  double prev_y = 0.0;
  double prev_g = drift(p, 0.0);
  int sign_changes = 0;
  double lo = -1.0, hi = -1.0;  // first bracketing interval
  for (int i = 1; i <= kLattice; ++i) {
    const double y = bracket_hi * static_cast<double>(i) / kLattice;
    const double g = drift(p, y);
    const bool crossed = (prev_g > 0.0 && g <= 0.0) || (prev_g < 0.0 && g >= 0.0);
    if (crossed) {
      ++sign_changes;
      if (lo < 0.0) {
        lo = prev_y;
        hi = y;
      }
    }
    prev_y = y;
    prev_g = g;
  }
  if (lo < 0.0) throw std::runtime_error("steady_state: no sign change on [0, bracket_hi]");
  double flo = drift(p, lo);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = drift(p, mid);
    if ((flo > 0.0 && fm > 0.0) || (flo < 0.0 && fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return SteadyState{0.5 * (lo + hi), sign_changes};
}

double effective_rate(const ModelParams& p, double y) {
  const double m = m_of(p, y);
  return p.r3.eval(y) * std::exp(-m) + p.r4.eval(y) * m;
}

}  // namespace eaq
