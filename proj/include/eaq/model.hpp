#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

namespace eaq {

// Scalar rate with first and second derivative callables. Rates must be
// locally Lipschitz on [0, inf); when no analytic derivatives are supplied,
// make_rate attaches Richardson-extrapolated finite differences.
struct RateFunction {
  std::function<double(double)> eval;
  std::function<double(double)> deriv1;
  std::function<double(double)> deriv2;
  double lipschitz_hint = 0.0;
};

RateFunction make_rate(std::function<double(double)> eval, double lipschitz_hint = 0.0);
RateFunction make_rate(std::function<double(double)> eval,
                       std::function<double(double)> deriv1,
                       std::function<double(double)> deriv2,
                       double lipschitz_hint = 0.0);

// Two-queue model: a slow message queue driven by state-dependent rates r1
// (arrivals), r3 (unassisted service, active only while the fast queue is
// empty), r4 (assisted service, proportional to fast-queue occupancy), and a
// fast resource queue with arrival rate factor lambda and per-item service
// rate factor mu. n is the scale parameter.
struct ModelParams {
  std::int64_t n = 1;
  double lambda = 0.0;
  double mu = 0.0;
  RateFunction r1, r3, r4;
  std::string label;
};

// Validates n >= 1, lambda > 0, mu > 0, r1(0) > 0, r3(0) = 0, r4(0) = 0.
ModelParams make_model(std::int64_t n, double lambda, double mu,
                       RateFunction r1, RateFunction r3, RateFunction r4,
                       std::string label = {});

struct State {
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;
};

// Slow coordinate scaled by n; fast coordinate kept absolute.
struct ScaledState {
  double y1 = 0.0;
  std::int64_t y2 = 0;
};

struct Channel {
  int dx1;
  int dx2;
};

// slow arrival, fast arrival, unassisted service, assisted service, fast service
inline constexpr std::array<Channel, 5> kChannels{{{+1, 0}, {0, +1}, {-1, 0}, {-1, -1}, {0, -1}}};

// Jump intensities of the five channels at integer state x; all >= 0.
std::array<double, 5> propensities(const ModelParams& p, State x);

// Mean of the frozen fast-queue law at slow coordinate y1: lambda/(r4(y1)+mu).
double m_of(const ModelParams& p, double y1);

// Frozen fast-queue pmf pi(k; y1): Poisson(m_of(y1)), evaluated in log space.
double pi_pmf(const ModelParams& p, double y1, std::int64_t k);

enum class Preset { constant_arrivals, regulated_arrivals };

struct PresetParams {
  double lambda_A = 0.0;  // slow arrival level
  double mu_A = 0.0;      // unassisted service slope
  double lambda_B = 0.0;  // fast arrival rate
  double mu_B = 0.0;      // fast service rate
  double M = 0.0;         // assisted-service multiplier
};

// constant_arrivals: r1 = lambda_A, r3 = mu_A*y, r4 = M*mu_A*y.
// regulated_arrivals: r1 = lambda_A/(1+y), r3 and r4 as above.
ModelParams make_preset(Preset which, const PresetParams& q, std::int64_t n);

ScaledState scale_state(const ModelParams& p, State x);

// Order-insensitive fingerprint of (n, lambda, mu, rate probes, label).
std::uint64_t params_digest(const ModelParams& p);

}  // namespace eaq
