#include "eaq/model.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <utility>

#include "eaq/rng.hpp"

namespace eaq {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

RateFunction make_rate(std::function<double(double)> eval, double lipschitz_hint) {
  require(static_cast<bool>(eval), "make_rate: eval must be callable");
  RateFunction r;
  r.eval = eval;
  r.deriv1 = [eval](double y) {
    const double h = 1e-6;
    if (y >= h) {
      const double c1 = (eval(y + h) - eval(y - h)) / (2.0 * h);
      const double c2 = (eval(y + h / 2) - eval(y - h / 2)) / h;
      return (4.0 * c2 - c1) / 3.0;
    }
    // forward stencil: rates are undefined below 0
    const double f1 = (eval(y + h) - eval(y)) / h;
    const double f2 = (eval(y + h / 2) - eval(y)) / (h / 2);
    return 2.0 * f2 - f1;
  };
  r.deriv2 = [eval](double y) {
    const double h = 1e-4;
    if (y >= h) {
      auto s = [&](double w) { return (eval(y + w) - 2.0 * eval(y) + eval(y - w)) / (w * w); };
      return (4.0 * s(h / 2) - s(h)) / 3.0;
    }
    return (eval(y + 2 * h) - 2.0 * eval(y + h) + eval(y)) / (h * h);
  };
  r.lipschitz_hint = lipschitz_hint;
  return r;
}

RateFunction make_rate(std::function<double(double)> eval,
                       std::function<double(double)> deriv1,
                       std::function<double(double)> deriv2,
                       double lipschitz_hint) {
  require(static_cast<bool>(eval), "make_rate: eval must be callable");
  require(static_cast<bool>(deriv1) && static_cast<bool>(deriv2),
          "make_rate: both derivatives must be callable");
  return RateFunction{std::move(eval), std::move(deriv1), std::move(deriv2), lipschitz_hint};
}

ModelParams make_model(std::int64_t n, double lambda, double mu,
                       RateFunction r1, RateFunction r3, RateFunction r4,
                       std::string label) {
  require(n >= 1, "make_model: n must be >= 1");
  require(std::isfinite(lambda) && lambda > 0.0, "make_model: lambda must be > 0");
  require(std::isfinite(mu) && mu > 0.0, "make_model: mu must be > 0");
  require(static_cast<bool>(r1.eval) && static_cast<bool>(r3.eval) && static_cast<bool>(r4.eval),
          "make_model: rate callables missing");
  require(r1.eval(0.0) > 0.0, "make_model: r1(0) must be > 0");
  require(std::abs(r3.eval(0.0)) <= 1e-12, "make_model: r3(0) must be 0");
  require(std::abs(r4.eval(0.0)) <= 1e-12, "make_model: r4(0) must be 0");
  ModelParams p;
  p.n = n;
  p.lambda = lambda;
  p.mu = mu;
  p.r1 = std::move(r1);
  p.r3 = std::move(r3);
  p.r4 = std::move(r4);
  p.label = std::move(label);
  return p;
}

std::array<double, 5> propensities(const ModelParams& p, State x) {
  require(x.x1 >= 0 && x.x2 >= 0, "propensities: state must be nonnegative");
  const double nd = static_cast<double>(p.n);
  const double y1 = static_cast<double>(x.x1) / nd;
  const double x2 = static_cast<double>(x.x2);
  const std::array<double, 5> a{
      nd * p.r1.eval(y1),
      nd * p.lambda,
      x.x2 == 0 ? nd * p.r3.eval(y1) : 0.0,
      nd * p.r4.eval(y1) * x2,
      nd * p.mu * x2,
  };
  for (double v : a) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::runtime_error("propensities: rate evaluated negative or non-finite");
  }
  return a;
}

double m_of(const ModelParams& p, double y1) {
  const double denom = p.r4.eval(y1) + p.mu;
  if (!(denom > 0.0)) throw std::runtime_error("m_of: r4(y1) + mu must be > 0");
  return p.lambda / denom;
}

double pi_pmf(const ModelParams& p, double y1, std::int64_t k) {
  if (k < 0) return 0.0;
  const double m = m_of(p, y1);
  const double kd = static_cast<double>(k);
  return std::exp(-m + kd * std::log(m) - std::lgamma(kd + 1.0));
}

ModelParams make_preset(Preset which, const PresetParams& q, std::int64_t n) {
  require(std::isfinite(q.lambda_A) && q.lambda_A > 0.0, "make_preset: lambda_A must be > 0");
  require(std::isfinite(q.mu_A) && q.mu_A > 0.0, "make_preset: mu_A must be > 0");
  require(std::isfinite(q.lambda_B) && q.lambda_B > 0.0, "make_preset: lambda_B must be > 0");
  require(std::isfinite(q.mu_B) && q.mu_B > 0.0, "make_preset: mu_B must be > 0");
  require(std::isfinite(q.M) && q.M >= 0.0, "make_preset: M must be >= 0");

  const double lambda_A = q.lambda_A;
  const double mu_A = q.mu_A;
  const double slope4 = q.M * q.mu_A;

  RateFunction r1;
  std::string label;
  if (which == Preset::constant_arrivals) {
    r1 = make_rate([lambda_A](double) { return lambda_A; },
                   [](double) { return 0.0; }, [](double) { return 0.0; }, 0.0);
    label = "constant_arrivals";
  } else {
    r1 = make_rate([lambda_A](double y) { return lambda_A / (1.0 + y); },
                   [lambda_A](double y) {
                     const double d = 1.0 + y;
                     return -lambda_A / (d * d);
                   },
                   [lambda_A](double y) {
                     const double d = 1.0 + y;
                     return 2.0 * lambda_A / (d * d * d);
                   },
                   lambda_A);
    label = "regulated_arrivals";
  }
  RateFunction r3 = make_rate([mu_A](double y) { return mu_A * y; },
                              [mu_A](double) { return mu_A; }, [](double) { return 0.0; }, mu_A);
  RateFunction r4 = make_rate([slope4](double y) { return slope4 * y; },
                              [slope4](double) { return slope4; }, [](double) { return 0.0; },
                              slope4);
  return make_model(n, q.lambda_B, q.mu_B, std::move(r1), std::move(r3), std::move(r4),
                    std::move(label));
}

ScaledState scale_state(const ModelParams& p, State x) {
  return ScaledState{static_cast<double>(x.x1) / static_cast<double>(p.n), x.x2};
}

std::uint64_t params_digest(const ModelParams& p) {
  std::uint64_t h = 0x243F6A8885A308D3ull;
  auto add = [&h](double v) {
    std::uint64_t b = 0;
    std::memcpy(&b, &v, sizeof b);
    h = mix64(h ^ (b + kSmGolden));
  };
  h = mix64(h ^ static_cast<std::uint64_t>(p.n));
  add(p.lambda);
  add(p.mu);
  for (double probe : {0.0, 0.5, 1.0, 2.5, 7.0}) {
    add(p.r1.eval(probe));
    add(p.r3.eval(probe));
    add(p.r4.eval(probe));
  }
  for (char c : p.label) h = mix64(h ^ static_cast<unsigned char>(c));
  return h;
}

}  // namespace eaq
