#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "eaq/model.hpp"

using namespace eaq;

namespace {

PresetParams base_rates() { return PresetParams{5.0, 2.0, 3.0, 2.0, 2.0}; }

ModelParams preset_a(std::int64_t n) {
  return make_preset(Preset::constant_arrivals, base_rates(), n);
}

ModelParams preset_b(std::int64_t n) {
  return make_preset(Preset::regulated_arrivals, base_rates(), n);
}

}  // namespace

TEST_CASE("propensities at pinned states") {
  const auto p = preset_a(10);
  const auto a0 = propensities(p, State{0, 0});
  CHECK(a0[0] == doctest::Approx(50.0).epsilon(1e-14));
  CHECK(a0[1] == doctest::Approx(30.0).epsilon(1e-14));
  CHECK(a0[2] == 0.0);
  CHECK(a0[3] == 0.0);
  CHECK(a0[4] == 0.0);

  const auto a1 = propensities(p, State{10, 0});
  CHECK(a1[2] == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(a1[3] == 0.0);
  CHECK(a1[4] == 0.0);

  const auto a2 = propensities(p, State{10, 2});
  CHECK(a2[2] == 0.0);
  CHECK(a2[3] == doctest::Approx(80.0).epsilon(1e-14));
  CHECK(a2[4] == doctest::Approx(40.0).epsilon(1e-14));
}

TEST_CASE("unassisted and assisted channels are mutually exclusive") {
  const auto p = preset_a(10);
  for (std::int64_t x1 : {0, 3, 17, 40}) {
    for (std::int64_t x2 : {0, 1, 2, 9}) {
      const auto a = propensities(p, State{x1, x2});
      if (x2 == 0) {
        CHECK(a[3] == 0.0);
        CHECK(a[4] == 0.0);
      } else {
        CHECK(a[2] == 0.0);
      }
      for (double v : a) CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("propensities scale homogeneously in n") {
  const auto p10 = preset_a(10);
  const auto p100 = preset_a(100);
  const auto a = propensities(p10, State{7, 3});
  const auto b = propensities(p100, State{70, 3});
  for (int i = 0; i < 5; ++i) CHECK(a[i] / 10.0 == doctest::Approx(b[i] / 100.0).epsilon(1e-14));
}

TEST_CASE("fast-queue mean and pmf") {
  const auto p = preset_a(10);
  CHECK(m_of(p, 0.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(m_of(p, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pi_pmf(p, 1.0, 0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(pi_pmf(p, 1.0, 1) == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-14));
  CHECK(pi_pmf(p, 1.0, -3) == 0.0);

  for (double y1 : {0.0, 0.3, 1.0, 2.7}) {
    double mass = 0.0;
    for (std::int64_t k = 0; k <= 60; ++k) mass += pi_pmf(p, y1, k);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fast-queue mean decreases as the slow queue grows") {
  for (const auto& p : {preset_a(10), preset_b(10)}) {
    double prev = m_of(p, 0.0);
    for (int i = 1; i <= 40; ++i) {
      const double cur = m_of(p, 0.25 * i);
      CHECK(cur <= prev + 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("preset rate functions and derivatives") {
  const auto pa = preset_a(100000);
  CHECK(pa.lambda == 3.0);
  CHECK(pa.mu == 2.0);
  CHECK(pa.r1.eval(0.0) == 5.0);
  CHECK(pa.r1.eval(3.7) == 5.0);
  CHECK(pa.r3.eval(1.0) == 2.0);
  CHECK(pa.r4.eval(1.0) == 4.0);
  CHECK(pa.r1.deriv1(2.0) == 0.0);
  CHECK(pa.r3.deriv1(2.0) == 2.0);
  CHECK(pa.r4.deriv1(2.0) == 4.0);

  const auto pb = preset_b(100000);
  CHECK(pb.r1.eval(1.0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(pb.r1.deriv1(1.0) == doctest::Approx(-1.25).epsilon(1e-15));
  CHECK(pb.r1.deriv2(1.0) == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("analytic derivatives agree with central differences") {
  const double h = 1e-5;
  for (const auto& p : {preset_a(10), preset_b(10)}) {
    for (const RateFunction* r : {&p.r1, &p.r3, &p.r4}) {
      for (double y : {0.125, 0.25, 0.9, 1.7, 4.2, 8.0}) {
        const double fd1 = (r->eval(y + h) - r->eval(y - h)) / (2.0 * h);
        const double fd2 = (r->eval(y + h) - 2.0 * r->eval(y) + r->eval(y - h)) / (h * h);
        CHECK(r->deriv1(y) == doctest::Approx(fd1).epsilon(1e-5));
        CHECK(std::abs(r->deriv2(y) - fd2) <= 1e-3 * std::max(1.0, std::abs(fd2)));
      }
    }
  }
}

TEST_CASE("finite-difference fallback derivatives") {
  const auto r = make_rate([](double y) { return y * y * y + 2.0 * y; });
  for (double y : {0.2, 1.0, 3.5}) {
    CHECK(std::abs(r.deriv1(y) - (3.0 * y * y + 2.0)) <= 1e-7 * std::max(1.0, 3.0 * y * y));
    CHECK(std::abs(r.deriv2(y) - 6.0 * y) <= 1e-5 * std::max(1.0, 6.0 * y));
  }
}

TEST_CASE("model validation rejects bad inputs") {
  auto zero = make_rate([](double) { return 0.0; });
  auto lin = make_rate([](double y) { return 2.0 * y; });
  auto pos = make_rate([](double) { return 5.0; });
  CHECK_THROWS_AS(make_model(0, 3.0, 2.0, pos, lin, lin), std::invalid_argument);
  CHECK_THROWS_AS(make_model(10, 0.0, 2.0, pos, lin, lin), std::invalid_argument);
  CHECK_THROWS_AS(make_model(10, 3.0, -1.0, pos, lin, lin), std::invalid_argument);
  CHECK_THROWS_AS(make_model(10, 3.0, 2.0, zero, lin, lin), std::invalid_argument);  // r1(0) = 0
  CHECK_THROWS_AS(make_model(10, 3.0, 2.0, pos, pos, lin), std::invalid_argument);   // r3(0) > 0
  CHECK_THROWS_AS(make_model(10, 3.0, 2.0, pos, lin, pos), std::invalid_argument);   // r4(0) > 0
  CHECK_NOTHROW(make_model(10, 3.0, 2.0, pos, zero, zero));

  PresetParams q = base_rates();
  q.mu_A = -1.0;
  CHECK_THROWS_AS(make_preset(Preset::constant_arrivals, q, 10), std::invalid_argument);
}

TEST_CASE("negative states are rejected") {
  const auto p = preset_a(10);
  CHECK_THROWS_AS(propensities(p, State{-1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(propensities(p, State{0, -2}), std::invalid_argument);
}

TEST_CASE("state scaling and digest") {
  const auto p = preset_a(10);
  const auto s = scale_state(p, State{7, 3});
  CHECK(s.y1 == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(s.y2 == 3);

  CHECK(params_digest(p) == params_digest(preset_a(10)));
  CHECK(params_digest(p) != params_digest(preset_a(11)));
  CHECK(params_digest(p) != params_digest(preset_b(10)));
}
