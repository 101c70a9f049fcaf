#include <doctest.h>

#include <cmath>
#include <vector>

#include "l0spike/ar1_cost.hpp"
#include "oracles.hpp"

using namespace l0spike;

namespace {

Ar1CostState state_of(const std::vector<double>& y, double gamma) {
  Ar1CostState st = ar1_cost_init(y[0], gamma);
  for (std::size_t i = 1; i < y.size(); ++i) ar1_cost_extend(st, y[i]);
  return st;
}

}  // namespace

TEST_SUITE("segment_cost") {

TEST_CASE("single point fits exactly") {
  Ar1CostState st = ar1_cost_init(3.0, 0.5);
  CHECK(ar1_cost_value(st) == 0.0);
  CHECK(ar1_cost_optimal_c(st) == 3.0);

  Ar1CostState zero = ar1_cost_init(0.0, 0.9);
  CHECK(ar1_cost_value(zero) == 0.0);
  CHECK(ar1_cost_optimal_c(zero) == 0.0);
}

TEST_CASE("init rejects gamma outside (0, 1)") {
  CHECK_THROWS_AS(ar1_cost_init(1.0, 1.2), InvalidGammaError);
  CHECK_THROWS_AS(ar1_cost_init(1.0, 0.0), InvalidGammaError);
}

TEST_CASE("extend rejects non-finite samples") {
  Ar1CostState st = ar1_cost_init(1.0, 0.5);
  CHECK_THROWS_AS(ar1_cost_extend(st, std::nan("")), NonFiniteValueError);
}

TEST_CASE("perfect decay costs zero") {
  Ar1CostState st = ar1_cost_init(1.0, 0.5);
  ar1_cost_extend(st, 0.5);
  CHECK(ar1_cost_value(st) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ar1_cost_optimal_c(st) == doctest::Approx(1.0));

  const Ar1CostState longer = state_of({2.0, 1.0, 0.5}, 0.5);
  CHECK(ar1_cost_value(longer) <= 1e-12);
  CHECK(ar1_cost_optimal_c(longer) == doctest::Approx(2.0));
}

TEST_CASE("two-point least squares matches hand arithmetic") {
  // Fitting c * (1, 0.5) to (1, 0): c = 0.8, cost = (0.2^2 + 0.4^2) / 2 = 0.1.
  Ar1CostState st = ar1_cost_init(1.0, 0.5);
  ar1_cost_extend(st, 0.0);
  CHECK(ar1_cost_optimal_c(st) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(ar1_cost_value(st) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("all-zero segments cost zero for any length") {
  for (double gamma : {0.1, 0.5, 0.998}) {
    Ar1CostState st = ar1_cost_init(0.0, gamma);
    for (int i = 0; i < 50; ++i) ar1_cost_extend(st, 0.0);
    CHECK(ar1_cost_value(st) == 0.0);
    CHECK(ar1_cost_optimal_c(st) == 0.0);
  }
}

TEST_CASE("incremental chain equals from-scratch evaluation") {
  oracles::TestRng rng(1234);
  for (int rep = 0; rep < 1000; ++rep) {
    const int len = rng.uniform_int(1, 200);
    const double gamma = rng.uniform(0.05, 0.995);
    std::vector<double> y(len);
    for (double& v : y) v = rng.uniform(-3.0, 3.0);

    const Ar1CostState st = state_of(y, gamma);
    const double direct = oracles::ar1_cost_direct(y, 1, len, gamma);
    CHECK(ar1_cost_value(st) ==
          doctest::Approx(direct).epsilon(1e-9));
    const double head = oracles::ar1_head_direct(y, 1, len, gamma);
    CHECK(ar1_cost_optimal_c(st) == doctest::Approx(head).epsilon(1e-9));
  }
}

TEST_CASE("optimal head satisfies the normal equation") {
  oracles::TestRng rng(77);
  for (int rep = 0; rep < 100; ++rep) {
    const int len = rng.uniform_int(2, 60);
    const double gamma = rng.uniform(0.1, 0.99);
    std::vector<double> y(len);
    for (double& v : y) v = rng.uniform(-2.0, 2.0);
    const Ar1CostState st = state_of(y, gamma);
    const double c = ar1_cost_optimal_c(st);

    double residual_dot = 0.0, scale = 0.0;
    double gpow = 1.0;
    for (int t = 0; t < len; ++t) {
      residual_dot += (y[t] - c * gpow) * gpow;
      scale += std::abs(y[t] * gpow);
      gpow *= gamma;
    }
    CHECK(std::abs(residual_dot) <= 1e-9 * std::max(1.0, scale));
  }
}

TEST_CASE("cost is the minimum over alternative heads") {
  oracles::TestRng rng(99);
  for (int rep = 0; rep < 200; ++rep) {
    const int len = rng.uniform_int(1, 50);
    const double gamma = rng.uniform(0.1, 0.99);
    std::vector<double> y(len);
    for (double& v : y) v = rng.uniform(-2.0, 2.0);
    const Ar1CostState st = state_of(y, gamma);
    const double d = ar1_cost_value(st);
    CHECK(d >= 0.0);

    for (int alt = 0; alt < 100; ++alt) {
      const double c = rng.uniform(-4.0, 4.0);
      double cost = 0.0;
      double gpow = 1.0;
      for (int t = 0; t < len; ++t) {
        const double r = y[t] - c * gpow;
        cost += r * r;
        gpow *= gamma;
      }
      CHECK(d <= 0.5 * cost + 1e-12);
    }
  }
}

TEST_CASE("long near-unit-decay segments stay finite") {
  // gamma = 0.998 over 1e5 steps: gamma^n underflows gracefully and the
  // squared-power sum approaches its limit 1 / (1 - gamma^2).
  const double gamma = 0.998;
  oracles::TestRng rng(5);
  Ar1CostState st = ar1_cost_init(rng.uniform(-1.0, 1.0), gamma);
  for (int i = 1; i < 100000; ++i) ar1_cost_extend(st, rng.uniform(-1.0, 1.0));
  const double d = ar1_cost_value(st);
  CHECK(std::isfinite(d));
  CHECK(d >= 0.0);
  CHECK(st.sum_g2 == doctest::Approx(1.0 / (1.0 - gamma * gamma)));
  CHECK(std::isfinite(ar1_cost_optimal_c(st)));
}

TEST_CASE("incremental equals batch on a long segment") {
  oracles::TestRng rng(31);
  const int len = 100000;
  const double gamma = 0.998;
  std::vector<double> y(len);
  for (double& v : y) v = rng.uniform(-1.0, 1.0);
  const Ar1CostState st = state_of(y, gamma);
  const double direct = oracles::ar1_cost_direct(y, 1, len, gamma);
  CHECK(ar1_cost_value(st) == doctest::Approx(direct).epsilon(1e-9));
}

}  // TEST_SUITE
