#include <doctest.h>

#include <cmath>
#include <vector>

#include "l0spike/ar1_cost.hpp"
#include "l0spike/arp_cost.hpp"
#include "l0spike/intercept_cost.hpp"
#include "oracles.hpp"

using namespace l0spike;

namespace {

InterceptCostState intercept_state_of(const std::vector<double>& y, double gamma) {
  InterceptCostState st = intercept_cost_init(y[0], gamma);
  for (std::size_t i = 1; i < y.size(); ++i) intercept_cost_extend(st, y[i]);
  return st;
}

ArpCostState arp_state_of(const ArpCost& cost, const std::vector<double>& y) {
  ArpCostState st = cost.init(y[0]);
  for (std::size_t i = 1; i < y.size(); ++i) cost.extend(st, y[i]);
  return st;
}

}  // namespace

TEST_SUITE("extended_costs") {

TEST_CASE("constant segment is pure baseline") {
  const InterceptCostState st = intercept_state_of({5.0, 5.0, 5.0}, 0.5);
  const InterceptFitValues v = intercept_cost_value(st);
  CHECK(v.beta0 == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(v.c_head == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(v.cost <= 1e-12);
}

TEST_CASE("exact two-parameter segment fits exactly") {
  // y_t = 1 + 2 * 0.5^j.
  const InterceptCostState st = intercept_state_of({3.0, 2.0, 1.5}, 0.5);
  const InterceptFitValues v = intercept_cost_value(st);
  CHECK(v.beta0 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(v.c_head == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(v.cost <= 1e-12);
}

TEST_CASE("single-sample intercept segment is underdetermined") {
  const InterceptCostState st = intercept_state_of({7.0}, 0.3);
  const InterceptFitValues v = intercept_cost_value(st);
  CHECK(v.cost == 0.0);
  // Minimum-norm split between baseline and calcium.
  CHECK(v.beta0 == doctest::Approx(3.5));
  CHECK(v.c_head == doctest::Approx(3.5));
}

TEST_CASE("intercept cost matches brute-force two-parameter least squares") {
  oracles::TestRng rng(42);
  for (int rep = 0; rep < 300; ++rep) {
    const int len = rng.uniform_int(1, 30);
    const double gamma = rng.uniform(0.1, 0.95);
    std::vector<double> y(len);
    for (double& v : y) v = rng.uniform(-3.0, 3.0);
    const InterceptFitValues got = intercept_cost_value(intercept_state_of(y, gamma));
    const oracles::InterceptDirect want = oracles::intercept_cost_direct(y, 1, len, gamma);
    CHECK(got.cost == doctest::Approx(want.cost).epsilon(1e-8));
    if (len > 1) {
      CHECK(got.beta0 == doctest::Approx(want.beta0).epsilon(1e-7));
      CHECK(got.c_head == doctest::Approx(want.c_head).epsilon(1e-7));
    }
  }
}

TEST_CASE("extending a constant segment keeps the cost at zero") {
  InterceptCostState st = intercept_cost_init(2.5, 0.8);
  for (int i = 0; i < 20; ++i) {
    intercept_cost_extend(st, 2.5);
    CHECK(intercept_cost_value(st).cost <= 1e-12);
  }
}

TEST_CASE("intercept model is shift invariant") {
  oracles::TestRng rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    const int len = rng.uniform_int(2, 40);
    const double gamma = rng.uniform(0.1, 0.95);
    const double shift = rng.uniform(-10.0, 10.0);
    std::vector<double> y(len), y_shifted(len);
    for (int i = 0; i < len; ++i) {
      y[i] = rng.uniform(-2.0, 2.0);
      y_shifted[i] = y[i] + shift;
    }
    const InterceptFitValues base = intercept_cost_value(intercept_state_of(y, gamma));
    const InterceptFitValues moved = intercept_cost_value(intercept_state_of(y_shifted, gamma));
    CHECK(moved.cost == doctest::Approx(base.cost).epsilon(1e-9));
    CHECK(moved.beta0 - base.beta0 == doctest::Approx(shift).epsilon(1e-9));
    CHECK(moved.c_head == doctest::Approx(base.c_head).epsilon(1e-7));
  }
}

TEST_CASE("order-1 cost reduces to the plain decay cost") {
  oracles::TestRng rng(11);
  for (int rep = 0; rep < 1000; ++rep) {
    const int len = rng.uniform_int(1, 60);
    const double gamma = rng.uniform(0.05, 0.99);
    std::vector<double> y(len);
    for (double& v : y) v = rng.uniform(-3.0, 3.0);

    const ArpCost cost{ArpParams({gamma})};
    const ArpFitValues arp = cost.fit(arp_state_of(cost, y));

    Ar1CostState ar1 = ar1_cost_init(y[0], gamma);
    for (int i = 1; i < len; ++i) ar1_cost_extend(ar1, y[i]);

    CHECK(std::abs(arp.cost - ar1_cost_value(ar1)) <= 1e-10);
    CHECK(arp.init_calcium[0] == doctest::Approx(ar1_cost_optimal_c(ar1)).epsilon(1e-9));
  }
}

TEST_CASE("difference of exponentials is an exact order-2 fit") {
  const double gc = 0.8, gd = 0.3;
  const ArpCost cost{ArpParams({gc + gd, -gc * gd})};
  std::vector<double> y(40);
  double pc = 1.7, pd = 0.9;  // A * gc^k - B * gd^k
  for (double& v : y) {
    v = pc - pd;
    pc *= gc;
    pd *= gd;
  }
  const ArpFitValues fit = cost.fit(arp_state_of(cost, y));
  CHECK(fit.cost <= 1e-9);
}

TEST_CASE("order-p cost matches the dense design-matrix least squares") {
  oracles::TestRng rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    const int p = rng.uniform_int(2, 3);
    std::vector<double> gammas(p);
    for (double& g : gammas) g = rng.uniform(-0.4, 0.9);
    const int len = rng.uniform_int(1, 40);
    std::vector<double> y(len);
    for (double& v : y) v = rng.uniform(-3.0, 3.0);

    const ArpCost cost{ArpParams(gammas)};
    const double got = cost.fit(arp_state_of(cost, y)).cost;
    const double want = oracles::arp_cost_direct(y, 1, len, gammas);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("segments no longer than p fit exactly") {
  const ArpCost cost{ArpParams({0.9, -0.2})};
  ArpCostState st = cost.init(4.2);
  ArpFitValues fit = cost.fit(st);
  CHECK(fit.cost == 0.0);
  CHECK(fit.init_calcium[0] == doctest::Approx(4.2));
  CHECK(fit.init_calcium[1] == 0.0);

  cost.extend(st, -1.3);
  fit = cost.fit(st);
  CHECK(fit.cost == 0.0);
  CHECK(fit.init_calcium[1] == doctest::Approx(-1.3));
}

TEST_CASE("zero data keeps the order-p cost at zero under extension") {
  const ArpCost cost{ArpParams({0.5, 0.2})};
  ArpCostState st = cost.init(0.0);
  for (int i = 0; i < 30; ++i) {
    cost.extend(st, 0.0);
    CHECK(cost.value(st) == 0.0);
  }
}

TEST_CASE("padding with a zero coefficient relaxes the fit") {
  // One more free head value can only lower the cost; on data generated by
  // the base recursion both costs are zero.
  oracles::TestRng rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const int p = rng.uniform_int(1, 2);
    std::vector<double> gammas(p);
    for (double& g : gammas) g = rng.uniform(-0.3, 0.9);
    std::vector<double> padded = gammas;
    padded.push_back(0.0);

    const int len = rng.uniform_int(1, 30);
    std::vector<double> y(len);
    for (double& v : y) v = rng.uniform(-2.0, 2.0);

    const ArpCost base{ArpParams(gammas)};
    const ArpCost wide{ArpParams(padded)};
    const double d_base = base.value(arp_state_of(base, y));
    const double d_wide = wide.value(arp_state_of(wide, y));
    CHECK(d_wide <= d_base + 1e-10 * std::max(1.0, d_base));
  }

  const ArpCost base{ArpParams({0.6})};
  const ArpCost wide{ArpParams({0.6, 0.0})};
  std::vector<double> decay(12);
  double v = 2.0;
  for (double& s : decay) {
    s = v;
    v *= 0.6;
  }
  CHECK(base.value(arp_state_of(base, decay)) <= 1e-12);
  CHECK(wide.value(arp_state_of(wide, decay)) <= 1e-12);
}

TEST_CASE("unstable coefficients trip the overflow guard") {
  const ArpCost cost{ArpParams({40.0})};
  ArpCostState st = cost.init(1.0);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 200; ++i) cost.extend(st, 1.0);
      }(),
      UnstableRecursionError);
}

}  // TEST_SUITE
