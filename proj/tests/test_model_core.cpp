#include <doctest.h>

#include <cmath>
#include <limits>

#include "l0spike/trace.hpp"

using namespace l0spike;

TEST_SUITE("model_core") {

TEST_CASE("validate_trace accepts a finite trace") {
  FluorescenceTrace trace{{1.0, 0.5}, {}};
  CHECK(&validate_trace(trace) == &trace);
}

TEST_CASE("validate_trace rejects an empty trace") {
  FluorescenceTrace trace;
  CHECK_THROWS_AS(validate_trace(trace), EmptyTraceError);
}

TEST_CASE("validate_trace reports the first non-finite sample") {
  FluorescenceTrace trace{{1.0, std::numeric_limits<double>::quiet_NaN()}, {}};
  try {
    validate_trace(trace);
    FAIL("expected NonFiniteValueError");
  } catch (const NonFiniteValueError& e) {
    CHECK(e.index() == 2);
  }

  FluorescenceTrace inf_trace{{std::numeric_limits<double>::infinity(), 0.0}, {}};
  CHECK_THROWS_AS(validate_trace(inf_trace), NonFiniteValueError);
}

TEST_CASE("decay rate must lie strictly inside (0, 1)") {
  CHECK_THROWS_AS(Ar1Params(1.2), InvalidGammaError);
  CHECK_THROWS_AS(Ar1Params(0.0), InvalidGammaError);
  CHECK_THROWS_AS(Ar1Params(1.0), InvalidGammaError);
  CHECK(Ar1Params(0.5).gamma() == 0.5);
}

TEST_CASE("penalty must be nonnegative") {
  CHECK_THROWS_AS(Penalty(-0.1), InvalidPenaltyError);
  CHECK(Penalty(0.0).lambda() == 0.0);
}

}  // TEST_SUITE
