#ifndef L0SPIKE_TRACE_HPP
#define L0SPIKE_TRACE_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "l0spike/errors.hpp"

namespace l0spike {

// Observed fluorescence samples y_1..y_T. Timesteps are 1-indexed
// throughout the library: values[t - 1] holds y_t.
struct FluorescenceTrace {
  std::vector<double> values;
  std::optional<double> sample_rate_hz;  // metadata only

  std::size_t size() const { return values.size(); }
};

// Checks T >= 1 and that every sample is finite. Returns the trace
// unchanged on success.
inline const FluorescenceTrace& validate_trace(const FluorescenceTrace& trace) {
  if (trace.values.empty()) throw EmptyTraceError();
  for (std::size_t i = 0; i < trace.values.size(); ++i) {
    if (!std::isfinite(trace.values[i])) throw NonFiniteValueError(i + 1);
  }
  return trace;
}

// Exponential decay rate of the AR(1) calcium model, restricted to (0, 1).
class Ar1Params {
 public:
  explicit Ar1Params(double gamma) : gamma_(gamma) {
    if (!(gamma > 0.0) || !(gamma < 1.0)) throw InvalidGammaError(gamma);
  }
  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

// Nonnegative tuning parameter weighting the spike count.
class Penalty {
 public:
  explicit Penalty(double lambda) : lambda_(lambda) {
    if (!(lambda >= 0.0)) throw InvalidPenaltyError(lambda);
  }
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

}  // namespace l0spike

#endif  // L0SPIKE_TRACE_HPP
