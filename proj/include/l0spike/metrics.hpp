#ifndef L0SPIKE_METRICS_HPP
#define L0SPIKE_METRICS_HPP

#include <utility>
#include <vector>

#include "l0spike/errors.hpp"

namespace l0spike {

// Integer-timestep spike train over 1..horizon. Duplicate times are allowed
// (multiple spikes in one timestep).
struct SpikeTrain {
  std::vector<int> times;  // non-decreasing
  int horizon = 0;
};

// Sorts and validates the given times.
SpikeTrain make_spike_train(std::vector<int> times, int horizon);

struct MetricParams {
  double tau = 2.0;  // van Rossum kernel timescale, in timesteps
  double q = 1.0;    // Victor-Purpura shift cost per timestep
};

// (1/T) sum (c_t - c_hat_t)^2.
double calcium_mse(const std::vector<double>& c_true, const std::vector<double>& c_hat);

// Mean squared difference of the two trains convolved with the causal
// exponential kernel exp(-(t-s)/tau), evaluated recursively in O(T).
double van_rossum(const SpikeTrain& a, const SpikeTrain& b, const MetricParams& params = {});

// Minimum cost of transforming one train into the other: insertion and
// deletion cost 1, moving a spike by dt costs q*|dt| (the insert+delete
// path bounds any move at 2).
double victor_purpura(const SpikeTrain& a, const SpikeTrain& b, const MetricParams& params = {});

// Keeps the events whose magnitude reaches the threshold L.
SpikeTrain threshold_spikes(const std::vector<std::pair<int, double>>& magnitudes, double level,
                            int horizon);

}  // namespace l0spike

#endif  // L0SPIKE_METRICS_HPP
