#include "l0spike/simulate.hpp"

#include "l0spike/errors.hpp"

namespace l0spike {

const char* const kRngDescription = "mt19937_64 + 53-bit uniform + Box-Muller normal + Knuth Poisson";

SimulatedTrace simulate(const SimConfig& config) {
  if (config.t_len < 1) throw Error("simulation length must be at least 1");
  if (config.gammas.empty()) throw Error("simulation requires at least one decay coefficient");
  if (config.sigma < 0.0) throw Error("noise SD must be nonnegative");
  if (config.theta < 0.0) throw Error("firing rate must be nonnegative");

  const int t_len = config.t_len;
  const int p = static_cast<int>(config.gammas.size());
  SimRng rng(config.seed);

  std::vector<int> counts(t_len);
  for (int t = 0; t < t_len; ++t) counts[t] = rng.poisson(config.theta);

  // Decay recursion with pre-history pinned at c_init.
  std::vector<double> calcium(t_len);
  calcium[0] = config.c_init + counts[0];
  for (int t = 1; t < t_len; ++t) {
    double decayed = 0.0;
    for (int i = 1; i <= p; ++i) {
      const double past = (t - i >= 0) ? calcium[t - i] : config.c_init;
      decayed += config.gammas[i - 1] * past;
    }
    calcium[t] = decayed + counts[t];
  }

  FluorescenceTrace trace;
  trace.values.resize(t_len);
  for (int t = 0; t < t_len; ++t) {
    double y = config.beta0 + config.beta1 * calcium[t];
    if (config.sigma > 0.0) y += config.sigma * rng.normal();
    trace.values[t] = y;
  }

  std::vector<int> spike_times;
  for (int t = 0; t < t_len; ++t) {
    if (counts[t] > 0) spike_times.push_back(t + 1);
  }

  SimulatedTrace result;
  result.trace = std::move(trace);
  result.true_calcium = std::move(calcium);
  result.true_spike_counts = std::move(counts);
  result.true_spike_train = make_spike_train(std::move(spike_times), t_len);
  return result;
}

}  // namespace l0spike
