#include "l0spike/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "l0spike/errors.hpp"

namespace l0spike {

SpikeTrain make_spike_train(std::vector<int> times, int horizon) {
  if (horizon < 0) throw Error("spike train horizon must be nonnegative");
  std::sort(times.begin(), times.end());
  if (!times.empty() && (times.front() < 1 || times.back() > horizon)) {
    throw Error("spike times must lie in [1, horizon]");
  }
  return SpikeTrain{std::move(times), horizon};
}

double calcium_mse(const std::vector<double>& c_true, const std::vector<double>& c_hat) {
  if (c_true.size() != c_hat.size() || c_true.empty()) {
    throw LengthMismatchError("calcium sequences must have equal nonzero length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < c_true.size(); ++i) {
    const double d = c_true[i] - c_hat[i];
    sum += d * d;
  }
  return sum / static_cast<double>(c_true.size());
}

namespace {

// f_t = exp(-1/tau) * f_{t-1} + (number of spikes at t).
std::vector<double> filtered_train(const SpikeTrain& train, double tau) {
  std::vector<double> f(train.horizon, 0.0);
  const double decay = std::exp(-1.0 / tau);
  std::size_t next = 0;
  double value = 0.0;
  for (int t = 1; t <= train.horizon; ++t) {
    value *= decay;
    while (next < train.times.size() && train.times[next] == t) {
      value += 1.0;
      ++next;
    }
    f[t - 1] = value;
  }
  return f;
}

}  // namespace

double van_rossum(const SpikeTrain& a, const SpikeTrain& b, const MetricParams& params) {
  if (a.horizon != b.horizon) {
    throw HorizonMismatchError("spike trains cover different horizons (" +
                               std::to_string(a.horizon) + " vs " + std::to_string(b.horizon) +
                               ")");
  }
  if (!(params.tau > 0.0)) throw Error("van Rossum timescale must be positive");
  if (a.horizon == 0) return 0.0;
  const std::vector<double> fa = filtered_train(a, params.tau);
  const std::vector<double> fb = filtered_train(b, params.tau);
  double sum = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const double d = fa[i] - fb[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.horizon);
}

double victor_purpura(const SpikeTrain& a, const SpikeTrain& b, const MetricParams& params) {
  if (!(params.q >= 0.0)) throw Error("Victor-Purpura shift cost must be nonnegative");
  const std::size_t n = a.times.size();
  const std::size_t m = b.times.size();
  std::vector<double> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<double>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<double>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const double shift = params.q * std::abs(a.times[i - 1] - b.times[j - 1]);
      cur[j] = std::min({prev[j] + 1.0, cur[j - 1] + 1.0, prev[j - 1] + shift});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

SpikeTrain threshold_spikes(const std::vector<std::pair<int, double>>& magnitudes, double level,
                            int horizon) {
  if (std::isnan(level) || level < 0.0) throw Error("threshold must be nonnegative");
  std::vector<int> kept;
  for (const auto& [t, magnitude] : magnitudes) {
    if (magnitude >= level) kept.push_back(t);
  }
  return make_spike_train(std::move(kept), horizon);
}

}  // namespace l0spike
