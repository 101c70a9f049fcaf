#include "l0spike/reconstruct.hpp"

#include <cstddef>
#include <string>
#include <variant>

#include "l0spike/errors.hpp"

namespace l0spike {

namespace {

void check_changepoints(const std::vector<int>& cps, int t_final) {
  int prev = 0;
  for (int tau : cps) {
    if (tau <= prev || tau >= t_final) {
      throw InvalidChangepointsError("changepoints must be strictly increasing and in [1, T-1]");
    }
    prev = tau;
  }
}

// Segment boundaries [a, b] in 1-indexed time, from tau_j + 1 to tau_{j+1}.
std::vector<std::pair<int, int>> segments_of(const std::vector<int>& cps, int t_final) {
  std::vector<std::pair<int, int>> segs;
  segs.reserve(cps.size() + 1);
  int start = 1;
  for (int tau : cps) {
    segs.emplace_back(start, tau);
    start = tau + 1;
  }
  segs.emplace_back(start, t_final);
  return segs;
}

void fill_spike_events_ar1(const std::vector<double>& calcium, const std::vector<int>& cps,
                           double gamma, SpikeFit& fit) {
  for (int tau : cps) {
    fit.spike_times.push_back(tau + 1);
    fit.spike_magnitudes.push_back(calcium[tau] - gamma * calcium[tau - 1]);
  }
}

}  // namespace

SpikeFit reconstruct_ar1(const FluorescenceTrace& trace, const std::vector<int>& changepoints,
                         Ar1Params params) {
  validate_trace(trace);
  const int t_final = static_cast<int>(trace.size());
  check_changepoints(changepoints, t_final);
  const double gamma = params.gamma();

  SpikeFit fit;
  fit.calcium.resize(t_final);
  for (auto [a, b] : segments_of(changepoints, t_final)) {
    Ar1CostState st = ar1_cost_init(trace.values[a - 1], gamma);
    for (int t = a + 1; t <= b; ++t) ar1_cost_extend(st, trace.values[t - 1]);
    double c = ar1_cost_optimal_c(st);
    for (int t = a; t <= b; ++t) {
      fit.calcium[t - 1] = c;
      c *= gamma;
    }
  }
  fill_spike_events_ar1(fit.calcium, changepoints, gamma, fit);
  return fit;
}

SpikeFit reconstruct_intercept(const FluorescenceTrace& trace,
                               const std::vector<int>& changepoints, Ar1Params params) {
  validate_trace(trace);
  const int t_final = static_cast<int>(trace.size());
  check_changepoints(changepoints, t_final);
  const double gamma = params.gamma();

  SpikeFit fit;
  fit.calcium.resize(t_final);
  fit.intercepts.resize(t_final);
  for (auto [a, b] : segments_of(changepoints, t_final)) {
    InterceptCostState st = intercept_cost_init(trace.values[a - 1], gamma);
    for (int t = a + 1; t <= b; ++t) intercept_cost_extend(st, trace.values[t - 1]);
    InterceptFitValues v = intercept_cost_value(st);
    double c = v.c_head;
    for (int t = a; t <= b; ++t) {
      fit.calcium[t - 1] = c;
      fit.intercepts[t - 1] = v.beta0;
      c *= gamma;
    }
  }
  fill_spike_events_ar1(fit.calcium, changepoints, gamma, fit);
  return fit;
}

SpikeFit reconstruct_arp(const FluorescenceTrace& trace, const std::vector<int>& changepoints,
                         const ArpParams& params) {
  validate_trace(trace);
  const int t_final = static_cast<int>(trace.size());
  check_changepoints(changepoints, t_final);
  const int p = params.p();
  const std::vector<double>& gammas = params.gammas();
  const ArpCost cost(params);

  SpikeFit fit;
  fit.calcium.resize(t_final);
  for (auto [a, b] : segments_of(changepoints, t_final)) {
    ArpCostState st = cost.init(trace.values[a - 1]);
    for (int t = a + 1; t <= b; ++t) cost.extend(st, trace.values[t - 1]);
    ArpFitValues v = cost.fit(st);
    const int len = b - a + 1;
    for (int j = 0; j < len; ++j) {
      if (j < p) {
        fit.calcium[a - 1 + j] = v.init_calcium[j];
      } else {
        double next = 0.0;
        for (int i = 1; i <= p; ++i) next += gammas[i - 1] * fit.calcium[a - 1 + j - i];
        fit.calcium[a - 1 + j] = next;
      }
    }
  }
  // Spike magnitude relative to what the decay recursion would have
  // predicted across the boundary; history before t = 1 counts as zero.
  for (int tau : changepoints) {
    const int t = tau + 1;
    double predicted = 0.0;
    for (int i = 1; i <= p && t - i >= 1; ++i) {
      predicted += gammas[i - 1] * fit.calcium[t - i - 1];
    }
    fit.spike_times.push_back(t);
    fit.spike_magnitudes.push_back(fit.calcium[t - 1] - predicted);
  }
  return fit;
}

SpikeFit reconstruct(const FluorescenceTrace& trace, const std::vector<int>& changepoints,
                     const CostModel& model) {
  return std::visit(
      [&](const auto& m) -> SpikeFit {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Ar1Cost>) {
          return reconstruct_ar1(trace, changepoints, Ar1Params(m.gamma()));
        } else if constexpr (std::is_same_v<M, InterceptCost>) {
          return reconstruct_intercept(trace, changepoints, Ar1Params(m.gamma()));
        } else {
          return reconstruct_arp(trace, changepoints, m.params());
        }
      },
      model);
}

PositivityReport positivity_audit(const SpikeFit& fit) {
  PositivityReport report;
  for (std::size_t j = 0; j < fit.spike_times.size(); ++j) {
    if (fit.spike_magnitudes[j] < 0.0) {
      report.violations.emplace_back(fit.spike_times[j], fit.spike_magnitudes[j]);
    }
  }
  report.all_nonnegative = report.violations.empty();
  return report;
}

double fit_objective(const FluorescenceTrace& trace, const SpikeFit& fit, Penalty penalty) {
  if (trace.size() != fit.calcium.size()) {
    throw LengthMismatchError("fit length does not match trace length");
  }
  double rss = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double r = trace.values[i] - fit.predicted(i);
    rss += r * r;
  }
  return 0.5 * rss + penalty.lambda() * fit.num_spikes();
}

}  // namespace l0spike
