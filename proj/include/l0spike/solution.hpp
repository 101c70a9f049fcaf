#ifndef L0SPIKE_SOLUTION_HPP
#define L0SPIKE_SOLUTION_HPP

#include <vector>

namespace l0spike {

// Result of the changepoint dynamic program. A changepoint tau splits the
// series into (.., tau] and [tau + 1, ..); the associated spike event sits
// at timestep tau + 1.
struct ChangepointSolution {
  std::vector<int> changepoints;        // strictly increasing, each in [1, T-1]
  double optimal_objective = 0.0;       // F(T) = sum_j D(segment_j) + lambda * k
  std::vector<double> f_values;         // F(0..T), size T + 1
  std::vector<int> pruning_set_sizes;   // |E_s| for s = 1..T; filled by PELT only

  int num_changepoints() const { return static_cast<int>(changepoints.size()); }
};

// Fitted calcium trajectory plus the spike events it implies.
struct SpikeFit {
  std::vector<double> calcium;           // c-hat_1..c-hat_T
  std::vector<int> spike_times;          // {tau_j + 1 : j = 1..k}
  std::vector<double> spike_magnitudes;  // c-hat_t minus its decay prediction
  std::vector<double> intercepts;        // per-timestep beta0; intercept model only

  int num_spikes() const { return static_cast<int>(spike_times.size()); }

  // Model prediction for y_t: calcium plus the intercept when one was fit.
  double predicted(std::size_t t_index) const {
    double p = calcium[t_index];
    if (!intercepts.empty()) p += intercepts[t_index];
    return p;
  }
};

}  // namespace l0spike

#endif  // L0SPIKE_SOLUTION_HPP
