#ifndef L0SPIKE_AR1_COST_HPP
#define L0SPIKE_AR1_COST_HPP

#include <algorithm>
#include <cmath>

#include "l0spike/errors.hpp"
#include "l0spike/trace.hpp"

namespace l0spike {

// Sufficient statistics for the exponential-decay segment cost
//
//   D(y_{a:b}) = min_c  1/2 * sum_{t=a}^{b} (y_t - c * gamma^(t-a))^2,
//
// kept in a form that supports a constant-time right extension. The power
// gamma^(t-a) of the newest sample is maintained multiplicatively in
// cur_gpow; the squared-power sum uses the geometric closed form
// (1 - gamma^(2n)) / (1 - gamma^2), so that when gamma^n underflows the
// stored value degrades gracefully to the limit 1 / (1 - gamma^2).
struct Ar1CostState {
  double gamma;
  long long n;          // segment length b - a + 1
  double sum_half_ysq;  // sum y_t^2 / 2
  double sum_y_gpow;    // sum y_t * gamma^(t-a)
  double cur_gpow;      // gamma^(n-1)
  double sum_g2;        // sum gamma^(2(t-a))
};

inline Ar1CostState ar1_cost_init(double y_a, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) throw InvalidGammaError(gamma);
  if (!std::isfinite(y_a)) throw NonFiniteValueError(1);
  return Ar1CostState{gamma, 1, 0.5 * y_a * y_a, y_a, 1.0, 1.0};
}

inline void ar1_cost_extend(Ar1CostState& st, double y_next) {
  if (!std::isfinite(y_next)) throw NonFiniteValueError(static_cast<std::size_t>(st.n) + 1);
  st.n += 1;
  st.cur_gpow *= st.gamma;
  st.sum_half_ysq += 0.5 * y_next * y_next;
  st.sum_y_gpow += y_next * st.cur_gpow;
  const double gpow_np1 = st.cur_gpow * st.gamma;  // gamma^n
  st.sum_g2 = (1.0 - gpow_np1 * gpow_np1) / (1.0 - st.gamma * st.gamma);
}

// Least-squares initial calcium C(y_{a:b}).
inline double ar1_cost_optimal_c(const Ar1CostState& st) {
  return st.sum_y_gpow / st.sum_g2;
}

inline double ar1_cost_value(const Ar1CostState& st) {
  const double c = st.sum_y_gpow / st.sum_g2;
  double d = st.sum_half_ysq - c * st.sum_y_gpow + 0.5 * c * c * st.sum_g2;
  if (d < 0.0) {
    // Cancellation on a near-perfect fit can land slightly below zero; the
    // slack scales with the magnitude of the accumulated sums.
    const double tol = 1e-12 * std::max(1.0, st.sum_half_ysq);
    if (d < -tol) {
      throw InternalConsistencyError("negative segment cost beyond rounding tolerance");
    }
    d = 0.0;
  }
  return d;
}

// Cost-model adaptor used by the solvers.
class Ar1Cost {
 public:
  using State = Ar1CostState;

  explicit Ar1Cost(Ar1Params params) : gamma_(params.gamma()) {}

  State init(double y) const { return ar1_cost_init(y, gamma_); }
  void extend(State& st, double y) const { ar1_cost_extend(st, y); }
  double value(const State& st) const { return ar1_cost_value(st); }
  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

}  // namespace l0spike

#endif  // L0SPIKE_AR1_COST_HPP
