#ifndef L0SPIKE_INTERCEPT_COST_HPP
#define L0SPIKE_INTERCEPT_COST_HPP

#include <algorithm>
#include <cmath>

#include "l0spike/errors.hpp"
#include "l0spike/trace.hpp"

namespace l0spike {

// Sufficient statistics for the two-parameter segment cost
//
//   D(y_{a:b}) = min_{c, beta0}  1/2 * sum_{t=a}^{b} (y_t - beta0 - c * gamma^(t-a))^2,
//
// i.e. exponential decay on top of a per-segment constant baseline. Both
// geometric sums use closed forms so the right extension stays O(1).
struct InterceptCostState {
  double gamma;
  long long n;
  double sum_y;
  double sum_ysq;
  double sum_y_gpow;  // sum y_t * gamma^(t-a)
  double sum_gpow;    // sum gamma^(t-a)
  double sum_g2;      // sum gamma^(2(t-a))
  double cur_gpow;    // gamma^(n-1)
};

struct InterceptFitValues {
  double cost;    // D(y_{a:b})
  double c_head;  // fitted calcium at the segment head
  double beta0;   // fitted baseline
};

inline InterceptCostState intercept_cost_init(double y_a, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) throw InvalidGammaError(gamma);
  if (!std::isfinite(y_a)) throw NonFiniteValueError(1);
  return InterceptCostState{gamma, 1, y_a, y_a * y_a, y_a, 1.0, 1.0, 1.0};
}

inline void intercept_cost_extend(InterceptCostState& st, double y_next) {
  if (!std::isfinite(y_next)) throw NonFiniteValueError(static_cast<std::size_t>(st.n) + 1);
  st.n += 1;
  st.cur_gpow *= st.gamma;
  st.sum_y += y_next;
  st.sum_ysq += y_next * y_next;
  st.sum_y_gpow += y_next * st.cur_gpow;
  const double gpow_np1 = st.cur_gpow * st.gamma;  // gamma^n
  st.sum_gpow = (1.0 - gpow_np1) / (1.0 - st.gamma);
  st.sum_g2 = (1.0 - gpow_np1 * gpow_np1) / (1.0 - st.gamma * st.gamma);
}

inline InterceptFitValues intercept_cost_value(const InterceptCostState& st) {
  const double n = static_cast<double>(st.n);
  const double det = n * st.sum_g2 - st.sum_gpow * st.sum_gpow;
  double beta0, c;
  if (st.n == 1 || det < 1e-13 * n * st.sum_g2) {
    // Singular (n = 1) or numerically collinear regressors: minimum-norm
    // solution along the flat direction beta0 + g_bar * c = y_bar.
    const double g_bar = st.sum_gpow / n;
    const double y_bar = st.sum_y / n;
    const double denom = 1.0 + g_bar * g_bar;
    beta0 = y_bar / denom;
    c = y_bar * g_bar / denom;
  } else {
    c = (n * st.sum_y_gpow - st.sum_gpow * st.sum_y) / det;
    beta0 = (st.sum_y * st.sum_g2 - st.sum_gpow * st.sum_y_gpow) / det;
  }
  double d = 0.5 * (st.sum_ysq + n * beta0 * beta0 + c * c * st.sum_g2 +
                    2.0 * beta0 * c * st.sum_gpow - 2.0 * beta0 * st.sum_y -
                    2.0 * c * st.sum_y_gpow);
  if (d < 0.0) {
    const double tol = 1e-12 * std::max(1.0, 0.5 * st.sum_ysq);
    if (d < -tol) {
      throw InternalConsistencyError("negative segment cost beyond rounding tolerance");
    }
    d = 0.0;
  }
  return InterceptFitValues{d, c, beta0};
}

class InterceptCost {
 public:
  using State = InterceptCostState;

  explicit InterceptCost(Ar1Params params) : gamma_(params.gamma()) {}

  State init(double y) const { return intercept_cost_init(y, gamma_); }
  void extend(State& st, double y) const { intercept_cost_extend(st, y); }
  double value(const State& st) const { return intercept_cost_value(st).cost; }
  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

}  // namespace l0spike

#endif  // L0SPIKE_INTERCEPT_COST_HPP
