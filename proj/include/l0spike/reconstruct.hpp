#ifndef L0SPIKE_RECONSTRUCT_HPP
#define L0SPIKE_RECONSTRUCT_HPP

#include <utility>
#include <vector>

#include "l0spike/solution.hpp"
#include "l0spike/solver.hpp"
#include "l0spike/trace.hpp"

namespace l0spike {

// Given changepoints tau_1 < .. < tau_k, fit each segment [tau_j + 1, tau_{j+1}]
// independently: the segment head takes the least-squares value and the rest
// follows the decay recursion exactly. Spike events are the segment heads
// tau_j + 1 for j >= 1 (never t = 1).
SpikeFit reconstruct_ar1(const FluorescenceTrace& trace, const std::vector<int>& changepoints,
                         Ar1Params params);

// Per-segment (c_head, beta0) from the two-parameter least squares; the
// intercepts field holds the fitted baseline, constant within segments.
SpikeFit reconstruct_intercept(const FluorescenceTrace& trace,
                               const std::vector<int>& changepoints, Ar1Params params);

// Per segment the first min(p, length) values are free-fit and the rest
// follows the order-p recursion.
SpikeFit reconstruct_arp(const FluorescenceTrace& trace, const std::vector<int>& changepoints,
                         const ArpParams& params);

SpikeFit reconstruct(const FluorescenceTrace& trace, const std::vector<int>& changepoints,
                     const CostModel& model);

struct PositivityReport {
  bool all_nonnegative = true;
  std::vector<std::pair<int, double>> violations;  // (spike time, negative magnitude)
};

// Flags spike events with a negative fitted magnitude. An empty violation
// list means the unconstrained solution is feasible for the
// positivity-constrained problem as well.
PositivityReport positivity_audit(const SpikeFit& fit);

// 1/2 sum (y_t - prediction_t)^2 + lambda * k, recomputed from the fit.
double fit_objective(const FluorescenceTrace& trace, const SpikeFit& fit, Penalty penalty);

}  // namespace l0spike

#endif  // L0SPIKE_RECONSTRUCT_HPP
