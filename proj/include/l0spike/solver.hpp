#ifndef L0SPIKE_SOLVER_HPP
#define L0SPIKE_SOLVER_HPP

#include <algorithm>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "l0spike/ar1_cost.hpp"
#include "l0spike/arp_cost.hpp"
#include "l0spike/errors.hpp"
#include "l0spike/intercept_cost.hpp"
#include "l0spike/solution.hpp"
#include "l0spike/trace.hpp"

namespace l0spike {

enum class Algorithm { op, pelt, auto_select };

// Accepts "op", "pelt", or "auto".
Algorithm parse_algorithm(std::string_view name);

using CostModel = std::variant<Ar1Cost, InterceptCost, ArpCost>;

namespace detail {

inline std::vector<int> backtrack_changepoints(const std::vector<int>& back, int t_final) {
  std::vector<int> cps;
  for (int s = back[t_final]; s > 0; s = back[s]) cps.push_back(s);
  std::reverse(cps.begin(), cps.end());
  return cps;
}

}  // namespace detail

// Optimal partitioning: exact minimization of sum_j D(segment_j) + lambda*k
// via the last-changepoint recursion
//
//   F(0) = -lambda,  F(s) = min_{0 <= tau < s} { F(tau) + D(y_{(tau+1):s}) + lambda }.
//
// One cost state is kept per candidate tau and extended as s advances, so
// each of the Theta(T^2) cost evaluations is O(1) (O(p^2) for AR(p)).
// Argmin ties break toward the smallest tau.
template <typename Model>
ChangepointSolution solve_op(const FluorescenceTrace& trace, const Model& model,
                             Penalty penalty) {
  validate_trace(trace);
  const std::vector<double>& y = trace.values;
  const int t_final = static_cast<int>(y.size());
  const double lambda = penalty.lambda();

  std::vector<double> f(t_final + 1);
  std::vector<int> back(t_final + 1, 0);
  f[0] = -lambda;

  std::vector<typename Model::State> states;  // states[tau] covers (tau+1 .. s)
  states.reserve(t_final);

  for (int s = 1; s <= t_final; ++s) {
    const double y_s = y[s - 1];
    for (auto& st : states) model.extend(st, y_s);
    states.push_back(model.init(y_s));  // candidate tau = s - 1

    double best = std::numeric_limits<double>::infinity();
    int best_tau = 0;
    for (int tau = 0; tau < s; ++tau) {
      const double total = f[tau] + model.value(states[tau]) + lambda;
      if (total < best) {
        best = total;
        best_tau = tau;
      }
    }
    f[s] = best;
    back[s] = best_tau;
  }

  ChangepointSolution solution;
  solution.changepoints = detail::backtrack_changepoints(back, t_final);
  solution.optimal_objective = f[t_final];
  solution.f_values = std::move(f);
  return solution;
}

// PELT: the same recursion restricted to the surviving candidate set
//
//   E_{s+1} = { tau in E_s : F(tau) + D(y_{(tau+1):s}) < F(s) } united with {s}.
//
// A pruned candidate can never again be the strict minimizer, so the
// objective matches solve_op exactly; with lambda > 0 every argmin survives
// the strict inequality, making the two solvers agree term by term in
// floating point. |E_s| is recorded per step for diagnostics.
template <typename Model>
ChangepointSolution solve_pelt(const FluorescenceTrace& trace, const Model& model,
                               Penalty penalty) {
  validate_trace(trace);
  const std::vector<double>& y = trace.values;
  const int t_final = static_cast<int>(y.size());
  const double lambda = penalty.lambda();

  std::vector<double> f(t_final + 1);
  std::vector<int> back(t_final + 1, 0);
  f[0] = -lambda;

  struct Candidate {
    int tau;
    typename Model::State state;
  };
  std::vector<Candidate> candidates;  // ascending tau
  std::vector<double> totals;
  std::vector<int> set_sizes;
  set_sizes.reserve(t_final);

  for (int s = 1; s <= t_final; ++s) {
    const double y_s = y[s - 1];
    for (auto& cand : candidates) model.extend(cand.state, y_s);
    candidates.push_back(Candidate{s - 1, model.init(y_s)});
    set_sizes.push_back(static_cast<int>(candidates.size()));

    double best = std::numeric_limits<double>::infinity();
    int best_tau = 0;
    totals.clear();
    for (const auto& cand : candidates) {
      const double partial = f[cand.tau] + model.value(cand.state);
      totals.push_back(partial);
      if (partial + lambda < best) {
        best = partial + lambda;
        best_tau = cand.tau;
      }
    }
    f[s] = best;
    back[s] = best_tau;

    std::size_t kept = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (totals[i] < best) {
        if (kept != i) candidates[kept] = std::move(candidates[i]);
        ++kept;
      }
    }
    candidates.resize(kept);
  }

  ChangepointSolution solution;
  solution.changepoints = detail::backtrack_changepoints(back, t_final);
  solution.optimal_objective = f[t_final];
  solution.f_values = std::move(f);
  solution.pruning_set_sizes = std::move(set_sizes);
  return solution;
}

// Runtime dispatch over cost model and algorithm; auto selects PELT.
ChangepointSolution solve(const FluorescenceTrace& trace, const CostModel& model,
                          Penalty penalty, Algorithm algorithm = Algorithm::auto_select);

}  // namespace l0spike

#endif  // L0SPIKE_SOLVER_HPP
