#include "l0spike/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "l0spike/reconstruct.hpp"

namespace l0spike {

namespace {

double ar1_segment_cost(const std::vector<double>& y, int a, int b, double gamma) {
  Ar1CostState st = ar1_cost_init(y[a - 1], gamma);
  for (int t = a + 1; t <= b; ++t) ar1_cost_extend(st, y[t - 1]);
  return ar1_cost_value(st);
}

CostModel squared_decay_model(const CostModel& model) {
  return std::visit(
      [](const auto& m) -> CostModel {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Ar1Cost>) {
          return Ar1Cost(Ar1Params(m.gamma() * m.gamma()));
        } else if constexpr (std::is_same_v<M, InterceptCost>) {
          return InterceptCost(Ar1Params(m.gamma() * m.gamma()));
        } else {
          // Heuristic carry-over of the AR(1) rule: square each coefficient.
          std::vector<double> squared = m.params().gammas();
          for (double& g : squared) g *= g;
          return ArpCost(ArpParams(std::move(squared)));
        }
      },
      model);
}

}  // namespace

GammaEstimate estimate_gamma(const FluorescenceTrace& trace, int a, int b, double tol) {
  validate_trace(trace);
  const int t_final = static_cast<int>(trace.size());
  if (a < 1 || b > t_final || a >= b) {
    if (b - a < 1) throw DegenerateSegmentError("segment must contain at least two samples");
    throw DegenerateSegmentError("segment bounds out of range");
  }
  if (!(tol > 0.0)) throw Error("tolerance must be positive");

  const double lo_bound = 1e-6;
  const double hi_bound = 1.0 - 1e-6;
  const auto objective = [&](double g) { return ar1_segment_cost(trace.values, a, b, g); };

  // Coarse scan to pick the bracket; the cost is only empirically unimodal
  // in gamma, so golden-section alone could lock onto a local minimum.
  const int grid_points = 64;
  int best_idx = 0;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> grid(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    grid[i] = lo_bound + (hi_bound - lo_bound) * i / (grid_points - 1);
    const double v = objective(grid[i]);
    if (v < best_val) {
      best_val = v;
      best_idx = i;
    }
  }
  double lo = grid[std::max(0, best_idx - 1)];
  double hi = grid[std::min(grid_points - 1, best_idx + 1)];

  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = objective(x2);
    }
  }
  const double gamma_hat = std::clamp(0.5 * (lo + hi), lo_bound, hi_bound);
  return GammaEstimate{gamma_hat, objective(gamma_hat), a, b};
}

CvReport cross_validate(const FluorescenceTrace& trace, const CostModel& model,
                        const std::vector<double>& lambdas) {
  validate_trace(trace);
  const int t_final = static_cast<int>(trace.size());
  if (t_final < 4) throw TraceTooShortError("cross-validation needs at least 4 timesteps");
  if (lambdas.empty()) throw Error("lambda grid must not be empty");
  if (!std::is_sorted(lambdas.begin(), lambdas.end())) {
    throw Error("lambda grid must be ascending");
  }

  const std::size_t m_len = lambdas.size();
  const CostModel train_model = squared_decay_model(model);

  CvReport report;
  report.lambdas = lambdas;
  report.cv_mse.resize(m_len);
  report.cv_se.resize(m_len);
  report.fold_mse.assign(m_len, {0.0, 0.0});
  report.spike_counts.resize(m_len);

  for (int fold = 0; fold < 2; ++fold) {
    // Fold 0 trains on odd timesteps {1, 3, ..}, fold 1 on even ones.
    FluorescenceTrace train;
    std::vector<int> train_index_of_time(t_final + 2, -1);
    for (int t = fold == 0 ? 1 : 2; t <= t_final; t += 2) {
      train_index_of_time[t] = static_cast<int>(train.values.size());
      train.values.push_back(trace.values[t - 1]);
    }

    for (std::size_t m = 0; m < m_len; ++m) {
      const ChangepointSolution sol = solve(train, train_model, Penalty(lambdas[m]));
      const SpikeFit fit = reconstruct(train, sol.changepoints, train_model);
      double sum = 0.0;
      int n_pred = 0;
      for (int t = fold == 0 ? 2 : 1; t <= t_final; t += 2) {
        if (t - 1 < 1 || t + 1 > t_final) continue;  // no bracketing train pair
        const int i1 = train_index_of_time[t - 1];
        const int i2 = train_index_of_time[t + 1];
        const double pred = 0.5 * (fit.predicted(i1) + fit.predicted(i2));
        const double err = trace.values[t - 1] - pred;
        sum += err * err;
        ++n_pred;
      }
      report.fold_mse[m][fold] = sum / n_pred;
    }
  }

  for (std::size_t m = 0; m < m_len; ++m) {
    const double mean = 0.5 * (report.fold_mse[m][0] + report.fold_mse[m][1]);
    report.cv_mse[m] = mean;
    const double d0 = report.fold_mse[m][0] - mean;
    const double d1 = report.fold_mse[m][1] - mean;
    report.cv_se[m] = std::sqrt(0.5 * (d0 * d0 + d1 * d1));
  }

  std::size_t m_hat = 0;
  for (std::size_t m = 1; m < m_len; ++m) {
    if (report.cv_mse[m] < report.cv_mse[m_hat]) m_hat = m;
  }
  report.selected_min = m_hat;
  const double bar = report.cv_mse[m_hat] + report.cv_se[m_hat];
  std::size_t m_star = m_hat;
  for (std::size_t m = 0; m < m_len; ++m) {
    if (report.cv_mse[m] <= bar) m_star = m;
  }
  report.selected_one_se = m_star;

  for (std::size_t m = 0; m < m_len; ++m) {
    const ChangepointSolution sol = solve(trace, model, Penalty(lambdas[m]));
    report.spike_counts[m] = sol.num_changepoints();
  }
  return report;
}

CvReport cross_validate(const FluorescenceTrace& trace, Ar1Params params,
                        const std::vector<double>& lambdas) {
  return cross_validate(trace, CostModel(Ar1Cost(params)), lambdas);
}

std::vector<double> default_lambda_grid(const FluorescenceTrace& trace, int points) {
  validate_trace(trace);
  if (points < 1) throw Error("grid needs at least one point");
  double mean = 0.0;
  for (double v : trace.values) mean += v;
  mean /= trace.size();
  double var = 0.0;
  for (double v : trace.values) var += (v - mean) * (v - mean);
  var /= trace.size();
  const double scale = std::max(var, 1e-12);

  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = scale;
    return grid;
  }
  const double log_lo = std::log10(1e-4 * scale);
  const double log_hi = std::log10(1e2 * scale);
  for (int i = 0; i < points; ++i) {
    grid[i] = std::pow(10.0, log_lo + (log_hi - log_lo) * i / (points - 1));
  }
  return grid;
}

std::vector<LambdaPathEntry> lambda_path(const FluorescenceTrace& trace, const CostModel& model,
                                         const std::vector<double>& lambdas) {
  if (!std::is_sorted(lambdas.begin(), lambdas.end())) {
    throw Error("lambda grid must be ascending");
  }
  std::vector<LambdaPathEntry> path;
  path.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const ChangepointSolution sol = solve(trace, model, Penalty(lambda));
    const SpikeFit fit = reconstruct(trace, sol.changepoints, model);
    path.push_back(LambdaPathEntry{lambda, fit.num_spikes(), sol.optimal_objective,
                                   fit.spike_times});
  }
  return path;
}

LambdaForKResult find_lambda_for_k(const FluorescenceTrace& trace, const CostModel& model,
                                   int target_k) {
  validate_trace(trace);
  if (target_k < 0) throw Error("target spike count must be nonnegative");

  const auto count = [&](double lambda) {
    return solve(trace, model, Penalty(lambda)).num_changepoints();
  };

  double hi = 1.0;
  int k_hi = count(hi);
  while (k_hi > target_k) {
    hi *= 8.0;
    k_hi = count(hi);
  }
  if (k_hi == target_k) {
    return LambdaForKResult{true, hi, k_hi, hi, k_hi, hi, k_hi};
  }

  double lo = std::min(1.0, hi);
  int k_lo = count(lo);
  while (k_lo < target_k && lo > 1e-14) {
    lo /= 8.0;
    k_lo = count(lo);
  }
  if (k_lo == target_k) {
    return LambdaForKResult{true, lo, k_lo, lo, k_lo, lo, k_lo};
  }
  if (k_lo < target_k) {
    // Even a vanishing penalty cannot reach the target; report the densest fit.
    return LambdaForKResult{false, lo, k_lo, lo, k_lo, hi, k_hi};
  }

  // Invariant: k(lo) > target_k > k(hi).
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * std::max(1.0, lo); ++iter) {
    const double mid = 0.5 * (lo + hi);
    const int k_mid = count(mid);
    if (k_mid == target_k) {
      return LambdaForKResult{true, mid, k_mid, lo, k_lo, hi, k_hi};
    }
    if (k_mid > target_k) {
      lo = mid;
      k_lo = k_mid;
    } else {
      hi = mid;
      k_hi = k_mid;
    }
  }
  // The count jumps past the target: report both bracketing fits, choosing
  // the closer count (the sparser fit on a tie).
  const bool pick_hi = (k_lo - target_k) >= (target_k - k_hi);
  return LambdaForKResult{false, pick_hi ? hi : lo, pick_hi ? k_hi : k_lo,
                          lo, k_lo, hi, k_hi};
}

}  // namespace l0spike
