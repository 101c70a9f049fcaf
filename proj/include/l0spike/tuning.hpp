#ifndef L0SPIKE_TUNING_HPP
#define L0SPIKE_TUNING_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "l0spike/solver.hpp"
#include "l0spike/trace.hpp"

namespace l0spike {

struct GammaEstimate {
  double gamma_hat = 0.0;  // in (0, 1)
  double residual = 0.0;   // segment cost at gamma_hat
  int a = 0;               // 1-indexed segment bounds
  int b = 0;
};

// Estimates the decay rate from a user-selected segment y_{a:b} that shows
// clean exponential decay, by minimizing the segment cost over gamma.
// Seeded with a 64-point grid scan, then refined by golden-section search
// to bracket width <= tol; returns the bracket midpoint.
GammaEstimate estimate_gamma(const FluorescenceTrace& trace, int a, int b, double tol = 1e-8);

struct CvReport {
  std::vector<double> lambdas;
  std::vector<double> cv_mse;                   // mean over the two folds
  std::vector<double> cv_se;                    // standard error over folds
  std::vector<std::array<double, 2>> fold_mse;  // per-fold test MSE
  std::size_t selected_min = 0;                 // argmin of cv_mse
  std::size_t selected_one_se = 0;              // largest index within one SE of the min
  std::vector<int> spike_counts;                // full-data spike events per lambda
};

// Two-fold odd/even cross-validation over an ascending lambda grid. Each
// fold trains on every other timestep with the decay squared (one training
// step spans two original timesteps) and scores test points against the
// average of the two adjacent fitted values. Test timesteps without two
// in-range neighbors (the boundary) are skipped, and each fold's MSE
// divides by the number of predictions it actually made.
CvReport cross_validate(const FluorescenceTrace& trace, const CostModel& model,
                        const std::vector<double>& lambdas);
CvReport cross_validate(const FluorescenceTrace& trace, Ar1Params params,
                        const std::vector<double>& lambdas);

// 50 log-spaced points spanning [1e-4, 1e2] times the sample variance.
std::vector<double> default_lambda_grid(const FluorescenceTrace& trace, int points = 50);

struct LambdaPathEntry {
  double lambda = 0.0;
  int num_spikes = 0;
  double objective = 0.0;
  std::vector<int> spike_times;
};

std::vector<LambdaPathEntry> lambda_path(const FluorescenceTrace& trace, const CostModel& model,
                                         const std::vector<double>& lambdas);

struct LambdaForKResult {
  bool exact = false;      // a lambda with exactly target_k spike events was found
  double lambda = 0.0;     // the exact lambda, or the closest achievable one
  int num_spikes = 0;
  // Bracketing fits when the target count is skipped over: lower.lambda has
  // more spikes than the target, upper.lambda has fewer.
  double lower_lambda = 0.0;
  int lower_k = 0;
  double upper_lambda = 0.0;
  int upper_k = 0;
};

// Bisection on lambda exploiting the monotone non-increasing spike count
// k(lambda).
LambdaForKResult find_lambda_for_k(const FluorescenceTrace& trace, const CostModel& model,
                                   int target_k);

}  // namespace l0spike

#endif  // L0SPIKE_TUNING_HPP
