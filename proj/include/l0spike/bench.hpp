#ifndef L0SPIKE_BENCH_HPP
#define L0SPIKE_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace l0spike {

struct BenchConfig {
  std::vector<int> lengths;    // ascending trace lengths T
  std::vector<double> thetas;  // firing rates
  double gamma = 0.998;
  double sigma = 0.15;
  double lambda = 1.0;
  int seeds = 10;          // simulated datasets per cell
  int warmup = 1;          // untimed solves per measurement
  int repetitions = 1;     // timed solves per measurement; median reported
  std::uint64_t base_seed = 1;
  bool run_op = true;
  bool run_pelt = true;
};

struct BenchRow {
  std::string algorithm;  // "op" or "pelt"
  int t_len = 0;
  double theta = 0.0;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  double mean_pruned_set = 0.0;  // mean candidate-set size over steps
  double max_pruned_set = 0.0;
  double objective = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  // Mean wall time over seeds for one (algorithm, T, theta) cell; NaN when
  // the cell was not run.
  double mean_time(const std::string& algorithm, int t_len, double theta) const;
};

// Simulates each (T, theta, seed) cell once and times the solvers on it;
// timing covers the solve call only, not simulation or I/O. Cells run
// sequentially so measurements do not disturb each other.
BenchReport run_bench(const BenchConfig& config);

// CSV columns: algorithm,T,theta,seed,wall_time_s,mean_pruned_set,max_pruned_set.
void write_bench_csv(const BenchReport& report, std::ostream& out);

std::string format_bench_table(const BenchReport& report);

}  // namespace l0spike

#endif  // L0SPIKE_BENCH_HPP
