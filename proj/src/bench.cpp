#include "l0spike/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "l0spike/errors.hpp"
#include "l0spike/simulate.hpp"
#include "l0spike/solver.hpp"

namespace l0spike {

namespace {

using Clock = std::chrono::steady_clock;

double timed_solve(const FluorescenceTrace& trace, const Ar1Cost& model, Penalty penalty,
                   Algorithm algorithm, int warmup, int repetitions,
                   ChangepointSolution& solution_out) {
  const auto run = [&] {
    return algorithm == Algorithm::op ? solve_op(trace, model, penalty)
                                      : solve_pelt(trace, model, penalty);
  };
  for (int i = 0; i < warmup; ++i) solution_out = run();
  std::vector<double> times(repetitions);
  for (int i = 0; i < repetitions; ++i) {
    const auto start = Clock::now();
    solution_out = run();
    times[i] = std::chrono::duration<double>(Clock::now() - start).count();
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

}  // namespace

double BenchReport::mean_time(const std::string& algorithm, int t_len, double theta) const {
  double sum = 0.0;
  int n = 0;
  for (const BenchRow& row : rows) {
    if (row.algorithm == algorithm && row.t_len == t_len && row.theta == theta) {
      sum += row.wall_time_s;
      ++n;
    }
  }
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / n;
}

BenchReport run_bench(const BenchConfig& config) {
  if (config.lengths.empty() || config.thetas.empty()) {
    throw Error("benchmark grid must include at least one length and one rate");
  }
  if (!std::is_sorted(config.lengths.begin(), config.lengths.end())) {
    throw Error("benchmark lengths must be ascending");
  }
  if (config.seeds < 1 || config.repetitions < 1 || config.warmup < 0) {
    throw Error("invalid benchmark repetition counts");
  }

  const Ar1Cost model{Ar1Params(config.gamma)};
  const Penalty penalty(config.lambda);
  BenchReport report;

  std::uint64_t seed = config.base_seed;
  for (int t_len : config.lengths) {
    for (double theta : config.thetas) {
      for (int s = 0; s < config.seeds; ++s, ++seed) {
        SimConfig sim;
        sim.t_len = t_len;
        sim.gammas = {config.gamma};
        sim.sigma = config.sigma;
        sim.theta = theta;
        sim.seed = seed;
        const SimulatedTrace data = simulate(sim);

        ChangepointSolution sol;
        if (config.run_op) {
          const double t = timed_solve(data.trace, model, penalty, Algorithm::op,
                                       config.warmup, config.repetitions, sol);
          // OP considers every tau < s at step s.
          report.rows.push_back(BenchRow{"op", t_len, theta, seed, t,
                                         0.5 * (t_len + 1.0), static_cast<double>(t_len),
                                         sol.optimal_objective});
        }
        if (config.run_pelt) {
          const double t = timed_solve(data.trace, model, penalty, Algorithm::pelt,
                                       config.warmup, config.repetitions, sol);
          double sum = 0.0;
          double max = 0.0;
          for (int size : sol.pruning_set_sizes) {
            sum += size;
            max = std::max(max, static_cast<double>(size));
          }
          report.rows.push_back(BenchRow{"pelt", t_len, theta, seed, t,
                                         sum / sol.pruning_set_sizes.size(), max,
                                         sol.optimal_objective});
        }
      }
    }
  }
  return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
  out << "algorithm,T,theta,seed,wall_time_s,mean_pruned_set,max_pruned_set\n";
  char line[256];
  for (const BenchRow& row : report.rows) {
    std::snprintf(line, sizeof(line), "%s,%d,%.17g,%llu,%.17g,%.17g,%.17g\n",
                  row.algorithm.c_str(), row.t_len, row.theta,
                  static_cast<unsigned long long>(row.seed), row.wall_time_s,
                  row.mean_pruned_set, row.max_pruned_set);
    out << line;
  }
}

std::string format_bench_table(const BenchReport& report) {
  // Aggregate rows into (algorithm, T, theta) cells.
  struct Cell {
    std::string algorithm;
    int t_len;
    double theta;
    double sum = 0.0, sum_sq = 0.0;
    int n = 0;
  };
  std::vector<Cell> cells;
  for (const BenchRow& row : report.rows) {
    Cell* cell = nullptr;
    for (Cell& c : cells) {
      if (c.algorithm == row.algorithm && c.t_len == row.t_len && c.theta == row.theta) {
        cell = &c;
        break;
      }
    }
    if (cell == nullptr) {
      cells.push_back(Cell{row.algorithm, row.t_len, row.theta});
      cell = &cells.back();
    }
    cell->sum += row.wall_time_s;
    cell->sum_sq += row.wall_time_s * row.wall_time_s;
    cell->n += 1;
  }

  std::ostringstream out;
  out << "algorithm        T      theta   mean_time_s     sd_time_s\n";
  char line[160];
  for (const Cell& c : cells) {
    const double mean = c.sum / c.n;
    const double var = std::max(0.0, c.sum_sq / c.n - mean * mean);
    std::snprintf(line, sizeof(line), "%-9s %8d %10.4g %13.6g %13.6g\n", c.algorithm.c_str(),
                  c.t_len, c.theta, mean, std::sqrt(var));
    out << line;
  }
  return out.str();
}

}  // namespace l0spike
