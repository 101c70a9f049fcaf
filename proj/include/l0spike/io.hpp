#ifndef L0SPIKE_IO_HPP
#define L0SPIKE_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "l0spike/metrics.hpp"
#include "l0spike/simulate.hpp"
#include "l0spike/solution.hpp"
#include "l0spike/trace.hpp"
#include "l0spike/tuning.hpp"

namespace l0spike {

// Formats with 17 significant digits so the value round-trips exactly.
std::string format_double(double value);

// Reads a fluorescence trace from CSV: either a single column (with a
// header or headerless), or any CSV whose header names a column y.
FluorescenceTrace read_trace_csv(const std::string& path);

// Columns t,y,c_true,z_true.
void write_sim_csv(std::ostream& out, const SimulatedTrace& sim);

// Columns t,y,c_hat,spike,spike_magnitude[,beta0].
void write_fit_csv(std::ostream& out, const FluorescenceTrace& trace, const SpikeFit& fit);

// Spike-train/calcium content extracted from one of this tool's CSV files
// (a fit CSV, a simulation CSV, or a bare spike-time list).
struct TrainFile {
  SpikeTrain train;
  std::vector<double> calcium;                      // empty when absent
  std::vector<std::pair<int, double>> magnitudes;   // fit files only
};

TrainFile read_train_csv(const std::string& path);

// Columns lambda,cv_mse,cv_se,fold1_mse,fold2_mse,spike_count.
void write_cv_csv(std::ostream& out, const CvReport& report);

}  // namespace l0spike

#endif  // L0SPIKE_IO_HPP
