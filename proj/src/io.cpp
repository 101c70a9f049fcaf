#include "l0spike/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "l0spike/errors.hpp"

namespace l0spike {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::string trimmed(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

bool parse_double(const std::string& field, double& out) {
  const std::string t = trimmed(field);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

struct CsvTable {
  std::vector<std::string> header;  // empty when the file is headerless
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  CsvTable table;
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trimmed(line).empty()) continue;
    const std::vector<std::string> fields = split_line(line);
    if (first) {
      first = false;
      double ignored;
      if (!parse_double(fields[0], ignored)) {
        for (const std::string& f : fields) table.header.push_back(trimmed(f));
        continue;
      }
    }
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!parse_double(fields[i], row[i])) {
        throw Error(path + ": cannot parse field \"" + trimmed(fields[i]) + "\" on line " +
                    std::to_string(line_no));
      }
    }
    if (!table.header.empty() && row.size() != table.header.size()) {
      throw Error(path + ": line " + std::to_string(line_no) + " has " +
                  std::to_string(row.size()) + " fields, header has " +
                  std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

FluorescenceTrace read_trace_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.rows.empty()) throw EmptyTraceError();
  int col = 0;
  if (!table.header.empty()) {
    col = table.column("y");
    if (col < 0) {
      if (table.header.size() == 1) {
        col = 0;
      } else {
        throw Error(path + ": no column named y");
      }
    }
  } else if (table.rows[0].size() != 1) {
    throw Error(path + ": headerless input must have a single column");
  }
  FluorescenceTrace trace;
  trace.values.reserve(table.rows.size());
  for (const auto& row : table.rows) trace.values.push_back(row[col]);
  return trace;
}

void write_sim_csv(std::ostream& out, const SimulatedTrace& sim) {
  out << "t,y,c_true,z_true\n";
  for (std::size_t i = 0; i < sim.trace.size(); ++i) {
    out << (i + 1) << ',' << format_double(sim.trace.values[i]) << ','
        << format_double(sim.true_calcium[i]) << ',' << sim.true_spike_counts[i] << '\n';
  }
}

void write_fit_csv(std::ostream& out, const FluorescenceTrace& trace, const SpikeFit& fit) {
  const bool with_intercept = !fit.intercepts.empty();
  out << "t,y,c_hat,spike,spike_magnitude";
  if (with_intercept) out << ",beta0";
  out << '\n';
  std::size_t next_spike = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const int t = static_cast<int>(i) + 1;
    double magnitude = 0.0;
    int spike = 0;
    if (next_spike < fit.spike_times.size() && fit.spike_times[next_spike] == t) {
      spike = 1;
      magnitude = fit.spike_magnitudes[next_spike];
      ++next_spike;
    }
    out << t << ',' << format_double(trace.values[i]) << ',' << format_double(fit.calcium[i])
        << ',' << spike << ',' << format_double(magnitude);
    if (with_intercept) out << ',' << format_double(fit.intercepts[i]);
    out << '\n';
  }
}

TrainFile read_train_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.rows.empty()) throw Error(path + ": empty file");
  TrainFile result;

  const int spike_col = table.column("spike");
  const int z_col = table.column("z_true");
  if (spike_col >= 0 || z_col >= 0) {
    const int horizon = static_cast<int>(table.rows.size());
    const int mag_col = table.column("spike_magnitude");
    const int calcium_col = table.column(spike_col >= 0 ? "c_hat" : "c_true");
    std::vector<int> times;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const int t = static_cast<int>(i) + 1;
      if (spike_col >= 0) {
        if (table.rows[i][spike_col] != 0.0) {
          times.push_back(t);
          if (mag_col >= 0) result.magnitudes.emplace_back(t, table.rows[i][mag_col]);
        }
      } else if (table.rows[i][z_col] > 0.0) {
        times.push_back(t);
        result.magnitudes.emplace_back(t, table.rows[i][z_col]);
      }
      if (calcium_col >= 0) result.calcium.push_back(table.rows[i][calcium_col]);
    }
    result.train = make_spike_train(std::move(times), horizon);
    return result;
  }

  // Bare spike list: one column of spike times; horizon = largest time.
  if (!table.header.empty() && table.header.size() != 1) {
    throw Error(path + ": expected a fit CSV, a simulation CSV, or a single spike-time column");
  }
  std::vector<int> times;
  int horizon = 0;
  for (const auto& row : table.rows) {
    const int t = static_cast<int>(row[0]);
    if (t < 1 || row[0] != t) throw Error(path + ": spike times must be positive integers");
    times.push_back(t);
    horizon = std::max(horizon, t);
  }
  result.train = make_spike_train(std::move(times), horizon);
  return result;
}

void write_cv_csv(std::ostream& out, const CvReport& report) {
  out << "lambda,cv_mse,cv_se,fold1_mse,fold2_mse,spike_count\n";
  for (std::size_t m = 0; m < report.lambdas.size(); ++m) {
    out << format_double(report.lambdas[m]) << ',' << format_double(report.cv_mse[m]) << ','
        << format_double(report.cv_se[m]) << ',' << format_double(report.fold_mse[m][0]) << ','
        << format_double(report.fold_mse[m][1]) << ',' << report.spike_counts[m] << '\n';
  }
}

}  // namespace l0spike
