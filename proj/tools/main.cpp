// Command-line front end: simulate traces, fit spike trains, cross-validate
// the penalty, compare spike trains, and benchmark the solvers, all on CSV
// files.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "l0spike/bench.hpp"
#include "l0spike/io.hpp"
#include "l0spike/metrics.hpp"
#include "l0spike/reconstruct.hpp"
#include "l0spike/simulate.hpp"
#include "l0spike/solver.hpp"
#include "l0spike/tuning.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace l0spike;

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string field;
  while (std::getline(stream, field, ',')) {
    try {
      values.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw CLI::ValidationError("cannot parse number \"" + field + "\"");
    }
  }
  if (values.empty()) throw CLI::ValidationError("empty list");
  return values;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (double v : parse_double_list(text)) values.push_back(static_cast<int>(v));
  return values;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

void emit_json(const json& summary, const std::string& path) {
  if (path.empty()) {
    std::cout << summary.dump(2) << '\n';
  } else {
    write_file(path, summary.dump(2) + "\n");
  }
}

struct ModelFlags {
  std::string model = "ar1";
  double gamma = 0.0;
  std::string gammas_text;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "Cost model: ar1, intercept, or arp")
        ->check(CLI::IsMember({"ar1", "intercept", "arp"}))
        ->capture_default_str();
    auto* g = cmd->add_option("--gamma", gamma, "Decay rate in (0, 1) for ar1/intercept");
    auto* gs = cmd->add_option("--gammas", gammas_text, "Comma-separated decay coefficients for arp");
    g->excludes(gs);
    gs->excludes(g);
  }

  CostModel build() const {
    if (model == "arp") {
      if (gammas_text.empty()) throw CLI::ValidationError("--model arp requires --gammas");
      return ArpCost(ArpParams(parse_double_list(gammas_text)));
    }
    if (gamma <= 0.0 || gamma >= 1.0) {
      throw CLI::ValidationError("--gamma must be given and lie in (0, 1)");
    }
    if (model == "intercept") return InterceptCost(Ar1Params(gamma));
    return Ar1Cost(Ar1Params(gamma));
  }
};

json metadata_block(const json& params) {
  json meta;
  meta["parameters"] = params;
  meta["float_format"] = "%.17g";
  return meta;
}

int cmd_simulate(int t_len, double gamma, const std::string& gammas_text, double sigma,
                 double theta, std::uint64_t seed, double beta0, double beta1, double c_init,
                 const std::string& out_path) {
  SimConfig config;
  config.t_len = t_len;
  config.gammas = gammas_text.empty() ? std::vector<double>{gamma} : parse_double_list(gammas_text);
  config.sigma = sigma;
  config.theta = theta;
  config.seed = seed;
  config.beta0 = beta0;
  config.beta1 = beta1;
  config.c_init = c_init;

  const SimulatedTrace sim = simulate(config);
  std::ostringstream csv;
  write_sim_csv(csv, sim);
  write_file(out_path, csv.str());

  json params;
  params["T"] = t_len;
  params["gammas"] = config.gammas;
  params["sigma"] = sigma;
  params["theta"] = theta;
  params["seed"] = seed;
  params["beta0"] = beta0;
  params["beta1"] = beta1;
  params["c_init"] = c_init;
  json summary = metadata_block(params);
  summary["rng"] = kRngDescription;
  summary["output"] = out_path;
  summary["total_true_spikes"] = sim.true_spike_train.times.size();
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int cmd_fit(const std::string& input, const ModelFlags& model_flags,
            std::optional<double> lambda_opt, std::optional<int> target_spikes,
            const std::string& algorithm_name, const std::string& out_path,
            const std::string& summary_path) {
  const FluorescenceTrace trace = read_trace_csv(input);
  validate_trace(trace);
  const CostModel model = model_flags.build();
  const Algorithm algorithm = parse_algorithm(algorithm_name);

  json summary;
  json warnings = json::array();
  double lambda = 0.0;
  if (lambda_opt.has_value()) {
    lambda = *lambda_opt;
  } else {
    const LambdaForKResult found = find_lambda_for_k(trace, model, *target_spikes);
    lambda = found.lambda;
    if (!found.exact) {
      warnings.push_back("no lambda yields exactly " + std::to_string(*target_spikes) +
                         " spike events; using the closest achievable count");
      summary["target_spikes_brackets"] = {
          {"lower", {{"lambda", found.lower_lambda}, {"spikes", found.lower_k}}},
          {"upper", {{"lambda", found.upper_lambda}, {"spikes", found.upper_k}}}};
    }
  }

  const ChangepointSolution sol = solve(trace, model, Penalty(lambda), algorithm);
  const SpikeFit fit = reconstruct(trace, sol.changepoints, model);

  std::ostringstream csv;
  write_fit_csv(csv, trace, fit);
  write_file(out_path, csv.str());

  if (fit.num_spikes() > static_cast<int>(trace.size()) / 2) {
    warnings.push_back("more spike events than T/2; consider a larger lambda");
  }

  json params;
  params["input"] = input;
  params["model"] = model_flags.model;
  if (model_flags.model == "arp") {
    params["gammas"] = parse_double_list(model_flags.gammas_text);
  } else {
    params["gamma"] = model_flags.gamma;
  }
  params["algorithm"] = algorithm_name;
  summary.update(metadata_block(params));
  summary["lambda"] = lambda;
  summary["num_spikes"] = fit.num_spikes();
  summary["objective"] = sol.optimal_objective;
  summary["spike_times"] = fit.spike_times;
  if (model_flags.model == "ar1") {
    const PositivityReport audit = positivity_audit(fit);
    json violations = json::array();
    for (const auto& [t, magnitude] : audit.violations) {
      violations.push_back({{"t", t}, {"magnitude", magnitude}});
    }
    summary["positivity"] = {{"all_nonnegative", audit.all_nonnegative},
                             {"violations", violations}};
  }
  if (!warnings.empty()) summary["warnings"] = warnings;
  summary["output"] = out_path;
  emit_json(summary, summary_path);
  for (const auto& w : warnings) std::cerr << "warning: " << w.get<std::string>() << '\n';
  return 0;
}

int cmd_cv(const std::string& input, const ModelFlags& model_flags,
           const std::string& lambdas_text, int grid_points, const std::string& out_path,
           const std::string& summary_path) {
  const FluorescenceTrace trace = read_trace_csv(input);
  validate_trace(trace);
  const CostModel model = model_flags.build();

  std::vector<double> lambdas;
  if (!lambdas_text.empty()) {
    lambdas = parse_double_list(lambdas_text);
    if (!std::is_sorted(lambdas.begin(), lambdas.end())) {
      throw CLI::ValidationError("--lambdas must be ascending");
    }
  } else {
    lambdas = default_lambda_grid(trace, grid_points);
  }

  const CvReport report = cross_validate(trace, model, lambdas);
  if (!out_path.empty()) {
    std::ostringstream csv;
    write_cv_csv(csv, report);
    write_file(out_path, csv.str());
  }

  json params;
  params["input"] = input;
  params["model"] = model_flags.model;
  if (model_flags.model == "arp") {
    params["gammas"] = parse_double_list(model_flags.gammas_text);
  } else {
    params["gamma"] = model_flags.gamma;
  }
  json summary = metadata_block(params);
  summary["num_lambdas"] = report.lambdas.size();
  summary["selected_min"] = {{"index", report.selected_min},
                             {"lambda", report.lambdas[report.selected_min]},
                             {"cv_mse", report.cv_mse[report.selected_min]},
                             {"spike_count", report.spike_counts[report.selected_min]}};
  summary["selected_one_se"] = {{"index", report.selected_one_se},
                                {"lambda", report.lambdas[report.selected_one_se]},
                                {"cv_mse", report.cv_mse[report.selected_one_se]},
                                {"spike_count", report.spike_counts[report.selected_one_se]}};
  if (!out_path.empty()) summary["output"] = out_path;
  emit_json(summary, summary_path);
  return 0;
}

int cmd_metrics(const std::string& path_a, const std::string& path_b, double tau, double vp_q,
                std::optional<double> threshold, const std::string& summary_path) {
  TrainFile a = read_train_csv(path_a);
  TrainFile b = read_train_csv(path_b);
  if (threshold.has_value()) {
    if ((a.magnitudes.empty() && !a.train.times.empty()) ||
        (b.magnitudes.empty() && !b.train.times.empty())) {
      throw Error("--threshold needs spike magnitudes; bare spike lists carry none");
    }
    a.train = threshold_spikes(a.magnitudes, *threshold, a.train.horizon);
    b.train = threshold_spikes(b.magnitudes, *threshold, b.train.horizon);
  }

  const MetricParams params{tau, vp_q};
  json summary;
  json meta_params;
  meta_params["a"] = path_a;
  meta_params["b"] = path_b;
  meta_params["tau"] = tau;
  meta_params["vp_q"] = vp_q;
  if (threshold.has_value()) meta_params["threshold"] = *threshold;
  summary.update(metadata_block(meta_params));
  summary["van_rossum"] = van_rossum(a.train, b.train, params);
  summary["victor_purpura"] = victor_purpura(a.train, b.train, params);
  summary["spikes_a"] = a.train.times.size();
  summary["spikes_b"] = b.train.times.size();
  if (!a.calcium.empty() && !b.calcium.empty()) {
    summary["calcium_mse"] = calcium_mse(a.calcium, b.calcium);
  }
  emit_json(summary, summary_path);
  return 0;
}

int cmd_estimate_gamma(const std::string& input, int from, int to, double tol,
                       const std::string& summary_path) {
  const FluorescenceTrace trace = read_trace_csv(input);
  const GammaEstimate est = estimate_gamma(trace, from, to, tol);
  json params;
  params["input"] = input;
  params["from"] = from;
  params["to"] = to;
  params["tol"] = tol;
  json summary = metadata_block(params);
  summary["gamma_hat"] = est.gamma_hat;
  summary["residual"] = est.residual;
  emit_json(summary, summary_path);
  return 0;
}

int cmd_bench(const std::string& lengths_text, const std::string& thetas_text, double gamma,
              double sigma, double lambda, int seeds, int warmup, int repetitions,
              std::uint64_t base_seed, const std::string& out_path) {
  BenchConfig config;
  config.lengths = parse_int_list(lengths_text);
  config.thetas = parse_double_list(thetas_text);
  if (!std::is_sorted(config.lengths.begin(), config.lengths.end()) ||
      config.lengths.front() < 1) {
    throw CLI::ValidationError("--lengths must be ascending positive integers");
  }
  if (seeds < 1 || repetitions < 1 || warmup < 0) {
    throw CLI::ValidationError("--seeds and --reps must be >= 1, --warmup >= 0");
  }
  config.gamma = gamma;
  config.sigma = sigma;
  config.lambda = lambda;
  config.seeds = seeds;
  config.warmup = warmup;
  config.repetitions = repetitions;
  config.base_seed = base_seed;

  const BenchReport report = run_bench(config);
  if (!out_path.empty()) {
    std::ostringstream csv;
    write_bench_csv(report, csv);
    write_file(out_path, csv.str());
  }
  std::cout << format_bench_table(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spike-train inference by L0-penalized changepoint detection"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic trace CSV");
  int sim_t = 0;
  double sim_gamma = 0.0, sim_sigma = 0.0, sim_theta = 0.0;
  double sim_beta0 = 0.0, sim_beta1 = 1.0, sim_c_init = 0.0;
  std::uint64_t sim_seed = 0;
  std::string sim_gammas, sim_out;
  sim->add_option("--T", sim_t, "Number of timesteps")->required();
  auto* sim_g = sim->add_option("--gamma", sim_gamma, "AR(1) decay rate");
  auto* sim_gs = sim->add_option("--gammas", sim_gammas, "AR(p) decay coefficients");
  sim_g->excludes(sim_gs);
  sim->add_option("--sigma", sim_sigma, "Noise SD")->capture_default_str();
  sim->add_option("--theta", sim_theta, "Poisson firing rate")->capture_default_str();
  sim->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
  sim->add_option("--beta0", sim_beta0, "Observation intercept")->capture_default_str();
  sim->add_option("--beta1", sim_beta1, "Observation scale")->capture_default_str();
  sim->add_option("--c-init", sim_c_init, "Initial calcium")->capture_default_str();
  sim->add_option("-o,--output", sim_out, "Output CSV path")->required();

  // fit
  auto* fit = app.add_subcommand("fit", "Fit spikes to a trace CSV");
  std::string fit_input, fit_algorithm = "auto", fit_out = "fit.csv", fit_summary;
  ModelFlags fit_model;
  double fit_lambda = 0.0;
  int fit_target = 0;
  fit->add_option("-i,--input", fit_input, "Input trace CSV")->required();
  fit_model.attach(fit);
  auto* lam = fit->add_option("--lambda", fit_lambda, "Penalty per spike event");
  auto* tgt = fit->add_option("--target-spikes", fit_target,
                              "Choose lambda to yield this many spike events");
  lam->excludes(tgt);
  tgt->excludes(lam);
  fit->add_option("--algorithm", fit_algorithm, "op, pelt, or auto")
      ->check(CLI::IsMember({"op", "pelt", "auto"}))
      ->capture_default_str();
  fit->add_option("-o,--output", fit_out, "Fit CSV path")->capture_default_str();
  fit->add_option("--summary", fit_summary, "Write the JSON summary here instead of stdout");

  // cv
  auto* cv = app.add_subcommand("cv", "Cross-validate lambda on a trace CSV");
  std::string cv_input, cv_lambdas, cv_out, cv_summary;
  ModelFlags cv_model;
  int cv_grid_points = 50;
  cv->add_option("-i,--input", cv_input, "Input trace CSV")->required();
  cv_model.attach(cv);
  cv->add_option("--lambdas", cv_lambdas, "Ascending comma-separated grid");
  cv->add_option("--grid-points", cv_grid_points, "Size of the default log-spaced grid")
      ->capture_default_str();
  cv->add_option("-o,--output", cv_out, "Report CSV path");
  cv->add_option("--summary", cv_summary, "Write the JSON summary here instead of stdout");

  // estimate-gamma
  auto* eg = app.add_subcommand("estimate-gamma",
                                "Estimate the decay rate from a clean decay segment");
  std::string eg_input, eg_summary;
  int eg_from = 0, eg_to = 0;
  double eg_tol = 1e-8;
  eg->add_option("-i,--input", eg_input, "Input trace CSV")->required();
  eg->add_option("--from", eg_from, "First timestep of the segment (1-indexed)")->required();
  eg->add_option("--to", eg_to, "Last timestep of the segment")->required();
  eg->add_option("--tol", eg_tol, "Search bracket tolerance")->capture_default_str();
  eg->add_option("--summary", eg_summary, "Write the JSON summary here instead of stdout");

  // metrics
  auto* met = app.add_subcommand("metrics", "Spike-train distances between two CSV files");
  std::string met_a, met_b, met_summary;
  double met_tau = 2.0, met_q = 1.0;
  double met_threshold = 0.0;
  met->add_option("--a", met_a, "First file (fit, simulation, or spike-list CSV)")->required();
  met->add_option("--b", met_b, "Second file")->required();
  met->add_option("--tau", met_tau, "van Rossum kernel timescale")->capture_default_str();
  met->add_option("--vp-q", met_q, "Victor-Purpura shift cost per timestep")
      ->capture_default_str();
  auto* thr = met->add_option("--threshold", met_threshold,
                              "Drop spikes with magnitude below this level first");
  met->add_option("--summary", met_summary, "Write the JSON summary here instead of stdout");

  // bench
  auto* bench = app.add_subcommand("bench", "Time the solvers on simulated traces");
  std::string bench_lengths, bench_thetas = "0.01", bench_out;
  double bench_gamma = 0.998, bench_sigma = 0.15, bench_lambda = 1.0;
  int bench_seeds = 10, bench_warmup = 1, bench_reps = 1;
  std::uint64_t bench_base_seed = 1;
  bench->add_option("--lengths", bench_lengths, "Ascending comma-separated trace lengths")
      ->required();
  bench->add_option("--thetas", bench_thetas, "Comma-separated firing rates")
      ->capture_default_str();
  bench->add_option("--gamma", bench_gamma, "Decay rate")->capture_default_str();
  bench->add_option("--sigma", bench_sigma, "Noise SD")->capture_default_str();
  bench->add_option("--lambda", bench_lambda, "Penalty")->capture_default_str();
  bench->add_option("--seeds", bench_seeds, "Datasets per cell")->capture_default_str();
  bench->add_option("--warmup", bench_warmup, "Untimed solves per measurement")
      ->capture_default_str();
  bench->add_option("--reps", bench_reps, "Timed solves per measurement (median reported)")
      ->capture_default_str();
  bench->add_option("--base-seed", bench_base_seed, "First RNG seed")->capture_default_str();
  bench->add_option("-o,--output", bench_out, "Report CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) {
      if (sim_gammas.empty() && !(sim_gamma > 0.0)) {
        std::cerr << "error: simulate requires --gamma or --gammas\n";
        return 2;
      }
      return cmd_simulate(sim_t, sim_gamma, sim_gammas, sim_sigma, sim_theta, sim_seed,
                          sim_beta0, sim_beta1, sim_c_init, sim_out);
    }
    if (fit->parsed()) {
      if (lam->count() == 0 && tgt->count() == 0) {
        std::cerr << "error: fit requires --lambda or --target-spikes\n";
        return 2;
      }
      return cmd_fit(fit_input, fit_model,
                     lam->count() ? std::optional<double>(fit_lambda) : std::nullopt,
                     tgt->count() ? std::optional<int>(fit_target) : std::nullopt,
                     fit_algorithm, fit_out, fit_summary);
    }
    if (cv->parsed()) {
      return cmd_cv(cv_input, cv_model, cv_lambdas, cv_grid_points, cv_out, cv_summary);
    }
    if (eg->parsed()) {
      return cmd_estimate_gamma(eg_input, eg_from, eg_to, eg_tol, eg_summary);
    }
    if (met->parsed()) {
      return cmd_metrics(met_a, met_b, met_tau, met_q,
                         thr->count() ? std::optional<double>(met_threshold) : std::nullopt,
                         met_summary);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_lengths, bench_thetas, bench_gamma, bench_sigma, bench_lambda,
                       bench_seeds, bench_warmup, bench_reps, bench_base_seed, bench_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
