// Experiment configurations and runners behind the CLI subcommands
// (simulate | density | rates | verify). Kept in the library so the
// acceptance suite can drive the same code paths and byte-compare outputs.
//
// All floating-point output is printed with 12 significant digits; verify
// results are pure functions of (config, seed) and independent of the thread
// count.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "randflight/mc.hpp"

namespace randflight {

/// %.12g with "inf" for infinities.
std::string format_double(double x);

struct SimulateConfig {
  Model model = Model::Z;
  int d = 2;
  double c = 1.0;
  double t = 1.0;
  int n = -1;            // X, Y
  double lambda = 0.0;   // Z
  std::uint64_t paths = 1000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out = "paths.jsonl";
};

struct SimulateSummary {
  std::uint64_t paths = 0;
  double mean_endpoint_norm = 0.0;
  double mean_changes = 0.0;
};

/// Writes one JSON line per path:
/// {"model":"Z","d":2,"c":...,"t":...,"n":...,"vertices":[[...]],"change_times":[...]}
SimulateSummary run_simulate(const SimulateConfig& config);

struct DensityConfig {
  Model model = Model::Z;
  int d = 2;
  int n = -1;            // X, Y
  double lambda = 0.0;   // Z
  double c = 1.0;
  double t = 1.0;
  int points = 101;      // grid rows over [0, c*t]
  int mixture_n_max = 80;
  std::string out = "density.csv";
};

/// CSV: model,d,n_or_lambda,c,t,r,density,cumulative_mass,mixture_density
/// density and mixture_density are radial-marginal values; the mixture column
/// is filled for model Z only (empty otherwise). The r = c*t row carries the
/// boundary convention density 0 and the full a.c. mass.
void run_density(const DensityConfig& config);

struct RatesConfig {
  double c = 1.0;
  double lambda = 1.0;
  std::vector<double> w_values = {1.5, 0.6};
  double r_step = 0.01;
  std::string out = "rates.csv";
};

/// CSV: kind,d,c,lambda_or_w,r,value with "inf" for +infinity. Emits the
/// standard d=2 and d=4 rates at lambda and the conditional d=2 / d=4 rates
/// at each w, on the grid r = 0, r_step, ..., c.
void run_rates(const RatesConfig& config);

struct VerifyConfig {
  Model model = Model::Z;
  int d = 2;
  double c = 1.0;
  double rate_param = 1.0;  // lambda (Z) or w (X, Y)
  double r = 0.5;
  std::vector<double> t_grid = {10, 20, 30, 40};
  std::uint64_t samples_per_t = 1000000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string mode = "decay";  // "decay" or "exit"
  std::optional<double> slope_min;  // decay verdict bounds; default +-30% of analytic
  std::optional<double> slope_max;
  std::string out = "verify";  // writes <out>.csv and <out>_summary.json
};

struct VerifyOutcome {
  bool pass = false;
  double fitted_or_empirical_rate = 0.0;
  double analytic_rate = 0.0;
  std::string csv_path;
  std::string summary_path;
};

/// Runs the decay-rate fit (mode "decay") or the exit-probability bound check
/// (mode "exit", model Z, verdict at the largest t). Writes the results CSV
/// (t,p_hat,ci_low,ci_high,empirical_rate) and a JSON summary with the
/// verdict. Throws FeasibilityError / std::invalid_argument on bad configs.
VerifyOutcome run_verify(const VerifyConfig& config);

/// JSON-file loaders; unknown keys are rejected so typos surface immediately.
SimulateConfig load_simulate_config(const std::string& path);
DensityConfig load_density_config(const std::string& path);
RatesConfig load_rates_config(const std::string& path);
VerifyConfig load_verify_config(const std::string& path);

}  // namespace randflight
