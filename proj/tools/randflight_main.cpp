// Command-line front end: simulate | density | rates | verify.
// Exit codes: 0 success (verify: PASS), 1 verify FAIL, 2 validation error.
#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "randflight/experiments.hpp"

namespace {

using namespace randflight;

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::uint64_t> samples;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--seed", f.seed, "RNG seed (overrides config)");
  cmd->add_option("--out", f.out, "output path (overrides config)");
  cmd->add_option("--samples", f.samples, "sample count (overrides config)");
  cmd->add_option("--threads", f.threads, "worker threads; must not affect results");
}

int run(int argc, char** argv) {
  CLI::App app{"random-flight simulation and large-deviation verification toolkit"};
  app.require_subcommand(1);

  CommonFlags sim_flags, dens_flags, rates_flags, verify_flags;
  std::optional<std::string> sim_model, dens_model, verify_model;
  std::optional<int> sim_d, dens_d, verify_d, sim_n, dens_n;
  std::optional<double> sim_c, dens_c, verify_c, sim_t, dens_t;
  std::optional<double> sim_lambda, dens_lambda, verify_lambda, verify_w, verify_r;
  std::optional<std::string> verify_mode;

  auto* sim = app.add_subcommand("simulate", "simulate flight paths to a JSONL dump");
  add_common(sim, sim_flags);
  sim->add_option("--model", sim_model, "X, Y or Z");
  sim->add_option("--d", sim_d, "dimension");
  sim->add_option("--c", sim_c, "speed");
  sim->add_option("--t", sim_t, "horizon");
  sim->add_option("--n", sim_n, "change count (X, Y)");
  sim->add_option("--lambda", sim_lambda, "Poisson intensity (Z)");

  auto* dens = app.add_subcommand("density", "export radial density grids to CSV");
  add_common(dens, dens_flags);
  dens->add_option("--model", dens_model, "X, Y or Z");
  dens->add_option("--d", dens_d, "dimension");
  dens->add_option("--c", dens_c, "speed");
  dens->add_option("--t", dens_t, "horizon");
  dens->add_option("--n", dens_n, "change count (X, Y)");
  dens->add_option("--lambda", dens_lambda, "Poisson intensity (Z)");

  auto* rates = app.add_subcommand("rates", "export rate-function grids to CSV");
  add_common(rates, rates_flags);

  auto* verify = app.add_subcommand("verify", "Monte Carlo decay-rate / exit-bound check");
  add_common(verify, verify_flags);
  verify->add_option("--model", verify_model, "X, Y or Z");
  verify->add_option("--d", verify_d, "dimension");
  verify->add_option("--c", verify_c, "speed");
  verify->add_option("--lambda", verify_lambda, "Poisson intensity (Z)");
  verify->add_option("--w", verify_w, "change rate (X, Y)");
  verify->add_option("--r", verify_r, "tail threshold, fraction of c");
  verify->add_option("--mode", verify_mode, "decay (default) or exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags count as validation errors
  }

  if (sim->parsed()) {
    SimulateConfig cfg;
    if (sim_flags.config) cfg = load_simulate_config(*sim_flags.config);
    if (sim_model) cfg.model = model_from_name(*sim_model);
    if (sim_d) cfg.d = *sim_d;
    if (sim_c) cfg.c = *sim_c;
    if (sim_t) cfg.t = *sim_t;
    if (sim_n) cfg.n = *sim_n;
    if (sim_lambda) cfg.lambda = *sim_lambda;
    if (sim_flags.seed) cfg.seed = *sim_flags.seed;
    if (sim_flags.samples) cfg.paths = *sim_flags.samples;
    if (sim_flags.threads) cfg.threads = *sim_flags.threads;
    if (sim_flags.out) cfg.out = *sim_flags.out;
    const SimulateSummary s = run_simulate(cfg);
    std::printf("wrote %llu paths to %s\n", static_cast<unsigned long long>(s.paths),
                cfg.out.c_str());
    std::printf("mean endpoint norm: %s\n", format_double(s.mean_endpoint_norm).c_str());
    std::printf("mean changes:       %s\n", format_double(s.mean_changes).c_str());
    return 0;
  }

  if (dens->parsed()) {
    DensityConfig cfg;
    if (dens_flags.config) cfg = load_density_config(*dens_flags.config);
    if (dens_model) cfg.model = model_from_name(*dens_model);
    if (dens_d) cfg.d = *dens_d;
    if (dens_c) cfg.c = *dens_c;
    if (dens_t) cfg.t = *dens_t;
    if (dens_n) cfg.n = *dens_n;
    if (dens_lambda) cfg.lambda = *dens_lambda;
    if (dens_flags.out) cfg.out = *dens_flags.out;
    run_density(cfg);
    std::printf("wrote density grid to %s\n", cfg.out.c_str());
    return 0;
  }

  if (rates->parsed()) {
    RatesConfig cfg;
    if (rates_flags.config) cfg = load_rates_config(*rates_flags.config);
    if (rates_flags.out) cfg.out = *rates_flags.out;
    run_rates(cfg);
    std::printf("wrote rate grids to %s\n", cfg.out.c_str());
    return 0;
  }

  VerifyConfig cfg;
  if (verify_flags.config) cfg = load_verify_config(*verify_flags.config);
  if (verify_model) cfg.model = model_from_name(*verify_model);
  if (verify_d) cfg.d = *verify_d;
  if (verify_c) cfg.c = *verify_c;
  if (verify_lambda) cfg.rate_param = *verify_lambda;
  if (verify_w) cfg.rate_param = *verify_w;
  if (verify_r) cfg.r = *verify_r;
  if (verify_mode) cfg.mode = *verify_mode;
  if (verify_flags.seed) cfg.seed = *verify_flags.seed;
  if (verify_flags.samples) cfg.samples_per_t = *verify_flags.samples;
  if (verify_flags.threads) cfg.threads = *verify_flags.threads;
  if (verify_flags.out) cfg.out = *verify_flags.out;
  const VerifyOutcome outcome = run_verify(cfg);
  std::printf("%s: rate %s vs analytic %s (results: %s, summary: %s)\n",
              outcome.pass ? "PASS" : "FAIL",
              format_double(outcome.fitted_or_empirical_rate).c_str(),
              format_double(outcome.analytic_rate).c_str(), outcome.csv_path.c_str(),
              outcome.summary_path.c_str());
  return outcome.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
}
