#include "randflight/experiments.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "randflight/densities.hpp"

namespace randflight {

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

using nlohmann::json;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path + " is not valid JSON: " + e.what());
  }
  return j;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw std::invalid_argument("config " + path + ": unknown field \"" + key + "\"");
    }
  }
}

// Flight parameters shared by the simulate/density/verify configs.
template <class Config>
void read_flight_fields(const json& j, Config& cfg) {
  if (j.contains("model")) cfg.model = model_from_name(j.at("model").get<std::string>());
  if (j.contains("d")) cfg.d = j.at("d").get<int>();
  if (j.contains("c")) cfg.c = j.at("c").get<double>();
}

FlightSpec spec_from(Model model, int d, double c, int n, double lambda, double t) {
  if (model == Model::Z) {
    if (lambda <= 0.0) throw std::invalid_argument("field \"lambda\": model Z needs lambda > 0");
    if (n >= 0) throw std::invalid_argument("field \"n\": model Z takes lambda, not n");
    return FlightSpec::standard(d, c, lambda, t);
  }
  if (lambda != 0.0) {
    throw std::invalid_argument("field \"lambda\": conditional models take n, not lambda");
  }
  if (n < 1) throw std::invalid_argument("field \"n\": conditional models need n >= 1");
  return FlightSpec::conditional(model, d, c, n, t);
}

void write_vector_json(std::ostream& out, const double* data, int count) {
  out << '[';
  for (int i = 0; i < count; ++i) {
    if (i) out << ',';
    out << format_double(data[i]);
  }
  out << ']';
}

}  // namespace

SimulateSummary run_simulate(const SimulateConfig& config) {
  const FlightSpec spec =
      spec_from(config.model, config.d, config.c, config.n, config.lambda, config.t);
  if (config.paths == 0) throw std::invalid_argument("field \"paths\": must be positive");

  // Paths are generated in parallel into their slots, then written in sample
  // order, so the file is byte-identical for any thread count.
  std::vector<Path> paths(config.paths);
  const long long n = static_cast<long long>(config.paths);
#pragma omp parallel num_threads(config.threads > 0 ? config.threads : omp_get_max_threads())
  {
    FlightSampler sampler(spec);
#pragma omp for schedule(static)
    for (long long i = 0; i < n; ++i) {
      RngStream rng(config.seed, static_cast<std::uint64_t>(i));
      paths[static_cast<std::size_t>(i)] = sampler.sample_path(rng);
    }
  }

  auto out = open_output(config.out);
  SimulateSummary summary;
  summary.paths = config.paths;
  for (const Path& p : paths) {
    out << "{\"model\":\"" << model_name(spec.model) << "\",\"d\":" << p.d
        << ",\"c\":" << format_double(p.c) << ",\"t\":" << format_double(p.t)
        << ",\"n\":" << p.n_changes << ",\"vertices\":[";
    for (int v = 0; v < p.vertex_count(); ++v) {
      if (v) out << ',';
      write_vector_json(out, p.vertex(v).data(), p.d);
    }
    out << "],\"change_times\":";
    write_vector_json(out, p.change_times.data(), p.n_changes);
    out << "}\n";
    summary.mean_endpoint_norm += p.endpoint_norm();
    summary.mean_changes += p.n_changes;
  }
  summary.mean_endpoint_norm /= static_cast<double>(config.paths);
  summary.mean_changes /= static_cast<double>(config.paths);
  return summary;
}

void run_density(const DensityConfig& config) {
  spec_from(config.model, config.d, config.c, config.n, config.lambda, config.t);  // validate
  if (config.points < 2) throw std::invalid_argument("field \"points\": need at least 2");

  const double ct = config.c * config.t;
  const bool standard = config.model == Model::Z;
  std::optional<IsotropicDensity> cond;
  if (!standard) {
    cond = make_isotropic_density(config.model, config.d, config.n, config.c, config.t);
  }

  auto out = open_output(config.out);
  out << "model,d,n_or_lambda,c,t,r,density,cumulative_mass,mixture_density\n";
  for (int i = 0; i < config.points; ++i) {
    const double r = ct * static_cast<double>(i) / (config.points - 1);
    const bool rim = i == config.points - 1;
    double density, mass;
    std::string mixture;
    if (standard) {
      density = rim ? 0.0 : standard_radial_marginal(config.d, config.lambda, config.c,
                                                     config.t, r);
      mass = standard_ac_mass(config.d, config.lambda, config.c, config.t, 0.0, r);
      const double mix =
          rim ? 0.0
              : poisson_mixture_density(config.d, config.lambda, config.c, config.t, r,
                                        config.mixture_n_max) *
                    sphere_surface_area(config.d) * std::pow(r, config.d - 1);
      mixture = format_double(mix);
    } else {
      density = rim ? 0.0 : radial_marginal(*cond, r);
      mass = radial_cdf(*cond, r);
    }
    out << model_name(config.model) << ',' << config.d << ','
        << format_double(standard ? config.lambda : config.n) << ','
        << format_double(config.c) << ',' << format_double(config.t) << ','
        << format_double(r) << ',' << format_double(density) << ',' << format_double(mass)
        << ',' << mixture << '\n';
  }
}

void run_rates(const RatesConfig& config) {
  if (!(config.c > 0.0)) throw std::invalid_argument("field \"c\": must be positive");
  if (!(config.r_step > 0.0)) throw std::invalid_argument("field \"r_step\": must be positive");
  if (!(config.lambda > 0.0)) throw std::invalid_argument("field \"lambda\": must be positive");
  for (double w : config.w_values) {
    if (!(w > 0.0)) throw std::invalid_argument("field \"w_values\": entries must be positive");
  }

  const int steps = std::max<int>(1, static_cast<int>(std::lround(config.c / config.r_step)));
  std::vector<double> grid;
  for (int i = 0; i < steps; ++i) grid.push_back(std::min(config.c, i * config.r_step));
  grid.push_back(config.c);  // always land exactly on the rim

  std::vector<RateFunction> rates;
  rates.push_back(RateFunction::standard(2, config.lambda, config.c));
  rates.push_back(RateFunction::standard(4, config.lambda, config.c));
  for (double w : config.w_values) {
    rates.push_back(RateFunction::conditional(Model::X, 2, config.c, w));
    rates.push_back(RateFunction::conditional(Model::Y, 4, config.c, w));
  }

  auto out = open_output(config.out);
  out << "kind,d,c,lambda_or_w,r,value\n";
  for (const RateFunction& rate : rates) {
    for (double r : grid) {
      out << rate_kind_name(rate.kind) << ',' << rate.d << ',' << format_double(rate.c) << ','
          << format_double(rate.scale_param()) << ',' << format_double(r) << ','
          << format_double(rate(r)) << '\n';
    }
  }
}

namespace {

void write_verify_csv(const std::string& path, std::span<const TailEstimate> estimates) {
  auto out = open_output(path);
  out << "t,p_hat,ci_low,ci_high,empirical_rate\n";
  for (const TailEstimate& e : estimates) {
    out << format_double(e.t) << ',' << format_double(e.p_hat) << ','
        << format_double(e.ci_low) << ',' << format_double(e.ci_high) << ','
        << format_double(e.empirical_rate) << '\n';
  }
}

}  // namespace

VerifyOutcome run_verify(const VerifyConfig& config) {
  if (!(config.r >= 0.0 && config.r < config.c)) {
    throw std::invalid_argument("field \"r\": threshold must lie in [0, c)");
  }
  if (config.t_grid.empty()) throw std::invalid_argument("field \"t_grid\": must be non-empty");
  const FlightFamily family =
      config.model == Model::Z
          ? FlightFamily::standard(config.d, config.rate_param, config.c)
          : FlightFamily::conditional(config.model, config.d, config.rate_param, config.c);

  VerifyOutcome outcome;
  outcome.csv_path = config.out + ".csv";
  outcome.summary_path = config.out + "_summary.json";
  nlohmann::json summary;

  if (config.mode == "decay") {
    const RateFit fit = fit_decay_rate(family, config.r, config.t_grid, config.samples_per_t,
                                       config.seed, config.threads);
    const double lo = config.slope_min.value_or(0.7 * fit.analytic_rate);
    const double hi = config.slope_max.value_or(1.3 * fit.analytic_rate);
    outcome.pass = fit.decay_rate >= lo && fit.decay_rate <= hi;
    outcome.fitted_or_empirical_rate = fit.decay_rate;
    outcome.analytic_rate = fit.analytic_rate;
    write_verify_csv(outcome.csv_path, fit.estimates);
    summary = {{"slope", fit.decay_rate},
               {"slope_ci", {fit.decay_rate_ci_low, fit.decay_rate_ci_high}},
               {"analytic_rate", fit.analytic_rate},
               {"slope_bounds", {lo, hi}},
               {"verdict", outcome.pass ? "PASS" : "FAIL"}};
  } else if (config.mode == "exit") {
    std::vector<TailEstimate> exits;
    ExitEstimate last;
    for (std::size_t k = 0; k < config.t_grid.size(); ++k) {
      last = estimate_exit_probability(family, config.t_grid[k], config.r,
                                       config.samples_per_t, config.seed + k, config.threads);
      exits.push_back(last.exit);
    }
    // One-sided bound: the empirical exit rate cannot exceed the analytic
    // endpoint rate by more than statistical noise (the exit event contains
    // the endpoint event pathwise).
    const double bound = rate_inf_over_tail(family_rate_function(family), config.r);
    const double t_last = last.exit.t;
    const bool observed = last.exit.p_hat > 0.0;  // zero hits certify nothing
    const double halfwidth =
        observed ? 0.5 * (std::log(last.exit.ci_high) - std::log(last.exit.ci_low)) / t_last
                 : std::numeric_limits<double>::infinity();
    const bool inclusion = last.exit.p_hat >= last.endpoint.p_hat;
    outcome.pass = observed && inclusion && last.exit.empirical_rate <= bound + 2.0 * halfwidth;
    outcome.fitted_or_empirical_rate = last.exit.empirical_rate;
    outcome.analytic_rate = bound;
    write_verify_csv(outcome.csv_path, exits);
    summary = {{"empirical_rate", last.exit.empirical_rate},
               {"rate_ci_halfwidth", halfwidth},
               {"analytic_rate", bound},
               {"endpoint_p_hat", last.endpoint.p_hat},
               {"exit_p_hat", last.exit.p_hat},
               {"pathwise_inclusion", inclusion},
               {"verdict", outcome.pass ? "PASS" : "FAIL"}};
  } else {
    throw std::invalid_argument("field \"mode\": must be \"decay\" or \"exit\"");
  }

  auto out = open_output(outcome.summary_path);
  out << summary.dump(2) << '\n';
  return outcome;
}

SimulateConfig load_simulate_config(const std::string& path) {
  const json j = load_json(path);
  reject_unknown_keys(j, {"model", "d", "c", "t", "n", "lambda", "paths", "seed", "threads", "out"},
                      path);
  SimulateConfig cfg;
  read_flight_fields(j, cfg);
  if (j.contains("t")) cfg.t = j.at("t").get<double>();
  if (j.contains("n")) cfg.n = j.at("n").get<int>();
  if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<double>();
  if (j.contains("paths")) cfg.paths = j.at("paths").get<std::uint64_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  return cfg;
}

DensityConfig load_density_config(const std::string& path) {
  const json j = load_json(path);
  reject_unknown_keys(
      j, {"model", "d", "c", "t", "n", "lambda", "points", "mixture_n_max", "out"}, path);
  DensityConfig cfg;
  read_flight_fields(j, cfg);
  if (j.contains("t")) cfg.t = j.at("t").get<double>();
  if (j.contains("n")) cfg.n = j.at("n").get<int>();
  if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<double>();
  if (j.contains("points")) cfg.points = j.at("points").get<int>();
  if (j.contains("mixture_n_max")) cfg.mixture_n_max = j.at("mixture_n_max").get<int>();
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  return cfg;
}

RatesConfig load_rates_config(const std::string& path) {
  const json j = load_json(path);
  reject_unknown_keys(j, {"c", "lambda", "w_values", "r_step", "out"}, path);
  RatesConfig cfg;
  if (j.contains("c")) cfg.c = j.at("c").get<double>();
  if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<double>();
  if (j.contains("w_values")) cfg.w_values = j.at("w_values").get<std::vector<double>>();
  if (j.contains("r_step")) cfg.r_step = j.at("r_step").get<double>();
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  return cfg;
}

VerifyConfig load_verify_config(const std::string& path) {
  const json j = load_json(path);
  reject_unknown_keys(j,
                      {"model", "d", "c", "lambda", "w", "r", "t_grid", "samples_per_t", "seed",
                       "threads", "mode", "slope_min", "slope_max", "out"},
                      path);
  VerifyConfig cfg;
  read_flight_fields(j, cfg);
  if (j.contains("lambda") && j.contains("w")) {
    throw std::invalid_argument("config " + path + ": set exactly one of \"lambda\" and \"w\"");
  }
  if (j.contains("lambda")) cfg.rate_param = j.at("lambda").get<double>();
  if (j.contains("w")) cfg.rate_param = j.at("w").get<double>();
  if (j.contains("r")) cfg.r = j.at("r").get<double>();
  if (j.contains("t_grid")) cfg.t_grid = j.at("t_grid").get<std::vector<double>>();
  if (j.contains("samples_per_t")) cfg.samples_per_t = j.at("samples_per_t").get<std::uint64_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("mode")) cfg.mode = j.at("mode").get<std::string>();
  if (j.contains("slope_min")) cfg.slope_min = j.at("slope_min").get<double>();
  if (j.contains("slope_max")) cfg.slope_max = j.at("slope_max").get<double>();
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  return cfg;
}

}  // namespace randflight
