#include "randflight/mc.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace randflight {

FlightFamily FlightFamily::standard(int d, double lambda, double c) {
  FlightFamily f{Model::Z, d, c, lambda};
  family_spec_at(f, 1.0);  // validate via a probe spec
  return f;
}

FlightFamily FlightFamily::conditional(Model model, int d, double w, double c) {
  if (model == Model::Z) throw std::invalid_argument("conditional family requires model X or Y");
  if (!(w > 0.0)) throw std::invalid_argument("change rate w must be positive");
  FlightFamily f{model, d, c, w};
  family_spec_at(f, 2.0 / w);  // validate with a horizon that keeps n_t >= 1
  return f;
}

FlightSpec family_spec_at(const FlightFamily& family, double t) {
  if (family.model == Model::Z) {
    return FlightSpec::standard(family.d, family.c, family.rate_param, t);
  }
  const long long n_t = std::llround(t * family.rate_param);
  if (n_t < 1) {
    throw std::invalid_argument("t*w rounds to zero changes; increase t or w");
  }
  return FlightSpec::conditional(family.model, family.d, family.c, static_cast<int>(n_t), t);
}

RateFunction family_rate_function(const FlightFamily& family) {
  if (family.model == Model::Z) {
    return RateFunction::standard(family.d, family.rate_param, family.c);
  }
  return RateFunction::conditional(family.model, family.d, family.c, family.rate_param);
}

namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace

TailCounts count_tail_events_serial(const FlightSpec& spec, double threshold,
                                    std::uint64_t seed, std::uint64_t stream_base,
                                    std::uint64_t n_samples) {
  spec.validate();
  TailCounts counts;
  counts.total = n_samples;
  FlightSampler sampler(spec);
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    RngStream rng(seed, stream_base + i);
    const EndpointSample s = sampler.sample_endpoint(rng);
    if (s.endpoint_norm > threshold) ++counts.endpoint_exceed;
    if (s.max_norm > threshold) ++counts.max_exceed;
    if (s.n_changes == 0) ++counts.zero_changes;
  }
  return counts;
}

TailCounts count_tail_events(const FlightSpec& spec, double threshold, std::uint64_t seed,
                             std::uint64_t stream_base, std::uint64_t n_samples, int threads) {
  spec.validate();
  std::uint64_t endpoint_exceed = 0, max_exceed = 0, zero_changes = 0;
  const long long n = static_cast<long long>(n_samples);
#pragma omp parallel num_threads(resolve_threads(threads)) \
    reduction(+ : endpoint_exceed, max_exceed, zero_changes)
  {
    FlightSampler sampler(spec);
#pragma omp for schedule(static)
    for (long long i = 0; i < n; ++i) {
      RngStream rng(seed, stream_base + static_cast<std::uint64_t>(i));
      const EndpointSample s = sampler.sample_endpoint(rng);
      if (s.endpoint_norm > threshold) ++endpoint_exceed;
      if (s.max_norm > threshold) ++max_exceed;
      if (s.n_changes == 0) ++zero_changes;
    }
  }
  return {endpoint_exceed, max_exceed, zero_changes, n_samples};
}

namespace {

std::size_t bin_index(std::span<const double> edges, double value) {
  // Half-open bins [e_i, e_{i+1}); values at or beyond the last edge (possible
  // only through rounding at the support rim) land in the last bin.
  const auto it = std::upper_bound(edges.begin(), edges.end(), value);
  const std::ptrdiff_t k = it - edges.begin() - 1;
  const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(edges.size()) - 2;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k, 0, last));
}

}  // namespace

RadialHistogram radial_histogram_serial(const FlightSpec& spec, std::span<const double> edges,
                                        std::uint64_t seed, std::uint64_t stream_base,
                                        std::uint64_t n_samples) {
  if (edges.size() < 2) throw std::invalid_argument("histogram needs at least 2 edges");
  RadialHistogram h;
  h.bin_counts.assign(edges.size() - 1, 0);
  h.total = n_samples;
  FlightSampler sampler(spec);
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    RngStream rng(seed, stream_base + i);
    const EndpointSample s = sampler.sample_endpoint(rng);
    if (s.n_changes == 0) {
      ++h.atom_count;
    } else {
      ++h.bin_counts[bin_index(edges, s.endpoint_norm)];
    }
  }
  return h;
}

RadialHistogram radial_histogram(const FlightSpec& spec, std::span<const double> edges,
                                 std::uint64_t seed, std::uint64_t stream_base,
                                 std::uint64_t n_samples, int threads) {
  if (edges.size() < 2) throw std::invalid_argument("histogram needs at least 2 edges");
  RadialHistogram h;
  h.bin_counts.assign(edges.size() - 1, 0);
  h.total = n_samples;
  const long long n = static_cast<long long>(n_samples);
  std::uint64_t atom = 0;
#pragma omp parallel num_threads(resolve_threads(threads)) reduction(+ : atom)
  {
    FlightSampler sampler(spec);
    std::vector<std::uint64_t> local(h.bin_counts.size(), 0);
#pragma omp for schedule(static)
    for (long long i = 0; i < n; ++i) {
      RngStream rng(seed, stream_base + static_cast<std::uint64_t>(i));
      const EndpointSample s = sampler.sample_endpoint(rng);
      if (s.n_changes == 0) {
        ++atom;
      } else {
        ++local[bin_index(edges, s.endpoint_norm)];
      }
    }
#pragma omp critical
    {
      for (std::size_t k = 0; k < local.size(); ++k) h.bin_counts[k] += local[k];
    }
  }
  h.atom_count = atom;
  return h;
}

TailEstimate make_tail_estimate(double t, double r, std::uint64_t hits, std::uint64_t n) {
  TailEstimate e;
  e.t = t;
  e.r = r;
  e.n_samples = n;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(n);
  const WilsonInterval ci = wilson_99(hits, n);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  e.empirical_rate =
      hits == 0 ? std::numeric_limits<double>::infinity() : -std::log(e.p_hat) / t;
  return e;
}

TailEstimate estimate_tail(const FlightFamily& family, double t, double r,
                           std::uint64_t n_samples, std::uint64_t seed, int threads,
                           std::uint64_t stream_base) {
  if (n_samples < 1000) throw std::invalid_argument("tail estimation needs n_samples >= 1000");
  if (r < 0.0) throw std::invalid_argument("threshold r must be nonnegative");
  if (r >= family.c) {
    // ||endpoint||/t <= c with equality only on the zero-change atom; the
    // strict event is empty.
    return make_tail_estimate(t, r, 0, n_samples);
  }
  const FlightSpec spec = family_spec_at(family, t);
  const TailCounts counts =
      count_tail_events(spec, r * t, seed, stream_base, n_samples, threads);
  return make_tail_estimate(t, r, counts.endpoint_exceed, n_samples);
}

double feasibility_max_t(double analytic_rate, std::uint64_t n_samples) {
  return std::log(static_cast<double>(n_samples) / 50.0) / analytic_rate;
}

namespace {

void feasibility_gate(const FlightFamily& family, double r, double t,
                      std::uint64_t n_samples) {
  const double rate = rate_inf_over_tail(family_rate_function(family), r);
  if (!(rate > 0.0)) return;  // r = 0: the full event, always observable
  if (std::isinf(rate)) {
    throw FeasibilityError("threshold r is outside the reachable set (rate is infinite)", 0.0);
  }
  const double predicted_p = std::exp(-t * rate);
  const double floor = 50.0 / static_cast<double>(n_samples);
  if (predicted_p < floor) {
    const double t_max = feasibility_max_t(rate, n_samples);
    throw FeasibilityError(
        "infeasible rare event: predicted p ~ exp(-t*rate) = " + std::to_string(predicted_p) +
            " < 50/n_samples = " + std::to_string(floor) + " at t = " + std::to_string(t) +
            "; largest feasible t at this sample count is ~" + std::to_string(t_max),
        t_max);
  }
}

constexpr std::uint64_t kBatchStride = 1ULL << 40;  // stream-id block per batch

}  // namespace

RateFit fit_decay_rate(const FlightFamily& family, double r, std::span<const double> t_grid,
                       std::uint64_t n_samples_per_t, std::uint64_t seed, int threads) {
  if (t_grid.size() < 3) throw std::invalid_argument("decay-rate fit needs >= 3 horizons");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw std::invalid_argument("t_grid must be ascending");
  }
  for (double t : t_grid) feasibility_gate(family, r, t, n_samples_per_t);

  RateFit fit;
  fit.analytic_rate = rate_inf_over_tail(family_rate_function(family), r);
  std::vector<double> log_p(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const TailEstimate est = estimate_tail(family, t_grid[k], r, n_samples_per_t, seed,
                                           threads, k * kBatchStride);
    if (est.p_hat == 0.0) {
      throw std::runtime_error("no tail hits at t = " + std::to_string(t_grid[k]) +
                               "; increase n_samples or shrink the grid");
    }
    log_p[k] = std::log(est.p_hat);
    fit.estimates.push_back(est);
  }
  const LinearFit ls = ols_fit(t_grid, log_p);
  constexpr double z99 = 2.5758293035489004;
  fit.decay_rate = -ls.slope;
  fit.decay_rate_ci_low = -ls.slope - z99 * ls.slope_se;
  fit.decay_rate_ci_high = -ls.slope + z99 * ls.slope_se;
  return fit;
}

ExitEstimate estimate_exit_probability(const FlightFamily& family, double t, double r,
                                       std::uint64_t n_samples, std::uint64_t seed,
                                       int threads) {
  if (family.model != Model::Z) {
    throw std::invalid_argument("exit probabilities are defined for standard flights (model Z)");
  }
  if (!(r > 0.0 && r < family.c)) {
    throw std::invalid_argument("exit threshold requires 0 < r < c");
  }
  feasibility_gate(family, r, t, n_samples);
  const FlightSpec spec = family_spec_at(family, t);
  const TailCounts counts = count_tail_events(spec, r * t, seed, 0, n_samples, threads);
  if (counts.max_exceed < counts.endpoint_exceed) {
    throw std::logic_error("pathwise inclusion violated: running max below endpoint");
  }
  return {make_tail_estimate(t, r, counts.max_exceed, n_samples),
          make_tail_estimate(t, r, counts.endpoint_exceed, n_samples)};
}

std::vector<RaceRow> convergence_race(const FlightFamily& a, const FlightFamily& b,
                                      double neighborhood_radius,
                                      std::span<const double> t_grid,
                                      std::uint64_t n_samples_per_t, std::uint64_t seed,
                                      int threads) {
  if (a.c != b.c) throw std::invalid_argument("raced families must share the speed c");
  std::vector<RaceRow> rows;
  rows.reserve(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    RaceRow row;
    row.t = t_grid[k];
    row.tail_a = estimate_tail(a, row.t, neighborhood_radius, n_samples_per_t, seed, threads,
                               (2 * k) * kBatchStride);
    row.tail_b = estimate_tail(b, row.t, neighborhood_radius, n_samples_per_t, seed, threads,
                               (2 * k + 1) * kBatchStride);
    row.ratio = row.tail_a.p_hat / row.tail_b.p_hat;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace randflight
