// Monte Carlo verification harness: batch kernels counting tail and exit
// events (OpenMP-parallel with a serial reference kept for testing), tail
// estimates with Wilson intervals, decay-rate fits against the analytic rate
// functions, exit-probability bounds, and convergence races.
//
// Determinism contract: sample i of a batch draws from RngStream(seed,
// stream_base + i), so every count is a pure function of (spec, seed,
// stream_base, n_samples) and independent of thread count and scheduling.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "randflight/flight.hpp"
#include "randflight/rates.hpp"
#include "randflight/stats.hpp"

namespace randflight {

/// A t-indexed family of flight laws: Z with fixed intensity lambda, or a
/// conditional flight whose change count grows like n_t = round(t*w).
struct FlightFamily {
  Model model = Model::Z;
  int d = 2;
  double c = 1.0;
  double rate_param = 1.0;  // lambda for Z, w for X/Y

  static FlightFamily standard(int d, double lambda, double c);
  static FlightFamily conditional(Model model, int d, double w, double c);
};

/// Concrete spec at horizon t (n_t = llround(t * w) for conditional families;
/// throws if that rounds to zero).
FlightSpec family_spec_at(const FlightFamily& family, double t);

/// The rate function the family's scaled endpoints obey.
RateFunction family_rate_function(const FlightFamily& family);

/// Raised by the rare-event feasibility gate: the predicted tail probability
/// e^{-t*rate} is below 50/n_samples, so naive Monte Carlo cannot observe the
/// event reliably. suggested_t_max is the largest feasible horizon at the
/// given sample count.
class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(const std::string& what, double suggested_t_max)
      : std::runtime_error(what), suggested_t_max(suggested_t_max) {}
  double suggested_t_max = 0.0;
};

/// Counts from one simulated batch. max_exceed >= endpoint_exceed always
/// (the endpoint is one of the vertices the running maximum ranges over).
struct TailCounts {
  std::uint64_t endpoint_exceed = 0;  // ||endpoint|| > threshold
  std::uint64_t max_exceed = 0;       // running max norm > threshold
  std::uint64_t zero_changes = 0;     // paths with no direction change
  std::uint64_t total = 0;
};

/// Serial reference kernel (plain loop over samples).
TailCounts count_tail_events_serial(const FlightSpec& spec, double threshold,
                                    std::uint64_t seed, std::uint64_t stream_base,
                                    std::uint64_t n_samples);

/// OpenMP kernel; bit-identical counts to the serial reference for any
/// thread count. threads <= 0 uses the OpenMP default.
TailCounts count_tail_events(const FlightSpec& spec, double threshold, std::uint64_t seed,
                             std::uint64_t stream_base, std::uint64_t n_samples, int threads);

/// Histogram of endpoint radii over half-open bins [edges[i], edges[i+1]).
/// Paths with zero changes (the singular atom at radius c*t) are tallied
/// separately and excluded from the bins.
struct RadialHistogram {
  std::vector<std::uint64_t> bin_counts;
  std::uint64_t atom_count = 0;
  std::uint64_t total = 0;
};
RadialHistogram radial_histogram_serial(const FlightSpec& spec, std::span<const double> edges,
                                        std::uint64_t seed, std::uint64_t stream_base,
                                        std::uint64_t n_samples);
RadialHistogram radial_histogram(const FlightSpec& spec, std::span<const double> edges,
                                 std::uint64_t seed, std::uint64_t stream_base,
                                 std::uint64_t n_samples, int threads);

/// Monte Carlo estimate of P(||endpoint||/t > r) with 99% Wilson bounds and
/// the empirical decay rate -(1/t) log p_hat (+inf when p_hat = 0).
struct TailEstimate {
  double t = 0.0;
  double r = 0.0;
  double p_hat = 0.0;
  std::uint64_t n_samples = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double empirical_rate = 0.0;
};

TailEstimate make_tail_estimate(double t, double r, std::uint64_t hits, std::uint64_t n);

/// Simulates n_samples endpoints of the family at horizon t. For r >= c the
/// event {||endpoint||/t > r} is empty (finite velocity; the atom sits exactly
/// at c) and p_hat = 0 is reported without simulating. Requires
/// n_samples >= 1000.
TailEstimate estimate_tail(const FlightFamily& family, double t, double r,
                           std::uint64_t n_samples, std::uint64_t seed, int threads,
                           std::uint64_t stream_base = 0);

/// Decay-rate fit: regresses log p_hat_t on t over the grid and reports
/// -slope. Refuses infeasible (t, r, n) combinations (FeasibilityError) and
/// grids that produced an empty tail (std::runtime_error naming the t).
struct RateFit {
  std::vector<TailEstimate> estimates;
  double decay_rate = 0.0;     // -slope of log p_hat on t
  double decay_rate_ci_low = 0.0;
  double decay_rate_ci_high = 0.0;  // 99% normal-based from the slope SE
  double analytic_rate = 0.0;       // rate_inf_over_tail at r
};
RateFit fit_decay_rate(const FlightFamily& family, double r, std::span<const double> t_grid,
                       std::uint64_t n_samples_per_t, std::uint64_t seed, int threads);

/// Exit probability Psi(t; r*t) = P(sup_s ||Z(s)|| > r*t) estimated from full
/// paths, together with the endpoint tail from the same samples. The pathwise
/// inclusion (running max >= endpoint norm) makes exit.p_hat >= endpoint.p_hat
/// certain; violated counts raise std::logic_error. Model Z only.
struct ExitEstimate {
  TailEstimate exit;
  TailEstimate endpoint;
};
ExitEstimate estimate_exit_probability(const FlightFamily& family, double t, double r,
                                       std::uint64_t n_samples, std::uint64_t seed,
                                       int threads);

/// Tail-probability ratio p_a(t)/p_b(t) along the grid for two families
/// sharing c; the family with the larger rate near the origin has ratio -> 0.
struct RaceRow {
  double t = 0.0;
  TailEstimate tail_a;
  TailEstimate tail_b;
  double ratio = 0.0;
};
std::vector<RaceRow> convergence_race(const FlightFamily& a, const FlightFamily& b,
                                      double neighborhood_radius,
                                      std::span<const double> t_grid,
                                      std::uint64_t n_samples_per_t, std::uint64_t seed,
                                      int threads);

/// Largest horizon the gate accepts: t with e^{-t*rate} = 50/n_samples.
double feasibility_max_t(double analytic_rate, std::uint64_t n_samples);

}  // namespace randflight
