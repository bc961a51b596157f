#include <doctest.h>

#include <cmath>
#include <vector>

#include "randflight/densities.hpp"
#include "randflight/mc.hpp"

using namespace randflight;

namespace {

// Exact tail of the standard d=2 flight: integrating the a.c. part over
// {||z|| >= r t} telescopes to exp(-lambda t (1 - sqrt(1 - (r/c)^2))) once the
// atom is added back; an oracle independent of the density module.
double exact_tail_z2(double lambda, double c, double t, double r) {
  return std::exp(-lambda * t * (1.0 - std::sqrt(1.0 - (r / c) * (r / c))));
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference exactly") {
  const FlightSpec specs[] = {
      FlightSpec::standard(2, 1.0, 1.0, 5.0),
      FlightSpec::standard(4, 1.0, 1.0, 3.0),
      FlightSpec::conditional(Model::X, 2, 1.0, 5, 5.0),
      FlightSpec::conditional(Model::Y, 3, 2.0, 2, 1.0),
  };
  for (const FlightSpec& spec : specs) {
    const TailCounts serial = count_tail_events_serial(spec, 0.4 * spec.c * spec.t, 7, 13, 20000);
    for (int threads : {1, 2, 3, 4}) {
      CAPTURE(threads);
      const TailCounts par = count_tail_events(spec, 0.4 * spec.c * spec.t, 7, 13, 20000, threads);
      CHECK(par.endpoint_exceed == serial.endpoint_exceed);
      CHECK(par.max_exceed == serial.max_exceed);
      CHECK(par.zero_changes == serial.zero_changes);
      CHECK(par.total == serial.total);
    }
  }
}

TEST_CASE("histogram kernels agree between serial and parallel") {
  const FlightSpec spec = FlightSpec::standard(2, 1.0, 1.0, 1.0);
  std::vector<double> edges;
  for (int i = 0; i <= 20; ++i) edges.push_back(i / 20.0);
  const RadialHistogram serial = radial_histogram_serial(spec, edges, 99, 0, 50000);
  for (int threads : {1, 3}) {
    const RadialHistogram par = radial_histogram(spec, edges, 99, 0, 50000, threads);
    CHECK(par.bin_counts == serial.bin_counts);
    CHECK(par.atom_count == serial.atom_count);
  }
  std::uint64_t binned = serial.atom_count;
  for (std::uint64_t c : serial.bin_counts) binned += c;
  CHECK(binned == serial.total);
}

TEST_CASE("tail estimate at r=0 is the full event") {
  const FlightFamily fam = FlightFamily::standard(2, 1.0, 1.0);
  const TailEstimate est = estimate_tail(fam, 2.0, 0.0, 2000, 5, 2);
  CHECK(est.p_hat == 1.0);
  CHECK(est.empirical_rate == 0.0);
}

TEST_CASE("tail estimate beyond the reachable set reports zero") {
  const FlightFamily cond = FlightFamily::conditional(Model::X, 2, 1.0, 1.0);
  const TailEstimate est = estimate_tail(cond, 4.0, 1.0, 2000, 5, 2);
  CHECK(est.p_hat == 0.0);
  CHECK(std::isinf(est.empirical_rate));
  CHECK(est.ci_low == 0.0);
}

TEST_CASE("tail estimate covers the exact Z2 tail") {
  const FlightFamily fam = FlightFamily::standard(2, 1.0, 1.0);
  const double t = 10.0, r = 0.99;
  const TailEstimate est = estimate_tail(fam, t, r, 1000000, 1234, 0);
  const double exact = exact_tail_z2(1.0, 1.0, t, r);
  CHECK(est.ci_low <= exact);
  CHECK(exact <= est.ci_high);
}

TEST_CASE("tail estimate covers the quadrature tail for Z4") {
  const FlightFamily fam = FlightFamily::standard(4, 1.0, 1.0);
  const double t = 5.0, r = 0.5;
  const TailEstimate est = estimate_tail(fam, t, r, 200000, 77, 0);
  const double exact =
      standard_ac_mass(4, 1.0, 1.0, t, r * t, t) + std::exp(-t);  // a.c. tail + atom
  CHECK(est.ci_low <= exact);
  CHECK(exact <= est.ci_high);
  // One-sided consistency: the polynomial prefactor makes the finite-t tail
  // larger than e^{-t * rate}, so the empirical rate understates the analytic
  // 0.25 here.
  CHECK(est.empirical_rate < standard_rate_4d(1.0, 1.0, r));
}

TEST_CASE("99% Wilson intervals cover an exact probability in >= 95 of 100 runs") {
  const FlightFamily fam = FlightFamily::standard(2, 1.0, 1.0);
  const double t = 5.0, r = 0.5;
  const double exact = exact_tail_z2(1.0, 1.0, t, r);  // ~0.5118
  int covered = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    const TailEstimate est = estimate_tail(fam, t, r, 2000, 9000 + rep, 2);
    if (est.ci_low <= exact && exact <= est.ci_high) ++covered;
  }
  CHECK(covered >= 95);
}

TEST_CASE("empirical rate understates the analytic rate at finite t for Z2") {
  // p_t = exp(-t I_2(r)) exactly, so the empirical rate is consistent; the
  // fitted slope over a grid must recover I_2(r) closely.
  const FlightFamily fam = FlightFamily::standard(2, 1.0, 1.0);
  const std::vector<double> grid = {4.0, 6.0, 8.0, 10.0};
  const RateFit fit = fit_decay_rate(fam, 0.5, grid, 200000, 2718, 0);
  CHECK(fit.analytic_rate == doctest::Approx(0.1339745962155614).epsilon(1e-12));
  CHECK(std::abs(fit.decay_rate - fit.analytic_rate) < 0.02);
  CHECK(fit.decay_rate_ci_low < fit.decay_rate);
  CHECK(fit.decay_rate_ci_high > fit.decay_rate);
}

TEST_CASE("conditional fit tracks the n_t = round(t w) construction") {
  // For X d=2 the conditional tail is (1 - r^2/c^2)^{n_t/2} exactly, so with
  // integer t*w the empirical rate matches the analytic one up to noise.
  const FlightFamily fam = FlightFamily::conditional(Model::X, 2, 1.0, 1.0);
  const std::vector<double> grid = {6.0, 8.0, 10.0, 12.0};
  const RateFit fit = fit_decay_rate(fam, 0.5, grid, 100000, 99, 0);
  CHECK(fit.analytic_rate == doctest::Approx(0.1438410362258905).epsilon(1e-12));
  CHECK(std::abs(fit.decay_rate - fit.analytic_rate) < 0.3 * fit.analytic_rate);
}

TEST_CASE("feasibility gate refuses unobservable events and suggests a horizon") {
  const FlightFamily fam = FlightFamily::standard(2, 1.0, 1.0);
  const std::vector<double> grid = {100.0, 150.0, 200.0};
  CHECK_THROWS_AS(fit_decay_rate(fam, 0.9, grid, 100000, 1, 0), FeasibilityError);
  try {
    fit_decay_rate(fam, 0.9, grid, 100000, 1, 0);
  } catch (const FeasibilityError& e) {
    // exp(-t * rate) = 50/n at the suggested horizon.
    const double rate = standard_rate_2d(1.0, 1.0, 0.9);
    CHECK(e.suggested_t_max == doctest::Approx(std::log(100000.0 / 50.0) / rate));
    CHECK(e.suggested_t_max < 100.0);
  }
}

TEST_CASE("fit rejects degenerate grids") {
  const FlightFamily fam = FlightFamily::standard(2, 1.0, 1.0);
  const std::vector<double> two = {5.0, 10.0};
  CHECK_THROWS_AS(fit_decay_rate(fam, 0.5, two, 10000, 1, 0), std::invalid_argument);
  const std::vector<double> unsorted = {10.0, 5.0, 20.0};
  CHECK_THROWS_AS(fit_decay_rate(fam, 0.5, unsorted, 10000, 1, 0), std::invalid_argument);
}

TEST_CASE("exit probability dominates the endpoint tail and respects the bound") {
  const FlightFamily fam = FlightFamily::standard(2, 1.0, 1.0);
  const ExitEstimate est = estimate_exit_probability(fam, 10.0, 0.5, 100000, 31, 0);
  CHECK(est.exit.p_hat >= est.endpoint.p_hat);
  CHECK(est.exit.p_hat > 0.0);
  // The endpoint tail is exact for Z2; the exit probability must be at least it.
  CHECK(est.exit.ci_high >= exact_tail_z2(1.0, 1.0, 10.0, 0.5));
  CHECK_THROWS_AS(
      estimate_exit_probability(FlightFamily::conditional(Model::X, 2, 1.0, 1.0), 10.0, 0.5,
                                10000, 1, 0),
      std::invalid_argument);
}

TEST_CASE("identical families race to a ratio near 1") {
  const FlightFamily fam = FlightFamily::standard(2, 1.0, 1.0);
  const std::vector<double> grid = {4.0, 8.0};
  const auto rows = convergence_race(fam, fam, 0.3, grid, 100000, 5, 0);
  REQUIRE(rows.size() == 2);
  for (const RaceRow& row : rows) {
    CHECK(row.ratio == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("conditional w=2 beats standard lambda=1 in d=2") {
  const FlightFamily cond = FlightFamily::conditional(Model::X, 2, 2.0, 1.0);
  const FlightFamily stdf = FlightFamily::standard(2, 1.0, 1.0);
  const std::vector<double> grid = {5.0, 10.0, 15.0};
  const auto rows = convergence_race(cond, stdf, 0.3, grid, 200000, 6, 0);
  CHECK(rows.back().ratio < rows.front().ratio);
  CHECK(rows.back().ratio < 1.0);
}

TEST_CASE("conditional Y4 w=0.6 decays slower than standard Z4 inside the crossing") {
  const FlightFamily cond = FlightFamily::conditional(Model::Y, 4, 0.6, 1.0);
  const FlightFamily stdf = FlightFamily::standard(4, 1.0, 1.0);
  const std::vector<double> grid = {10.0, 20.0, 30.0};
  const auto rows = convergence_race(cond, stdf, 0.3, grid, 200000, 7, 0);
  CHECK(rows.back().ratio > rows.front().ratio);
}

TEST_CASE("estimates are reproducible and thread-count independent") {
  const FlightFamily fam = FlightFamily::standard(4, 1.0, 1.0);
  const TailEstimate a = estimate_tail(fam, 5.0, 0.5, 50000, 11, 1);
  const TailEstimate b = estimate_tail(fam, 5.0, 0.5, 50000, 11, 4);
  CHECK(a.p_hat == b.p_hat);
  CHECK(a.ci_low == b.ci_low);
  CHECK(a.ci_high == b.ci_high);
  CHECK(a.empirical_rate == b.empirical_rate);
}
