// Small statistics toolbox shared by the verification harness and tests:
// Wilson score intervals, least-squares slope fits, chi-square and
// Kolmogorov-Smirnov goodness-of-fit helpers.
#pragma once

#include <algorithm>
#include <cstdint>
#include <span>

namespace randflight {

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// 99% Wilson score interval for a binomial proportion.
WilsonInterval wilson_99(std::uint64_t successes, std::uint64_t n);

/// Ordinary least squares of y on x with intercept.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  // residual-based standard error of the slope
};
LinearFit ols_fit(std::span<const double> x, std::span<const double> y);

/// Pearson chi-square statistic against expected counts.
double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> expected);

/// Quantile of the chi-square distribution with dof degrees of freedom.
double chi_square_quantile(double p, int dof);

/// One-sample KS distance of sorted data against a CDF.
template <class Cdf>
double ks_statistic(std::span<const double> sorted_data, Cdf&& cdf) {
  const std::size_t n = sorted_data.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sorted_data[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, f - lo, hi - f});
  }
  return d;
}

/// Two-sample KS distance (both inputs sorted ascending).
double ks_statistic_two_sample(std::span<const double> sorted_a,
                               std::span<const double> sorted_b);

/// Asymptotic 1% critical values: c(0.01)/sqrt(n) with c(0.01) = 1.628, and
/// the two-sample analogue c(0.01)*sqrt((n_a+n_b)/(n_a*n_b)).
double ks_critical_1pct(std::size_t n);
double ks_critical_1pct_two_sample(std::size_t n_a, std::size_t n_b);

}  // namespace randflight
