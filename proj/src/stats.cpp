#include "randflight/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>

namespace randflight {

namespace {
constexpr double kZ99 = 2.5758293035489004;  // Phi^{-1}(0.995)
constexpr double kKs99 = 1.628;              // Kolmogorov distribution, alpha = 0.01
}  // namespace

WilsonInterval wilson_99(std::uint64_t successes, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Wilson interval needs n > 0");
  if (successes > n) throw std::invalid_argument("successes exceed trials");
  const double p = static_cast<double>(successes) / static_cast<double>(n);
  const double z2n = kZ99 * kZ99 / static_cast<double>(n);
  const double denom = 1.0 + z2n;
  const double center = (p + 0.5 * z2n) / denom;
  const double half =
      kZ99 * std::sqrt((p * (1.0 - p) + 0.25 * z2n) / static_cast<double>(n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

LinearFit ols_fit(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = x.size();
  if (m != y.size() || m < 3) {
    throw std::invalid_argument("slope fit needs at least 3 matched points");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("slope fit needs non-constant x");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    rss += e * e;
  }
  fit.slope_se = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
  return fit;
}

double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw std::invalid_argument("chi-square needs matched non-empty counts");
  }
  double chi2 = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw std::invalid_argument("expected counts must be positive");
    const double diff = static_cast<double>(observed[i]) - expected[i];
    chi2 += diff * diff / expected[i];
  }
  return chi2;
}

double chi_square_quantile(double p, int dof) {
  if (dof < 1) throw std::invalid_argument("chi-square needs dof >= 1");
  return boost::math::quantile(boost::math::chi_squared(dof), p);
}

double ks_statistic_two_sample(std::span<const double> sorted_a,
                               std::span<const double> sorted_b) {
  const std::size_t na = sorted_a.size(), nb = sorted_b.size();
  if (na == 0 || nb == 0) throw std::invalid_argument("two-sample KS needs non-empty samples");
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < na && ib < nb) {
    const double xa = sorted_a[ia], xb = sorted_b[ib];
    if (xa <= xb) ++ia;
    if (xb <= xa) ++ib;
    const double fa = static_cast<double>(ia) / static_cast<double>(na);
    const double fb = static_cast<double>(ib) / static_cast<double>(nb);
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return kKs99 / std::sqrt(static_cast<double>(n)); }

double ks_critical_1pct_two_sample(std::size_t n_a, std::size_t n_b) {
  const double a = static_cast<double>(n_a), b = static_cast<double>(n_b);
  return kKs99 * std::sqrt((a + b) / (a * b));
}

}  // namespace randflight
