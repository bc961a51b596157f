// Large-deviation rate functions for the scaled flight endpoints: conditional
// (change count growing like t*w), standard d=2 / d=4, and the Brownian limit;
// plus the crossing radius where the conditional and standard d=4 rates swap
// dominance, tail infima, and grid comparisons.
#pragma once

#include <limits>
#include <span>
#include <vector>

#include "randflight/geometry.hpp"

namespace randflight {

inline constexpr double kRateInfinity = std::numeric_limits<double>::infinity();

/// Limit of beta(t*w_t)/t when w_t -> w: w(d-1)/2 for model X, w(d/2-1) for
/// model Y. The matching time-exponent limit gamma(t*w_t)/t is 2*b.
double b_limit(Model model, int d, double w);

/// Conditional rate at radius r: 2*b_limit(model,d,w)*log(c/sqrt(c^2-r^2))
/// for r < c, +infinity for r >= c.
double conditional_rate(Model model, int d, double c, double w, double r);

/// Standard-flight rate, d=2: lambda*(1 - sqrt(1 - r^2/c^2)) for r <= c
/// (value lambda at r = c), +infinity beyond.
double standard_rate_2d(double lambda, double c, double r);

/// Standard-flight rate, d=4: (lambda/c^2)*r^2 for r <= c, +infinity beyond.
double standard_rate_4d(double lambda, double c, double r);

/// Brownian scaling limit (lambda -> inf, c^2/lambda -> sigma^2): r^2/(2 sigma^2).
double brownian_limit_rate(double sigma2, double r);

enum class RateKind { conditional_x, conditional_y, standard_2d, standard_4d, brownian_limit };

const char* rate_kind_name(RateKind k);

/// A radial rate function r -> [0, +inf]: 0 at r = 0, nondecreasing, lower
/// semi-continuous, +infinity outside the reachable set.
struct RateFunction {
  RateKind kind = RateKind::standard_2d;
  int d = 2;
  double c = 1.0;
  double w = 0.0;       // conditional kinds
  double lambda = 0.0;  // standard kinds
  double sigma2 = 0.0;  // brownian_limit

  static RateFunction conditional(Model model, int d, double c, double w);
  static RateFunction standard(int d, double lambda, double c);
  static RateFunction brownian(double sigma2);

  double operator()(double r) const;

  /// Rate parameter for CSV export: w, lambda, or sigma2 depending on kind.
  double scale_param() const;
};

/// Radius multiple gamma in (xi, 1), xi = sqrt(1 - w/lambda), where the
/// conditional d=4 rate crosses the standard one:
///   2 w log(c / sqrt(c^2 - (gamma c)^2)) = lambda gamma^2.
/// Solved by bisection on u = gamma^2 over (xi^2, 1) to 1e-12; the bracket
/// provably contains exactly one root. Requires 0 < w < lambda (for
/// w >= lambda the conditional rate dominates on the whole punctured ball and
/// no crossing exists); throws std::invalid_argument otherwise.
struct CrossingRadius {
  double gamma = 0.0;
  double xi = 0.0;
};
CrossingRadius crossing_radius_4d(double lambda, double c, double w);

/// inf over {||z|| >= r} of the rate; equals the value at r by radial
/// monotonicity (0 for r <= 0).
double rate_inf_over_tail(const RateFunction& rate, double r);

/// Pointwise comparison of two rate functions on a radius grid. sign is the
/// sign of a - b with +inf treated as absorbing (inf vs inf compares equal).
struct RateComparisonRow {
  double r = 0.0;
  double value_a = 0.0;
  double value_b = 0.0;
  int sign = 0;
};
struct RateComparison {
  std::vector<RateComparisonRow> rows;
  std::vector<double> sign_change_radii;  // grid radii where sign flips
};
RateComparison compare_rates(const RateFunction& a, const RateFunction& b,
                             std::span<const double> grid);

}  // namespace randflight
