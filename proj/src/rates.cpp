#include "randflight/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace randflight {

double b_limit(Model model, int d, double w) {
  dirichlet_shape(model, d);  // validates (model, d); rejects Z
  if (!(w > 0.0)) throw std::invalid_argument("change rate w must lie in (0, inf)");
  return model == Model::X ? 0.5 * w * (d - 1) : w * (0.5 * d - 1.0);
}

namespace {

// log(c / sqrt(c^2 - r^2)) = -0.5 * log(1 - (r/c)^2), for r < c.
double log_depth(double c, double r) {
  const double u = (r / c) * (r / c);
  return -0.5 * std::log1p(-u);
}

}  // namespace

double conditional_rate(Model model, int d, double c, double w, double r) {
  const double b = b_limit(model, d, w);
  if (!(c > 0.0)) throw std::invalid_argument("speed c must be positive");
  if (r < 0.0) throw std::invalid_argument("radius must be nonnegative");
  if (r >= c) return kRateInfinity;
  return 2.0 * b * log_depth(c, r);
}

double standard_rate_2d(double lambda, double c, double r) {
  if (!(lambda > 0.0)) throw std::invalid_argument("intensity lambda must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("speed c must be positive");
  if (r < 0.0) throw std::invalid_argument("radius must be nonnegative");
  if (r > c) return kRateInfinity;
  const double u = (r / c) * (r / c);
  return lambda * (1.0 - std::sqrt(1.0 - u));
}

double standard_rate_4d(double lambda, double c, double r) {
  if (!(lambda > 0.0)) throw std::invalid_argument("intensity lambda must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("speed c must be positive");
  if (r < 0.0) throw std::invalid_argument("radius must be nonnegative");
  if (r > c) return kRateInfinity;
  const double u = r / c;
  return lambda * u * u;
}

double brownian_limit_rate(double sigma2, double r) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
  return r * r / (2.0 * sigma2);
}

const char* rate_kind_name(RateKind k) {
  switch (k) {
    case RateKind::conditional_x: return "conditional_x";
    case RateKind::conditional_y: return "conditional_y";
    case RateKind::standard_2d: return "standard_2d";
    case RateKind::standard_4d: return "standard_4d";
    case RateKind::brownian_limit: return "brownian_limit";
  }
  return "?";
}

RateFunction RateFunction::conditional(Model model, int d, double c, double w) {
  b_limit(model, d, w);  // validate
  RateFunction f;
  f.kind = model == Model::X ? RateKind::conditional_x : RateKind::conditional_y;
  f.d = d;
  f.c = c;
  f.w = w;
  return f;
}

RateFunction RateFunction::standard(int d, double lambda, double c) {
  if (d != 2 && d != 4) {
    throw std::invalid_argument("standard rate functions exist for d in {2, 4} only");
  }
  RateFunction f;
  f.kind = d == 2 ? RateKind::standard_2d : RateKind::standard_4d;
  f.d = d;
  f.c = c;
  f.lambda = lambda;
  return f;
}

RateFunction RateFunction::brownian(double sigma2) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
  RateFunction f;
  f.kind = RateKind::brownian_limit;
  f.sigma2 = sigma2;
  return f;
}

double RateFunction::operator()(double r) const {
  switch (kind) {
    case RateKind::conditional_x: return conditional_rate(Model::X, d, c, w, r);
    case RateKind::conditional_y: return conditional_rate(Model::Y, d, c, w, r);
    case RateKind::standard_2d: return standard_rate_2d(lambda, c, r);
    case RateKind::standard_4d: return standard_rate_4d(lambda, c, r);
    case RateKind::brownian_limit: return brownian_limit_rate(sigma2, r);
  }
  return kRateInfinity;
}

double RateFunction::scale_param() const {
  switch (kind) {
    case RateKind::conditional_x:
    case RateKind::conditional_y: return w;
    case RateKind::standard_2d:
    case RateKind::standard_4d: return lambda;
    case RateKind::brownian_limit: return sigma2;
  }
  return 0.0;
}

CrossingRadius crossing_radius_4d(double lambda, double c, double w) {
  if (!(lambda > 0.0)) throw std::invalid_argument("intensity lambda must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("speed c must be positive");
  if (!(w > 0.0 && w < lambda)) {
    throw std::invalid_argument(
        "crossing radius requires 0 < w < lambda; for w >= lambda the conditional rate "
        "dominates the standard one on the whole punctured ball");
  }
  const double xi = std::sqrt(1.0 - w / lambda);
  // In u = (r/c)^2 the crossing equation reads g(u) = -w log(1-u) - lambda u = 0.
  // g < 0 at u = xi^2 and g -> +inf as u -> 1, and g is strictly increasing on
  // (xi^2, 1), so bisection on this bracket finds the unique crossing.
  auto g = [&](double u) { return -w * std::log1p(-u) - lambda * u; };
  double lo = xi * xi;
  double hi = 1.0 - 1e-12;
  if (!(g(lo) < 0.0 && g(hi) > 0.0)) {
    throw std::logic_error("crossing bracket lost its sign change");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return {std::sqrt(0.5 * (lo + hi)), xi};
}

double rate_inf_over_tail(const RateFunction& rate, double r) {
  if (r <= 0.0) return 0.0;
  return rate(r);
}

RateComparison compare_rates(const RateFunction& a, const RateFunction& b,
                             std::span<const double> grid) {
  if (a.kind != RateKind::brownian_limit && b.kind != RateKind::brownian_limit &&
      a.c != b.c) {
    throw std::invalid_argument("compared rate functions must share the speed c");
  }
  RateComparison cmp;
  cmp.rows.reserve(grid.size());
  int prev_sign = 0;
  bool have_prev = false;
  for (double r : grid) {
    RateComparisonRow row;
    row.r = r;
    row.value_a = a(r);
    row.value_b = b(r);
    if (row.value_a == row.value_b) {
      row.sign = 0;  // covers inf vs inf
    } else {
      row.sign = row.value_a > row.value_b ? 1 : -1;
    }
    if (have_prev && row.sign != 0 && prev_sign != 0 && row.sign != prev_sign) {
      cmp.sign_change_radii.push_back(r);
    }
    if (row.sign != 0) {
      prev_sign = row.sign;
      have_prev = true;
    }
    cmp.rows.push_back(row);
  }
  return cmp;
}

}  // namespace randflight
