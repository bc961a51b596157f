#include "randflight/densities.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "randflight/quadrature.hpp"

namespace randflight {

namespace {

constexpr double kLogPi = 1.1447298858494001741;  // log(pi)

double norm_of(std::span<const double> z) {
  double sq = 0.0;
  for (double x : z) sq += x * x;
  return std::sqrt(sq);
}

void check_dimension(int d, std::span<const double> z) {
  if (z.size() != static_cast<std::size_t>(d)) {
    throw std::invalid_argument("point dimension does not match density dimension");
  }
}

}  // namespace

IsotropicDensity make_isotropic_density(Model model, int d, int n, double c, double t) {
  if (model == Model::Z) {
    throw std::invalid_argument("conditional density is defined for models X and Y");
  }
  dirichlet_shape(model, d);  // validates (model, d)
  if (n < 1) throw std::invalid_argument("change count n must be >= 1");
  if (!(c > 0.0)) throw std::invalid_argument("speed c must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("horizon t must be positive");

  IsotropicDensity p;
  p.model = model;
  p.d = d;
  p.n = n;
  p.c = c;
  p.t = t;
  if (model == Model::X) {
    p.gamma_exp = static_cast<double>((n + 1) * (d - 1) - 1);
    p.beta = 0.5 * n * (d - 1) - 1.0;
    p.log_alpha = std::lgamma(0.5 * (n + 1) * (d - 1) + 0.5) - std::lgamma(0.5 * n * (d - 1)) -
                  0.5 * d * kLogPi - p.gamma_exp * std::log(c);
  } else {
    const double half = 0.5 * d - 1.0;
    p.gamma_exp = 2.0 * (n + 1) * half;
    p.beta = n * half - 1.0;
    p.log_alpha = std::lgamma((n + 1) * half + 1.0) - std::lgamma(n * half) -
                  0.5 * d * kLogPi - p.gamma_exp * std::log(c);
  }
  p.alpha = std::exp(p.log_alpha);
  return p;
}

double conditional_density_radial(const IsotropicDensity& p, double r) {
  const double ct = p.c * p.t;
  if (!(r < ct) || r < 0.0) return 0.0;
  const double support = (ct - r) * (ct + r);  // c^2 t^2 - r^2, no cancellation near the rim
  return std::exp(p.log_alpha - p.gamma_exp * std::log(p.t) + p.beta * std::log(support));
}

double conditional_density(const IsotropicDensity& p, std::span<const double> z) {
  check_dimension(p.d, z);
  return conditional_density_radial(p, norm_of(z));
}

double sphere_surface_area(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  return std::exp(std::numbers::ln2 + 0.5 * d * kLogPi - std::lgamma(0.5 * d));
}

double radial_marginal(const IsotropicDensity& p, double rho) {
  const double ct = p.c * p.t;
  if (!(rho >= 0.0) || rho >= ct) {
    throw std::domain_error("radius must lie in [0, c*t)");
  }
  return conditional_density_radial(p, rho) * sphere_surface_area(p.d) *
         std::pow(rho, p.d - 1);
}

double radial_cdf(const IsotropicDensity& p, double rho) {
  const double ct = p.c * p.t;
  if (rho <= 0.0) return 0.0;
  auto f = [&](double x) { return x < ct ? radial_marginal(p, x) : 0.0; };
  return integrate_radial(f, 0.0, std::min(rho, ct), ct);
}

double radial_tail(const IsotropicDensity& p, double rho) {
  const double ct = p.c * p.t;
  if (rho >= ct) return 0.0;
  auto f = [&](double x) { return x < ct ? radial_marginal(p, x) : 0.0; };
  return integrate_radial(f, std::max(rho, 0.0), ct, ct);
}

double standard_ac_density_2d_radial(double lambda, double c, double t, double r) {
  if (!(t > 0.0)) throw std::invalid_argument("horizon t must be positive");
  const double ct = c * t;
  if (!(r < ct) || r < 0.0) return 0.0;
  const double s = std::sqrt((ct - r) * (ct + r));
  return lambda / (2.0 * std::numbers::pi * c) * std::exp(-lambda * t + lambda / c * s) / s;
}

double standard_ac_density_2d(double lambda, double c, double t, std::span<const double> z) {
  check_dimension(2, z);
  return standard_ac_density_2d_radial(lambda, c, t, norm_of(z));
}

double standard_ac_density_4d_radial(double lambda, double c, double t, double r) {
  if (!(t > 0.0)) throw std::invalid_argument("horizon t must be positive");
  const double ct = c * t;
  if (!(r < ct) || r < 0.0) return 0.0;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double q = lambda / (c * c * t);
  return lambda / (c * c * c * c * t * t * t * pi2) * std::exp(-q * r * r) *
         (2.0 + q * (ct - r) * (ct + r));
}

double standard_ac_density_4d(double lambda, double c, double t, std::span<const double> z) {
  check_dimension(4, z);
  return standard_ac_density_4d_radial(lambda, c, t, norm_of(z));
}

double standard_radial_marginal(int d, double lambda, double c, double t, double rho) {
  const double ct = c * t;
  if (rho < 0.0 || rho >= ct) return 0.0;
  const double ac = d == 2 ? standard_ac_density_2d_radial(lambda, c, t, rho)
                  : d == 4 ? standard_ac_density_4d_radial(lambda, c, t, rho)
                           : throw std::invalid_argument(
                                 "standard-flight densities exist for d in {2, 4} only");
  return ac * sphere_surface_area(d) * std::pow(rho, d - 1);
}

double standard_ac_mass(int d, double lambda, double c, double t, double lo, double hi) {
  const double ct = c * t;
  lo = std::max(lo, 0.0);
  hi = std::min(hi, ct);
  if (hi <= lo) return 0.0;
  return integrate_radial(
      [&](double rho) { return standard_radial_marginal(d, lambda, c, t, rho); }, lo, hi, ct);
}

double poisson_mixture_density(int d, double lambda, double c, double t, double r, int n_max) {
  if (d != 2 && d != 4) {
    throw std::invalid_argument("mixture oracle exists for d in {2, 4} only");
  }
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const double ct = c * t;
  if (!(r < ct) || r < 0.0) return 0.0;

  const Model model = d == 2 ? Model::X : Model::Y;
  const double log_rate = std::log(lambda * t);
  const double support = (ct - r) * (ct + r);
  const double log_support = std::log(support);
  const double log_t = std::log(t);

  double sum = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const IsotropicDensity p = make_isotropic_density(model, d, n, c, t);
    const double log_term = -lambda * t + n * log_rate - std::lgamma(n + 1.0) + p.log_alpha -
                            p.gamma_exp * log_t + p.beta * log_support;
    const double term = std::exp(log_term);
    sum += term;
    // Past the Poisson mode the terms decay super-geometrically; stop once
    // they can no longer move the sum at double precision.
    if (n > lambda * t + 10.0 && term < 1e-16 * sum) break;
  }
  return sum;
}

}  // namespace randflight
