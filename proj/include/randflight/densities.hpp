// Closed-form displacement densities: the conditional isotropic density
// h_d(z,t;n) = alpha(n) t^{-gamma(n)} (c^2 t^2 - ||z||^2)^{beta(n)} with the
// per-model parameter table, the absolutely continuous parts of the
// non-conditional d=2 / d=4 laws, radial marginals and masses, and the
// Poisson-mixture oracle tying the two together.
#pragma once

#include <span>

#include "randflight/geometry.hpp"

namespace randflight {

/// Parameter bundle of the conditional isotropic density on the ball of
/// radius c*t. alpha is kept in log form as well; everything is evaluated
/// through log-gamma so large n*d stays finite.
struct IsotropicDensity {
  Model model = Model::X;  // X or Y
  int d = 2;
  int n = 1;
  double c = 1.0;
  double t = 1.0;
  double gamma_exp = 0.0;  // time exponent gamma(n)
  double beta = 0.0;       // boundary exponent beta(n), always > -1
  double alpha = 0.0;      // normalizer alpha(n)
  double log_alpha = 0.0;
};

/// Builds the table entry for (model, d, n, c, t):
///   X: gamma = (n+1)(d-1)-1,   beta = n(d-1)/2 - 1,
///      alpha = G((n+1)(d-1)/2 + 1/2) / (G(n(d-1)/2) pi^{d/2} c^gamma)
///   Y: gamma = 2(n+1)(d/2-1),  beta = n(d/2-1) - 1,
///      alpha = G((n+1)(d/2-1) + 1) / (G(n(d/2-1)) pi^{d/2} c^gamma)
/// Throws std::invalid_argument for invalid (model, d, n, c, t).
IsotropicDensity make_isotropic_density(Model model, int d, int n, double c, double t);

/// h_d at radius r; 0 for r >= c*t (boundary convention even where the
/// formula diverges: the singularity is integrable and lives on a null set).
double conditional_density_radial(const IsotropicDensity& p, double r);

/// h_d at a point z in R^d (depends on z only through its norm).
double conditional_density(const IsotropicDensity& p, std::span<const double> z);

/// Density of the radius: h_d(rho) * (2 pi^{d/2} / G(d/2)) * rho^{d-1}.
/// Domain [0, c*t); throws std::domain_error outside.
double radial_marginal(const IsotropicDensity& p, double rho);

/// Mass of the radial marginal over [0, rho] (clamped to the support);
/// sin-substitution quadrature, accurate to ~1e-12.
double radial_cdf(const IsotropicDensity& p, double rho);

/// Mass over [rho, c*t), computed directly so small tails keep full relative
/// accuracy.
double radial_tail(const IsotropicDensity& p, double rho);

/// Surface area of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_surface_area(int d);

/// Absolutely continuous part of the standard-flight law, d = 2:
///   lambda/(2 pi c) * exp(-lambda t + (lambda/c) s) / s,  s = sqrt(c^2t^2 - r^2)
/// for r < c t, else 0. The remaining mass e^{-lambda t} sits on the sphere
/// of radius c t.
double standard_ac_density_2d_radial(double lambda, double c, double t, double r);
double standard_ac_density_2d(double lambda, double c, double t, std::span<const double> z);

/// Absolutely continuous part for d = 4:
///   lambda/(c^4 t^3 pi^2) * exp(-(lambda/(c^2 t)) r^2)
///     * (2 + (lambda/(c^2 t)) (c^2 t^2 - r^2))
/// for r < c t, else 0.
double standard_ac_density_4d_radial(double lambda, double c, double t, double r);
double standard_ac_density_4d(double lambda, double c, double t, std::span<const double> z);

/// Radial marginal of the a.c. part (d in {2,4}).
double standard_radial_marginal(int d, double lambda, double c, double t, double rho);

/// Mass of the a.c. part over [lo, hi] (clamped to [0, c*t]).
double standard_ac_mass(int d, double lambda, double c, double t, double lo, double hi);

/// Independent route to the a.c. density: sum over n >= 1 of
/// Poisson(lambda t){n} * h_d(r, t; n), model X for d = 2 and Y for d = 4.
/// Terms are added until they fall below 1e-16 of the running sum (past the
/// Poisson mode) or n_max is reached.
double poisson_mixture_density(int d, double lambda, double c, double t, double r,
                               int n_max = 80);

}  // namespace randflight
