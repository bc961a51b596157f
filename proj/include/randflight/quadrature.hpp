// Gauss-Legendre quadrature, including the sin-substitution rule that removes
// the integrable (R^2 - rho^2)^beta endpoint singularity of the radial
// densities.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace randflight {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

/// Nodes and weights of the n-point rule (Newton iteration on P_n).
GaussLegendreRule make_gauss_legendre(int n);

/// Cached default rule shared by the density integrals.
const GaussLegendreRule& gauss_legendre_256();

inline constexpr int kDefaultQuadratureNodes = 256;

template <class F>
double integrate_gl(F&& f, double a, double b, const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

template <class F>
double integrate_gl(F&& f, double a, double b, int n_nodes = kDefaultQuadratureNodes) {
  if (n_nodes == kDefaultQuadratureNodes) {
    return integrate_gl(f, a, b, gauss_legendre_256());
  }
  return integrate_gl(f, a, b, make_gauss_legendre(n_nodes));
}

/// Integrates f over [lo, hi] c [0, R] where f may diverge like
/// (R^2 - rho^2)^beta, beta > -1, at rho = R. Substituting rho = R sin(theta)
/// turns the boundary factor into cos(theta)^(2 beta + 1), which is bounded
/// for beta >= -1/2; every density in this project has 2 beta + 1 equal to a
/// nonnegative integer, so the transformed integrand is smooth and the rule
/// converges spectrally.
template <class F>
double integrate_radial(F&& f, double lo, double hi, double R,
                        int n_nodes = kDefaultQuadratureNodes) {
  if (!(R > 0.0) || hi <= lo) return 0.0;
  const double theta_lo = std::asin(std::clamp(lo / R, 0.0, 1.0));
  const double theta_hi = std::asin(std::clamp(hi / R, 0.0, 1.0));
  auto g = [&](double theta) {
    const double rho = R * std::sin(theta);
    return f(rho) * R * std::cos(theta);
  };
  return integrate_gl(g, theta_lo, theta_hi, n_nodes);
}

}  // namespace randflight
