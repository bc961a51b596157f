#include "randflight/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace randflight {

GaussLegendreRule make_gauss_legendre(int n) {
  if (n < 2) throw std::invalid_argument("Gauss-Legendre rule needs at least 2 nodes");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess for the i-th root of P_n, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dpn = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dpn = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

const GaussLegendreRule& gauss_legendre_256() {
  static const GaussLegendreRule rule = make_gauss_legendre(kDefaultQuadratureNodes);
  return rule;
}

}  // namespace randflight
