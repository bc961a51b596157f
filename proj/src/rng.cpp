#include "randflight/rng.hpp"

#include <bit>
#include <cmath>

namespace randflight {

namespace detail {

std::uint64_t mix_gamma(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
  z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
  z = (z ^ (z >> 33)) | 1ULL;
  const int transitions = std::popcount(z ^ (z >> 1));
  return (transitions < 24) ? z ^ 0xAAAAAAAAAAAAAAAAULL : z;
}

}  // namespace detail

double RngStream::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_uniform() - 1.0;
    v = 2.0 * next_uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

double RngStream::next_exponential() { return -std::log(next_uniform_open()); }

double RngStream::next_gamma(double shape) {
  if (!(shape > 0.0)) {
    throw std::invalid_argument("gamma shape must be positive");
  }
  if (shape < 1.0) {
    const double g = next_gamma(shape + 1.0);
    const double u = next_uniform_open();
    return g * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace randflight
