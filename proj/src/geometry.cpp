#include "randflight/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace randflight {

const char* model_name(Model m) {
  switch (m) {
    case Model::X: return "X";
    case Model::Y: return "Y";
    case Model::Z: return "Z";
  }
  return "?";
}

Model model_from_name(std::string_view name) {
  if (name == "X" || name == "x") return Model::X;
  if (name == "Y" || name == "y") return Model::Y;
  if (name == "Z" || name == "z") return Model::Z;
  throw std::invalid_argument("model must be one of X, Y, Z (got \"" + std::string(name) + "\")");
}

double dirichlet_shape(Model model, int d) {
  switch (model) {
    case Model::X:
      if (d < 2) throw std::invalid_argument("model X requires d >= 2");
      return static_cast<double>(d - 1);
    case Model::Y:
      if (d < 3) throw std::invalid_argument("model Y requires d >= 3");
      return 0.5 * d - 1.0;
    case Model::Z:
      break;
  }
  throw std::invalid_argument("model Z has no Dirichlet duration law");
}

void sample_unit_direction(int d, RngStream& rng, std::span<double> out) {
  if (d < 2) throw std::invalid_argument("direction dimension must be >= 2");
  if (out.size() < static_cast<std::size_t>(d)) {
    throw std::invalid_argument("direction output span too small");
  }
  for (;;) {
    double sq = 0.0;
    for (int i = 0; i < d; ++i) {
      out[i] = rng.next_normal();
      sq += out[i] * out[i];
    }
    if (sq > 1e-100) {  // guards the measure-zero all-near-zero draw
      const double inv = 1.0 / std::sqrt(sq);
      for (int i = 0; i < d; ++i) out[i] *= inv;
      return;
    }
  }
}

std::vector<double> sample_unit_direction(int d, RngStream& rng) {
  std::vector<double> out(static_cast<std::size_t>(d > 0 ? d : 0));
  sample_unit_direction(d, rng, out);
  return out;
}

void sample_time_partition(Model model, int d, int n, double t, RngStream& rng,
                           std::vector<double>& tau) {
  const double a = dirichlet_shape(model, d);
  if (n < 1) throw std::invalid_argument("change count n must be >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("horizon t must be positive");
  tau.resize(static_cast<std::size_t>(n) + 1);
  double sum = 0.0;
  for (double& g : tau) {
    do {
      g = rng.next_gamma(a);
    } while (!(g > 0.0));  // underflow to 0 is possible for shape < 1
    sum += g;
  }
  const double scale = t / sum;
  for (double& g : tau) g *= scale;
}

TimePartition sample_time_partition(Model model, int d, int n, double t, RngStream& rng) {
  TimePartition p;
  p.horizon = t;
  sample_time_partition(model, d, n, t, rng, p.tau);
  return p;
}

}  // namespace randflight
