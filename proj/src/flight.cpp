#include "randflight/flight.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randflight {

FlightSpec FlightSpec::conditional(Model model, int d, double c, int n, double t) {
  FlightSpec s;
  s.model = model;
  s.d = d;
  s.c = c;
  s.n = n;
  s.t = t;
  s.validate();
  return s;
}

FlightSpec FlightSpec::standard(int d, double c, double lambda, double t) {
  FlightSpec s;
  s.model = Model::Z;
  s.d = d;
  s.c = c;
  s.lambda = lambda;
  s.t = t;
  s.validate();
  return s;
}

void FlightSpec::validate() const {
  if (!(c > 0.0)) throw std::invalid_argument("speed c must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("horizon t must be positive");
  switch (model) {
    case Model::X:
      if (d < 2) throw std::invalid_argument("model X requires d >= 2");
      break;
    case Model::Y:
      if (d < 3) throw std::invalid_argument("model Y requires d >= 3");
      break;
    case Model::Z:
      if (d != 2 && d != 4) {
        throw std::invalid_argument(
            "model Z is supported only for d in {2, 4}; no closed-form law exists otherwise");
      }
      if (!(lambda > 0.0)) throw std::invalid_argument("model Z requires lambda > 0");
      if (n >= 0) throw std::invalid_argument("model Z takes lambda, not a change count n");
      return;
  }
  if (n < 1) throw std::invalid_argument("conditional models require change count n >= 1");
  if (lambda != 0.0) {
    throw std::invalid_argument("conditional models take n, not an intensity lambda");
  }
}

double Path::endpoint_norm() const {
  double sq = 0.0;
  const auto e = endpoint();
  for (double x : e) sq += x * x;
  return std::sqrt(sq);
}

double running_max_norm(const Path& path) {
  double max_sq = 0.0;
  for (int i = 0; i < path.vertex_count(); ++i) {
    double sq = 0.0;
    for (double x : path.vertex(i)) sq += x * x;
    max_sq = std::max(max_sq, sq);
  }
  return std::sqrt(max_sq);
}

FlightSampler::FlightSampler(const FlightSpec& spec) : spec_(spec) {
  spec_.validate();
  dir_.resize(static_cast<std::size_t>(spec_.d));
  pos_.resize(static_cast<std::size_t>(spec_.d));
  if (spec_.model != Model::Z) tau_.reserve(static_cast<std::size_t>(spec_.n) + 1);
}

int FlightSampler::sample_durations(RngStream& rng) {
  if (spec_.model == Model::Z) {
    // Poisson change epochs as partial sums of exponential gaps; the residual
    // t - S_N is the final duration. Given N(t) = n the epochs are uniform
    // order statistics on [0, t].
    tau_.clear();
    double prev = 0.0;
    for (;;) {
      const double gap = rng.next_exponential() / spec_.lambda;
      if (prev + gap >= spec_.t) {
        tau_.push_back(spec_.t - prev);
        break;
      }
      tau_.push_back(gap);
      prev += gap;
    }
    return static_cast<int>(tau_.size()) - 1;
  }
  sample_time_partition(spec_.model, spec_.d, spec_.n, spec_.t, rng, tau_);
  return spec_.n;
}

EndpointSample FlightSampler::sample_endpoint(RngStream& rng) {
  const int n = sample_durations(rng);
  const int d = spec_.d;
  double* pos = pos_.data();
  const double* dir = dir_.data();
  std::fill(pos_.begin(), pos_.end(), 0.0);
  double max_sq = 0.0;
  double sq = 0.0;
  for (int j = 0; j <= n; ++j) {
    sample_unit_direction(d, rng, dir_);
    const double step = spec_.c * tau_[j];
    sq = 0.0;
    for (int k = 0; k < d; ++k) {
      pos[k] += step * dir[k];
      sq += pos[k] * pos[k];
    }
    max_sq = std::max(max_sq, sq);
  }
  return {std::sqrt(sq), std::sqrt(max_sq), n};
}

Path FlightSampler::sample_path(RngStream& rng) {
  const int n = sample_durations(rng);
  const int d = spec_.d;

  Path path;
  path.d = d;
  path.c = spec_.c;
  path.t = spec_.t;
  path.n_changes = n;
  path.vertices.assign(static_cast<std::size_t>(n + 2) * d, 0.0);
  path.change_times.resize(static_cast<std::size_t>(n));

  std::fill(pos_.begin(), pos_.end(), 0.0);
  double clock = 0.0;
  for (int j = 0; j <= n; ++j) {
    sample_unit_direction(d, rng, dir_);
    const double step = spec_.c * tau_[j];
    for (int k = 0; k < d; ++k) pos_[k] += step * dir_[k];
    std::copy(pos_.begin(), pos_.end(),
              path.vertices.begin() + static_cast<std::size_t>(j + 1) * d);
    if (j < n) {
      clock += tau_[j];
      path.change_times[j] = clock;
    }
  }
  return path;
}

Path simulate_conditional(const FlightSpec& spec, RngStream& rng) {
  if (spec.model == Model::Z) {
    throw std::invalid_argument("simulate_conditional requires model X or Y");
  }
  FlightSampler sampler(spec);
  return sampler.sample_path(rng);
}

Path simulate_standard(const FlightSpec& spec, RngStream& rng) {
  if (spec.model != Model::Z) {
    throw std::invalid_argument("simulate_standard requires model Z");
  }
  FlightSampler sampler(spec);
  return sampler.sample_path(rng);
}

Path simulate(const FlightSpec& spec, RngStream& rng) {
  FlightSampler sampler(spec);
  return sampler.sample_path(rng);
}

}  // namespace randflight
