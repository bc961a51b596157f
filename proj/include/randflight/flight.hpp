// Flight trajectory simulators: conditional flights X_d / Y_d (fixed change
// count) and standard flights Z_2 / Z_4 (Poisson-driven changes), plus the
// piecewise-linear Path record and its extremal statistic.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "randflight/geometry.hpp"
#include "randflight/rng.hpp"

namespace randflight {

/// Which flight to simulate. Conditional models (X, Y) carry the change
/// count n; the standard model (Z) carries the Poisson intensity lambda.
struct FlightSpec {
  Model model = Model::X;
  int d = 2;
  double c = 1.0;
  double t = 1.0;
  int n = -1;           // X, Y only
  double lambda = 0.0;  // Z only

  static FlightSpec conditional(Model model, int d, double c, int n, double t);
  static FlightSpec standard(int d, double c, double lambda, double t);

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Piecewise-linear trajectory from the origin. vertices holds the
/// n_changes+2 turning points (origin, each change, endpoint) flattened
/// row-major; change_times are the n_changes interior change epochs.
struct Path {
  int d = 0;
  double c = 0.0;
  double t = 0.0;
  int n_changes = 0;
  std::vector<double> vertices;
  std::vector<double> change_times;

  int vertex_count() const { return n_changes + 2; }
  std::span<const double> vertex(int i) const {
    return {vertices.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
  }
  std::span<const double> endpoint() const { return vertex(vertex_count() - 1); }
  double endpoint_norm() const;
};

/// sup over s in [0,t] of ||position(s)||. The squared norm is convex along
/// each straight segment, so the supremum is attained at a vertex.
double running_max_norm(const Path& path);

/// Endpoint-only view of one simulated flight; what the Monte Carlo batch
/// kernels consume. max_norm >= endpoint_norm holds exactly (the endpoint is
/// one of the vertices the maximum ranges over).
struct EndpointSample {
  double endpoint_norm = 0.0;
  double max_norm = 0.0;
  int n_changes = 0;
};

/// Reusable simulator bound to one FlightSpec. Owns scratch buffers so the
/// per-sample hot path allocates nothing; each thread keeps its own instance.
/// sample_endpoint and sample_path consume the stream identically, so the
/// endpoint of sample_path(rng) equals sample_endpoint(rng') for equal
/// streams.
class FlightSampler {
 public:
  explicit FlightSampler(const FlightSpec& spec);

  const FlightSpec& spec() const { return spec_; }

  EndpointSample sample_endpoint(RngStream& rng);
  Path sample_path(RngStream& rng);

 private:
  int sample_durations(RngStream& rng);  // fills tau_, returns change count

  FlightSpec spec_;
  std::vector<double> tau_;
  std::vector<double> dir_;
  std::vector<double> pos_;
};

/// One-shot wrappers around FlightSampler.
Path simulate_conditional(const FlightSpec& spec, RngStream& rng);
Path simulate_standard(const FlightSpec& spec, RngStream& rng);
Path simulate(const FlightSpec& spec, RngStream& rng);

}  // namespace randflight
