// Geometric sampling primitives: uniform directions on the unit sphere and
// rescaled Dirichlet time partitions for the two conditional flight models.
#pragma once

#include <span>
#include <vector>

#include "randflight/rng.hpp"

namespace randflight {

/// The three flight laws: X/Y are conditional on the change count n (Dirichlet
/// displacement durations with parameters d-1 resp. d/2-1); Z is the standard
/// flight driven by a homogeneous Poisson process.
enum class Model { X, Y, Z };

const char* model_name(Model m);
Model model_from_name(std::string_view name);

/// Dirichlet parameter of the duration law: d-1 for X (d >= 2),
/// d/2-1 for Y (d >= 3). Throws std::invalid_argument otherwise.
double dirichlet_shape(Model model, int d);

/// Fills out[0..d) with a point uniform on S^{d-1} (d independent normals,
/// normalized). Requires d >= 2 and out.size() >= d.
void sample_unit_direction(int d, RngStream& rng, std::span<double> out);
std::vector<double> sample_unit_direction(int d, RngStream& rng);

/// Displacement durations tau_1..tau_{n+1}, all positive, summing to the
/// horizon t.
struct TimePartition {
  std::vector<double> tau;
  double horizon = 0.0;
};

/// Draws tau with the rescaled Dirichlet joint law of the given model:
/// n+1 independent Gamma(a) variates normalized to sum 1 and scaled by t.
/// Requires n >= 1 and t > 0.
TimePartition sample_time_partition(Model model, int d, int n, double t, RngStream& rng);

/// In-place variant used by the batch kernels; tau is resized to n+1.
void sample_time_partition(Model model, int d, int n, double t, RngStream& rng,
                           std::vector<double>& tau);

}  // namespace randflight
