// Throughput comparison of the serial reference kernels against the OpenMP
// ones. Not a correctness test (the unit suite asserts count-identical
// results); this prints samples/sec and the parallel speedup.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "randflight/mc.hpp"

using namespace randflight;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_case(const char* name, const FlightSpec& spec, double threshold,
                std::uint64_t n_samples) {
  const auto t0 = std::chrono::steady_clock::now();
  const TailCounts serial = count_tail_events_serial(spec, threshold, 42, 0, n_samples);
  const double serial_s = seconds_since(t0);

  const int threads = omp_get_max_threads();
  const auto t1 = std::chrono::steady_clock::now();
  const TailCounts parallel = count_tail_events(spec, threshold, 42, 0, n_samples, threads);
  const double parallel_s = seconds_since(t1);

  const bool identical = serial.endpoint_exceed == parallel.endpoint_exceed &&
                         serial.max_exceed == parallel.max_exceed &&
                         serial.zero_changes == parallel.zero_changes;
  std::printf("%-28s serial %8.3fs (%.2e/s) | %d threads %8.3fs (%.2e/s) | x%.2f %s\n", name,
              serial_s, n_samples / serial_s, threads, parallel_s, n_samples / parallel_s,
              serial_s / parallel_s, identical ? "counts identical" : "COUNTS DIFFER");
}

}  // namespace

int main() {
  const std::uint64_t n = 1000000;
  bench_case("Z2 t=10 endpoint+max", FlightSpec::standard(2, 1.0, 1.0, 10.0), 5.0, n);
  bench_case("Z4 t=10 endpoint+max", FlightSpec::standard(4, 1.0, 1.0, 10.0), 5.0, n);
  bench_case("X2 n=10 endpoint+max", FlightSpec::conditional(Model::X, 2, 1.0, 10, 10.0), 5.0, n);
  bench_case("Y4 n=10 endpoint+max", FlightSpec::conditional(Model::Y, 4, 1.0, 10, 10.0), 5.0, n);
  return 0;
}
