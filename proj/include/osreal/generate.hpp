#pragma once

#include "osreal/metric.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace osreal {

class WeightedInstance;  // realize.hpp

/// Deterministic seeded randomness. The engine is std::mt19937_64 (a
/// bit-exact, standardized generator) and every draw below is written out
/// explicitly, so corpora reproduce across platforms and toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform draw in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n);

  /// Uniform draw in [lo, hi], inclusive.
  long long range(long long lo, long long hi);

  /// Strictly positive rational with numerator in [1, max_num] and
  /// denominator in [1, max_den].
  Rational positive_rational(long long max_num, long long max_den);

 private:
  std::mt19937_64 engine_;
};

struct GeneratorConfig {
  std::size_t terminal_count = 4;
  std::size_t path_count = 4;
  long long weight_max_num = 12;  // numerators drawn from [1, weight_max_num]
  long long weight_max_den = 1;   // denominators drawn from [1, weight_max_den]
  std::uint64_t seed = 1;
  int trajectory_tries = 48;   // per inserted path before the pair is skipped
  int weight_tries = 24;       // weight redraws per trajectory attempt
  int max_steps = 4;           // soft cap on crossings per random trajectory
};

/// Random nest built by feasibility-checked random path insertion: every
/// committed path is a shortest path for its terminal pair under the
/// instance's weights, so the derived distance table verifies against the
/// instance and is Monge with respect to the boundary order.
WeightedInstance gen_random_nest(const GeneratorConfig& cfg);

/// Random quasi-metric: positive integer entries closed under min-plus
/// relaxation. Triangle-valid by construction; realizability is not
/// guaranteed.
QuasiMetric gen_random_quasimetric(std::size_t k, std::uint64_t seed);

/// Distance table of a random two-way weighted boundary ring with a few
/// non-crossing two-way chords: a planar instance with all terminals on the
/// outer face, hence always realizable. Cheap at large k.
QuasiMetric gen_boundary_ring_metric(std::size_t k, std::uint64_t seed);

/// Terminal naming used by the generators: t01, t02, ...
std::vector<std::string> generated_terminal_names(std::size_t k);

}  // namespace osreal
