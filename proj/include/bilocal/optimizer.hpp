#pragma once

// Particle swarm optimizer with ring neighborhoods (maximization).
//
// Per iteration, for every particle i:
//   1. evaluate the current position (mean of `resamples` objective calls)
//   2. re-sample the personal best and fold the samples into its running mean
//   3. adopt the current position as personal best if its mean is higher
//   4. find the best personal best Lambda among ring neighbors within
//      `ring_radius` (the particle itself included)
//   5. delta += beta1 xi1 (pbest - x) + beta2 xi2 (Lambda - x)
//      x     += clamp(omega delta, -vmax, vmax)   (component-wise)
// Steps 1-3 complete for the whole swarm before any particle moves, so the
// outcome does not depend on evaluation order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace bilocal {

struct PsoConfig {
  std::size_t swarm_size = 30;
  std::size_t iterations = 500;
  double omega = 0.8;
  double beta1 = 0.5;
  double beta2 = 0.5;
  double vmax = 0.2;
  std::size_t ring_radius = 1;
  std::size_t resamples = 1;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on the first violated field constraint.
  void validate() const;

  bool operator==(const PsoConfig&) const = default;
};

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Fitness to maximize. Must be re-entrant.
using Objective = std::function<double(std::span<const double>)>;

/// Uniform [0, 1) stream backed by mt19937_64. Seeds are derived from the
/// run seed and a stream index through splitmix64, so every particle owns an
/// independent, reproducible stream.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> personal_best_position;
  double personal_best_value = 0.0;
  std::size_t personal_best_samples = 0;  // evaluations folded into the mean
};

struct Swarm {
  std::vector<Particle> particles;
  std::vector<RandomStream> streams;
  std::size_t iteration = 0;
};

struct TraceRecord {
  std::size_t iteration = 0;
  double best_value = 0.0;
  std::vector<double> best_position;
};

using OptimizationTrace = std::vector<TraceRecord>;

struct OptimizationResult {
  std::vector<double> best_position;
  double best_value = 0.0;
  OptimizationTrace trace;
};

/// Indices j whose circular distance to i is at most r, in ascending order.
/// Throws std::out_of_range if i >= n.
std::vector<std::size_t> ring_neighborhood(std::size_t i, std::size_t r, std::size_t n);

/// Positions uniform in the box, velocities uniform in [-vmax, vmax].
/// Personal bests start at -inf and are filled on the first step.
Swarm init_swarm(std::span<const Bounds> box, const PsoConfig& config);

void pso_step(Swarm& swarm, const Objective& objective, const PsoConfig& config);

/// Throws std::invalid_argument on an empty or non-finite box.
OptimizationResult optimize(const Objective& objective, std::span<const Bounds> box,
                            const PsoConfig& config);

OptimizationResult optimize(const Objective& objective, std::size_t dim, Bounds box,
                            const PsoConfig& config);

/// `iteration,best_value` CSV, one row per record.
std::string trace_to_csv(const OptimizationTrace& trace);

}  // namespace bilocal
