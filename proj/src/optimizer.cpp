#include "bilocal/optimizer.hpp"

#include "bilocal/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bilocal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid PSO config: ") + what);
}

double safe_eval(const Objective& f, std::span<const double> x) {
  const double v = f(x);
  return std::isfinite(v) ? v : kNegInf;
}

double sample_mean(const Objective& f, std::span<const double> x, std::size_t k) {
  double sum = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    const double v = safe_eval(f, x);
    if (v == kNegInf) return kNegInf;
    sum += v;
  }
  return sum / static_cast<double>(k);
}

std::size_t global_best_index(const Swarm& swarm) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < swarm.particles.size(); ++i)
    if (swarm.particles[i].personal_best_value > swarm.particles[best].personal_best_value)
      best = i;
  return best;
}

}  // namespace

void PsoConfig::validate() const {
  require(swarm_size >= 2, "swarm_size must be at least 2");
  require(iterations >= 1, "iterations must be at least 1");
  require(ring_radius >= 1, "ring_radius must be at least 1");
  require(ring_radius < swarm_size / 2 + 1, "ring_radius must be below swarm_size/2 + 1");
  require(std::isfinite(vmax) && vmax > 0.0, "vmax must be positive");
  require(resamples >= 1, "resamples must be at least 1");
  require(std::isfinite(omega) && std::isfinite(beta1) && std::isfinite(beta2),
          "omega, beta1 and beta2 must be finite");
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state))};
  engine_.seed(seq);
}

double RandomStream::uniform() {
  // 53 random mantissa bits; std::uniform_real_distribution is not portable.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> ring_neighborhood(std::size_t i, std::size_t r, std::size_t n) {
  if (i >= n) {
    std::ostringstream msg;
    msg << "particle index " << i << " out of range for swarm of " << n;
    throw std::out_of_range(msg.str());
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t d = i > j ? i - j : j - i;
    if (std::min(d, n - d) <= r) out.push_back(j);
  }
  return out;
}

Swarm init_swarm(std::span<const Bounds> box, const PsoConfig& config) {
  config.validate();
  if (box.empty()) throw std::invalid_argument("search box must have at least one dimension");
  for (const auto& b : box) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi)
      throw std::invalid_argument("search box bounds must be finite with lo <= hi");
  }
  Swarm swarm;
  swarm.particles.resize(config.swarm_size);
  swarm.streams.reserve(config.swarm_size);
  for (std::size_t i = 0; i < config.swarm_size; ++i) {
    swarm.streams.emplace_back(config.seed, i);
    auto& rng = swarm.streams.back();
    auto& p = swarm.particles[i];
    p.position.resize(box.size());
    p.velocity.resize(box.size());
    for (std::size_t d = 0; d < box.size(); ++d) {
      p.position[d] = rng.uniform(box[d].lo, box[d].hi);
      p.velocity[d] = rng.uniform(-config.vmax, config.vmax);
    }
    p.personal_best_position = p.position;
    p.personal_best_value = kNegInf;
    p.personal_best_samples = 0;
  }
  return swarm;
}

void pso_step(Swarm& swarm, const Objective& objective, const PsoConfig& config) {
  auto& particles = swarm.particles;
  const std::size_t n = particles.size();
  const std::size_t k = config.resamples;

  for (auto& p : particles) {
    const double current = sample_mean(objective, p.position, k);
    if (p.personal_best_samples > 0) {
      // Fold fresh samples of the incumbent into its running mean.
      const double fresh = sample_mean(objective, p.personal_best_position, k);
      const auto old_n = static_cast<double>(p.personal_best_samples);
      const auto new_n = static_cast<double>(p.personal_best_samples + k);
      if (fresh == kNegInf || p.personal_best_value == kNegInf) {
        p.personal_best_value = kNegInf;
      } else {
        p.personal_best_value =
            (p.personal_best_value * old_n + fresh * static_cast<double>(k)) / new_n;
      }
      p.personal_best_samples += k;
    }
    if (current > p.personal_best_value) {
      p.personal_best_position = p.position;
      p.personal_best_value = current;
      p.personal_best_samples = k;
    }
  }

  std::vector<std::size_t> leader(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = i;
    for (std::size_t j : ring_neighborhood(i, config.ring_radius, n))
      if (particles[j].personal_best_value > particles[best].personal_best_value) best = j;
    leader[i] = best;
  }
  // Leaders are read from a snapshot so moving particle i cannot affect i+1.
  std::vector<std::vector<double>> leader_pos(n);
  for (std::size_t i = 0; i < n; ++i)
    leader_pos[i] = particles[leader[i]].personal_best_position;

  const double vlimit = config.omega != 0.0 ? config.vmax / std::abs(config.omega)
                                            : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = particles[i];
    auto& rng = swarm.streams[i];
    for (std::size_t d = 0; d < p.position.size(); ++d) {
      const double xi1 = rng.uniform();
      const double xi2 = rng.uniform();
      const double delta = config.omega * p.velocity[d] +
                           config.beta1 * xi1 * (p.personal_best_position[d] - p.position[d]) +
                           config.beta2 * xi2 * (leader_pos[i][d] - p.position[d]);
      // |omega * delta| <= vmax, and the clamped delta is what carries over.
      p.velocity[d] = std::clamp(delta, -vlimit, vlimit);
      p.position[d] += std::clamp(config.omega * p.velocity[d], -config.vmax, config.vmax);
    }
  }
  ++swarm.iteration;
}

OptimizationResult optimize(const Objective& objective, std::span<const Bounds> box,
                            const PsoConfig& config) {
  Swarm swarm = init_swarm(box, config);
  OptimizationResult result;
  result.best_value = kNegInf;
  result.trace.reserve(config.iterations);
  for (std::size_t t = 0; t < config.iterations; ++t) {
    pso_step(swarm, objective, config);
    const auto& leader = swarm.particles[global_best_index(swarm)];
    if (result.best_position.empty() || leader.personal_best_value > result.best_value) {
      result.best_value = leader.personal_best_value;
      result.best_position = leader.personal_best_position;
    }
    result.trace.push_back({t + 1, result.best_value, result.best_position});
  }
  return result;
}

OptimizationResult optimize(const Objective& objective, std::size_t dim, Bounds box,
                            const PsoConfig& config) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  const std::vector<Bounds> full(dim, box);
  return optimize(objective, std::span<const Bounds>(full), config);
}

std::string trace_to_csv(const OptimizationTrace& trace) {
  std::string out = "iteration,best_value\n";
  for (const auto& rec : trace) {
    out += std::to_string(rec.iteration);
    out += ',';
    out += format_number(rec.best_value);
    out += '\n';
  }
  return out;
}

}  // namespace bilocal
