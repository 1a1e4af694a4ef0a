#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace probball {

using Rng = std::mt19937_64;

/// Independent sub-streams of one solve. Each phase draws from its own
/// generator so that changing the work done in one phase never shifts the
/// random numbers seen by another.
enum class Phase : std::uint64_t {
  kInit = 1,
  kDescent = 2,
  kSelection = 3,
  kSampling = 4,
};

/// splitmix64 finalizer applied to seed + salt.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

Rng phase_rng(std::uint64_t stream_seed, Phase phase);

/// Seed of the stream owned by one amplification repetition.
inline std::uint64_t repetition_seed(std::uint64_t seed, std::size_t repetition) {
  return seed ^ static_cast<std::uint64_t>(repetition);
}

std::size_t uniform_index(Rng& rng, std::size_t n);

/// Uniform double in [0, 1).
double uniform01(Rng& rng);

}  // namespace probball
