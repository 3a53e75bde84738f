// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace beamcoord {

/// Deterministic derivation of independent sub-stream seeds: a
/// splitmix64-style finalizer folded over the given words. Every trial,
/// UE and strategy gets its own stream this way, which is what makes
/// hierarchical decision replay and multi-threaded runs reproducible.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> words);

/// First word of every derived stream, one value per independent use of
/// randomness in a trial.
namespace stream_tag {
inline constexpr std::uint64_t kScenario = 1;
inline constexpr std::uint64_t kBeliefs = 2;
inline constexpr std::uint64_t kChannel = 3;
inline constexpr std::uint64_t kSelection = 4;
inline constexpr std::uint64_t kTrial = 5;
}  // namespace stream_tag

/// Seeded random source. All library sampling goes through this wrapper so
/// draws are reproducible given the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return unif_(gen_); }

  /// Standard normal.
  double normal() { return norm_(gen_); }

  /// Circularly-symmetric complex Gaussian CN(0, variance): independent
  /// real and imaginary parts, each with variance/2.
  std::complex<double> complex_normal(double variance);

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
  std::normal_distribution<double> norm_{0.0, 1.0};
};

}  // namespace beamcoord
