// SPDX-License-Identifier: Apache-2.0
#include "beamcoord/rng.hpp"

namespace beamcoord {

namespace {

// splitmix64 finalizer (Vigna).
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> words) {
  std::uint64_t state = mix(base);
  for (std::uint64_t w : words) {
    state = mix(state ^ mix(w));
  }
  return state;
}

std::complex<double> Rng::complex_normal(double variance) {
  if (variance <= 0.0) return {0.0, 0.0};
  const double s = std::sqrt(variance / 2.0);
  const double re = s * normal();
  const double im = s * normal();
  return {re, im};
}

}  // namespace beamcoord
