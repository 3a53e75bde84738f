// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

#include "beamcoord/beamcoord.hpp"

namespace beamcoord::test {

/// Single-path geometry whose LoS direction seen from the BS has the given
/// cosine (UE placed at `distance` along that direction). The AoD cosine
/// at the UE is then -cos_bs.
inline PositionMatrix make_los_position(double cos_bs, double distance = 100.0,
                                        Vec2 bs = {0.0, 0.0}) {
  PositionMatrix p;
  p.bs = bs;
  p.ue = bs + Vec2{distance * cos_bs,
                   distance * std::sqrt(1.0 - cos_bs * cos_bs)};
  return p;
}

/// Adds a reflector whose direction from the BS has cosine cos_bs.
inline void add_reflector(PositionMatrix& p, double cos_bs,
                          double distance = 60.0) {
  p.reflectors.push_back(p.bs +
                         Vec2{distance * cos_bs,
                              distance * std::sqrt(1.0 - cos_bs * cos_bs)});
}

/// Index of the grid cosine nearest to c.
inline std::size_t nearest_grid_index(const Codebook& cb, double c) {
  std::size_t best = 0;
  double best_dist = std::abs(cb.grid_cosines[0] - c);
  for (std::size_t i = 1; i < cb.size(); ++i) {
    const double d = std::abs(cb.grid_cosines[i] - c);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

/// Small scenario used across selection/link tests.
inline ScenarioConfig small_scenario(std::size_t num_ues, std::size_t m,
                                     std::size_t n) {
  ScenarioConfig cfg;
  cfg.num_ues = num_ues;
  cfg.n_ue = n;
  cfg.n_bs = n;
  cfg.m_ue = m;
  cfg.m_bs = m;
  cfg.noise_power = static_cast<double>(n) * static_cast<double>(n) / 1000.0;
  return cfg;
}

}  // namespace beamcoord::test
