// SPDX-License-Identifier: Apache-2.0
#include "beamcoord/channel.hpp"

#include <numbers>
#include <stdexcept>

namespace beamcoord {

arma::cx_vec steering_vector(double angle, std::size_t n) {
  if (n < 1) throw std::invalid_argument("steering_vector: n must be >= 1");
  const double c = std::cos(angle);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  arma::cx_vec v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = -std::numbers::pi * static_cast<double>(k) * c;
    v[k] = std::polar(scale, phase);
  }
  return v;
}

ChannelRealization draw_channel(const PositionMatrix& p,
                                std::span<const double> profile,
                                std::size_t n_bs, std::size_t n_ue, Rng& rng) {
  if (profile.size() != p.num_paths()) {
    throw std::invalid_argument("draw_channel: profile length != num paths");
  }

  ChannelRealization out;
  out.angles = angles_from_positions(p);
  out.path_gains.set_size(profile.size());
  for (std::size_t l = 0; l < profile.size(); ++l) {
    out.path_gains[l] = rng.complex_normal(profile[l]);
  }

  const double scale =
      std::sqrt(static_cast<double>(n_bs) * static_cast<double>(n_ue));
  out.matrix.zeros(n_bs, n_ue);
  for (std::size_t l = 0; l < profile.size(); ++l) {
    if (out.path_gains[l] == std::complex<double>(0.0, 0.0)) continue;
    const arma::cx_vec a_bs = steering_vector(out.angles.aoa[l], n_bs);
    const arma::cx_vec a_ue = steering_vector(out.angles.aod[l], n_ue);
    out.matrix += (scale * out.path_gains[l]) * (a_bs * a_ue.t());
  }
  return out;
}

ChannelRealization draw_channel(const PositionMatrix& p,
                                std::span<const double> profile,
                                const ScenarioConfig& cfg, Rng& rng) {
  return draw_channel(p, profile, cfg.n_bs, cfg.n_ue, rng);
}

}  // namespace beamcoord
