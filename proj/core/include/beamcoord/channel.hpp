// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstddef>
#include <span>

#include "beamcoord/geometry.hpp"
#include "beamcoord/rng.hpp"
#include "beamcoord/scenario.hpp"

namespace beamcoord {

/// Unit-norm ULA steering vector for half-wavelength spacing: entry k is
/// exp(-i*pi*k*cos(angle)) / sqrt(n).
arma::cx_vec steering_vector(double angle, std::size_t n);

/// One narrowband geometric channel draw, kept together with the path
/// gains and angles that produced it.
struct ChannelRealization {
  arma::cx_mat matrix;      ///< N_BS x N_UE
  arma::cx_vec path_gains;  ///< alpha_l, l = 1..L
  PathAngles angles;
};

/// Draws path gains alpha_l ~ CN(0, sigma_l^2) and assembles
/// sqrt(N_BS*N_UE) * sum_l alpha_l * a_BS(aoa_l) * a_UE(aod_l)^H.
ChannelRealization draw_channel(const PositionMatrix& p,
                                std::span<const double> profile,
                                std::size_t n_bs, std::size_t n_ue, Rng& rng);

ChannelRealization draw_channel(const PositionMatrix& p,
                                std::span<const double> profile,
                                const ScenarioConfig& cfg, Rng& rng);

}  // namespace beamcoord
