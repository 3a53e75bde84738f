// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstddef>
#include <vector>

#include "beamcoord/channel.hpp"
#include "beamcoord/codebook.hpp"
#include "beamcoord/selection.hpp"

namespace beamcoord {

/// Receive chain at the BS: analog combining matrix (one codebook beam per
/// RF chain, N_RF = K) followed by a digital ZF stage.
struct HybridCombiner {
  arma::cx_mat analog;   ///< N_BS x K, column u is BS beam q_u
  arma::cx_mat digital;  ///< K x K
};

struct RateRecord {
  std::vector<double> sinr;  ///< per-UE, linear
  std::vector<double> rate;  ///< per-UE, bits/s/Hz
  double sum_rate = 0.0;
};

/// K x K effective channel: column u is W_RF^H * H^u * v_{p_u}.
arma::cx_mat effective_channel(const std::vector<ChannelRealization>& channels,
                               const BeamAssignment& assignment,
                               const Codebook& cb_ue, const Codebook& cb_bs);

/// Least-squares pseudo-inverse of the effective channel (SVD). A
/// rank-deficient input yields the minimum-norm solution; ZF then fails to
/// null interference and the SINR evaluation reflects that.
arma::cx_mat zf_combiner(const arma::cx_mat& h_eff);

HybridCombiner build_combiner(const std::vector<ChannelRealization>& channels,
                              const BeamAssignment& assignment,
                              const Codebook& cb_ue, const Codebook& cb_bs);

/// Per-UE SINR after hybrid combining. The filtered-noise power is
/// computed per row as noise_power * ||w_D^u W_RF^H||^2 since ZF rows are
/// not unit-norm.
RateRecord evaluate_sinr(const std::vector<ChannelRealization>& channels,
                         const BeamAssignment& assignment,
                         const Codebook& cb_ue, const Codebook& cb_bs,
                         double noise_power);

/// One combined receive pass: W_D W_RF^H (sum_u H^u v_{p_u} s_u + n).
/// Symbols must satisfy |s_u| <= 1; noise has one entry per BS antenna.
arma::cx_vec reconstruct_signal(const std::vector<ChannelRealization>& channels,
                                const BeamAssignment& assignment,
                                const arma::cx_vec& symbols,
                                const arma::cx_vec& noise,
                                const Codebook& cb_ue, const Codebook& cb_bs);

}  // namespace beamcoord
