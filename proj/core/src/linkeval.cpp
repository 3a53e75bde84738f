// SPDX-License-Identifier: Apache-2.0
#include "beamcoord/linkeval.hpp"

#include <stdexcept>

namespace beamcoord {

namespace {

arma::cx_mat analog_combining_matrix(const BeamAssignment& assignment,
                                     const Codebook& cb_bs) {
  const std::size_t num_ues = assignment.pairs.size();
  arma::cx_mat w_rf(cb_bs.num_antennas, num_ues);
  for (std::size_t u = 0; u < num_ues; ++u) {
    w_rf.col(u) = cb_bs.beam(assignment.pairs[u].bs_beam);
  }
  return w_rf;
}

}  // namespace

arma::cx_mat effective_channel(const std::vector<ChannelRealization>& channels,
                               const BeamAssignment& assignment,
                               const Codebook& cb_ue, const Codebook& cb_bs) {
  const std::size_t num_ues = channels.size();
  if (assignment.pairs.size() != num_ues) {
    throw std::invalid_argument("effective_channel: assignment/channel count mismatch");
  }
  const arma::cx_mat w_rf = analog_combining_matrix(assignment, cb_bs);
  arma::cx_mat h_eff(num_ues, num_ues);
  for (std::size_t u = 0; u < num_ues; ++u) {
    h_eff.col(u) = w_rf.t() * channels[u].matrix *
                   cb_ue.beam(assignment.pairs[u].ue_beam);
  }
  return h_eff;
}

arma::cx_mat zf_combiner(const arma::cx_mat& h_eff) {
  return arma::pinv(h_eff);
}

HybridCombiner build_combiner(const std::vector<ChannelRealization>& channels,
                              const BeamAssignment& assignment,
                              const Codebook& cb_ue, const Codebook& cb_bs) {
  HybridCombiner c;
  c.analog = analog_combining_matrix(assignment, cb_bs);
  c.digital = zf_combiner(effective_channel(channels, assignment, cb_ue, cb_bs));
  return c;
}

RateRecord evaluate_sinr(const std::vector<ChannelRealization>& channels,
                         const BeamAssignment& assignment,
                         const Codebook& cb_ue, const Codebook& cb_bs,
                         double noise_power) {
  const std::size_t num_ues = channels.size();
  const arma::cx_mat h_eff =
      effective_channel(channels, assignment, cb_ue, cb_bs);
  const arma::cx_mat w_d = zf_combiner(h_eff);
  const arma::cx_mat w_rf = analog_combining_matrix(assignment, cb_bs);

  // Post-combining per-stream couplings and per-row filtered noise power.
  const arma::cx_mat coupling = w_d * h_eff;         // K x K
  const arma::cx_mat noise_rows = w_d * w_rf.t();    // K x N_BS

  RateRecord out;
  out.sinr.resize(num_ues);
  out.rate.resize(num_ues);
  for (std::size_t u = 0; u < num_ues; ++u) {
    const double signal = std::norm(coupling(u, u));
    double interference = 0.0;
    for (std::size_t w = 0; w < num_ues; ++w) {
      if (w != u) interference += std::norm(coupling(u, w));
    }
    const double filtered_noise =
        noise_power * std::pow(arma::norm(noise_rows.row(u), 2), 2);
    out.sinr[u] = signal / (interference + filtered_noise);
    out.rate[u] = std::log2(1.0 + out.sinr[u]);
    out.sum_rate += out.rate[u];
  }
  return out;
}

arma::cx_vec reconstruct_signal(const std::vector<ChannelRealization>& channels,
                                const BeamAssignment& assignment,
                                const arma::cx_vec& symbols,
                                const arma::cx_vec& noise,
                                const Codebook& cb_ue, const Codebook& cb_bs) {
  const std::size_t num_ues = channels.size();
  if (symbols.n_elem != num_ues) {
    throw std::invalid_argument("reconstruct_signal: one symbol per UE");
  }
  if (noise.n_elem != cb_bs.num_antennas) {
    throw std::invalid_argument("reconstruct_signal: one noise entry per BS antenna");
  }
  const arma::cx_mat h_eff =
      effective_channel(channels, assignment, cb_ue, cb_bs);
  const arma::cx_mat w_d = zf_combiner(h_eff);
  const arma::cx_mat w_rf = analog_combining_matrix(assignment, cb_bs);
  return w_d * (h_eff * symbols + w_rf.t() * noise);
}

}  // namespace beamcoord
