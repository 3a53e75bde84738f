// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <complex>
#include <cstddef>
#include <span>

#include "beamcoord/channel.hpp"
#include "beamcoord/codebook.hpp"

namespace beamcoord {

/// M_BS x M_UE table of expected received power per (BS beam, UE beam)
/// pair, linear units. Row q indexes the BS beam, column p the UE beam.
using GainMatrix = arma::mat;

/// Normalized Dirichlet kernel of an n-element ULA as a function of the
/// cosine offset delta in [-2, 2]:
///
///   L(delta) = exp(i*(pi/2)*(1 - n)*delta) / sqrt(n)
///              * sin((pi/2)*n*delta) / sin((pi/2)*delta)
///
/// |L|^2 is the beamforming gain left when a steering vector is projected
/// onto a beam whose cosine is off by delta. The removable singularities
/// (|sin((pi/2)*delta)| < 1e-9, i.e. delta near 0 or +-2) take the
/// analytic limit, whose squared magnitude is n.
std::complex<double> l_function(double delta, std::size_t n);

/// Closed-form average gain matrix:
///   G[q, p] = sum_l sigma_l^2 * |L_BS(cos aoa_l - cos_q)|^2
///                             * |L_UE(cos_p - cos aod_l)|^2
GainMatrix gain_matrix_analytic(const PositionMatrix& p,
                                std::span<const double> profile,
                                const Codebook& cb_ue, const Codebook& cb_bs);

/// Monte-Carlo estimate of the same table: the sample mean of
/// |w_q^H H v_p|^2 over independent channel draws, computed with full
/// matrix products so it stays an independent cross-check of the closed
/// form.
GainMatrix gain_matrix_empirical(const PositionMatrix& p,
                                 std::span<const double> profile,
                                 const Codebook& cb_ue, const Codebook& cb_bs,
                                 std::size_t samples, Rng& rng);

}  // namespace beamcoord
