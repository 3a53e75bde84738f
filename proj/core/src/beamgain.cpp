// SPDX-License-Identifier: Apache-2.0
#include "beamcoord/beamgain.hpp"

#include <numbers>
#include <stdexcept>

namespace beamcoord {

namespace {

constexpr double kSingularSinThreshold = 1e-9;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// sin((pi/2) n delta) / sin((pi/2) delta) with the removable singularities
// at delta in {0, +-2} replaced by their limit n * cos((pi/2) n delta) /
// cos((pi/2) delta), which is exactly n at delta = 0 and n * (-1)^(n+1)
// at delta = +-2.
double dirichlet_ratio(double delta, std::size_t n) {
  const double dn = static_cast<double>(n);
  const double s = std::sin(kHalfPi * delta);
  if (std::abs(s) < kSingularSinThreshold) {
    return dn * std::cos(kHalfPi * dn * delta) / std::cos(kHalfPi * delta);
  }
  return std::sin(kHalfPi * dn * delta) / s;
}

double l_function_sq(double delta, std::size_t n) {
  const double r = dirichlet_ratio(delta, n);
  return r * r / static_cast<double>(n);
}

}  // namespace

std::complex<double> l_function(double delta, std::size_t n) {
  if (n < 1) throw std::invalid_argument("l_function: n must be >= 1");
  const double r = dirichlet_ratio(delta, n);
  const double phase = kHalfPi * delta * (1.0 - static_cast<double>(n));
  return std::polar(r / std::sqrt(static_cast<double>(n)), phase);
}

GainMatrix gain_matrix_analytic(const PositionMatrix& p,
                                std::span<const double> profile,
                                const Codebook& cb_ue, const Codebook& cb_bs) {
  if (profile.size() != p.num_paths()) {
    throw std::invalid_argument("gain_matrix_analytic: profile length != num paths");
  }

  const PathAngles angles = angles_from_positions(p);
  const std::size_t m_bs = cb_bs.size();
  const std::size_t m_ue = cb_ue.size();

  GainMatrix g(m_bs, m_ue, arma::fill::zeros);
  arma::vec bs_gain(m_bs);
  arma::rowvec ue_gain(m_ue);
  for (std::size_t l = 0; l < profile.size(); ++l) {
    const double power = profile[l];
    if (power <= 0.0) continue;
    const double cos_aoa = std::cos(angles.aoa[l]);
    const double cos_aod = std::cos(angles.aod[l]);
    for (std::size_t q = 0; q < m_bs; ++q) {
      bs_gain[q] =
          l_function_sq(cos_aoa - cb_bs.grid_cosines[q], cb_bs.num_antennas);
    }
    for (std::size_t pp = 0; pp < m_ue; ++pp) {
      ue_gain[pp] =
          l_function_sq(cb_ue.grid_cosines[pp] - cos_aod, cb_ue.num_antennas);
    }
    g += power * (bs_gain * ue_gain);
  }
  return g;
}

GainMatrix gain_matrix_empirical(const PositionMatrix& p,
                                 std::span<const double> profile,
                                 const Codebook& cb_ue, const Codebook& cb_bs,
                                 std::size_t samples, Rng& rng) {
  if (samples < 1) {
    throw std::invalid_argument("gain_matrix_empirical: samples must be >= 1");
  }

  GainMatrix acc(cb_bs.size(), cb_ue.size(), arma::fill::zeros);
  for (std::size_t s = 0; s < samples; ++s) {
    const ChannelRealization ch =
        draw_channel(p, profile, cb_bs.num_antennas, cb_ue.num_antennas, rng);
    // (q, p) projection through full matrix products, kept independent of
    // the closed form above.
    const arma::cx_mat proj = cb_bs.beams.t() * ch.matrix * cb_ue.beams;
    acc += arma::square(arma::abs(proj));
  }
  return acc / static_cast<double>(samples);
}

}  // namespace beamcoord
