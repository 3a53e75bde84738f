// SPDX-License-Identifier: Apache-2.0
#include "beamcoord/codebook.hpp"

#include <cmath>
#include <stdexcept>

#include "beamcoord/channel.hpp"

namespace beamcoord {

Codebook build_codebook(std::size_t m, std::size_t n, ArraySide side) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("build_codebook: m and n must be >= 1");
  }

  Codebook cb;
  cb.side = side;
  cb.num_antennas = n;
  cb.grid_angles.reserve(m);
  cb.grid_cosines.reserve(m);
  cb.beams.set_size(n, m);

  for (std::size_t p = 1; p <= m; ++p) {
    const double c =
        1.0 - (2.0 * static_cast<double>(p) - 1.0) / static_cast<double>(m);
    cb.grid_cosines.push_back(c);
    cb.grid_angles.push_back(std::acos(c));
    cb.beams.col(p - 1) = steering_vector(cb.grid_angles.back(), n);
  }
  return cb;
}

}  // namespace beamcoord
