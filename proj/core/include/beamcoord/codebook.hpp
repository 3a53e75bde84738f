// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstddef>
#include <vector>

namespace beamcoord {

enum class ArraySide { kUe, kBs };

/// Analog beam codebook: steering vectors on a grid of angles whose
/// cosines are the midpoints of a uniform partition of [-1, 1], so every
/// cell has the same worst-case gain loss and the endfire singularities
/// cos = +-1 are avoided.
struct Codebook {
  ArraySide side = ArraySide::kUe;
  std::size_t num_antennas = 0;
  std::vector<double> grid_angles;   ///< strictly increasing, in (0, pi)
  std::vector<double> grid_cosines;  ///< cos(grid_angles), spacing 2/M exact
  arma::cx_mat beams;                ///< num_antennas x M, one beam per column

  std::size_t size() const { return grid_angles.size(); }
  arma::cx_vec beam(std::size_t index) const { return beams.col(index); }
};

/// Grid angle p (1-based) is arccos(1 - (2p - 1)/m).
Codebook build_codebook(std::size_t m, std::size_t n, ArraySide side);

}  // namespace beamcoord
