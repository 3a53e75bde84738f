// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "beamcoord/geometry.hpp"
#include "beamcoord/rng.hpp"

namespace beamcoord {

/// Static description of one simulated cell: UE cluster, reflector region,
/// multipath power profile and array/codebook dimensions.
struct ScenarioConfig {
  std::size_t num_ues = 2;    ///< K
  std::size_t num_paths = 3;  ///< L, path 1 is LoS

  /// Cluster center sits 100 m from the BS at direction cosine 0.9.
  /// Toward endfire the cluster's cosine spread tightens, which keeps the
  /// prior informative at r_cl = 7 m; broadside placement would smear it
  /// over several codebook cells.
  Vec2 cluster_center{90.0, 43.58898943540674};
  double cluster_radius = 7.0;  ///< r_cl, meters
  Vec2 bs_position{0.0, 0.0};
  /// Straddles the BS-cluster segment, reaching roughly 60 m off-axis.
  Rect reflector_region{{0.0, -40.0}, {90.0, 85.0}};

  /// Per-path average powers sigma_l^2; must sum to 1.
  std::vector<double> path_power_profile{0.6, 0.2, 0.2};
  double noise_power = 4.096;  ///< sigma_n^2, 30 dB below the full array gain

  std::size_t n_ue = 64;
  std::size_t n_bs = 64;
  std::size_t m_ue = 64;
  std::size_t m_bs = 64;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

/// Maximum positioning error radius r_n^{w,(u)} per observer u, subject w
/// and node n (node order as in PositionMatrix). The BS node defaults to
/// radius 0: its position is assumed exactly known unless configured
/// otherwise.
class ErrorModel {
 public:
  ErrorModel(std::size_t num_ues, std::size_t num_paths, double radius = 0.0);

  double radius(std::size_t observer, std::size_t subject,
                std::size_t node) const;
  void set_radius(std::size_t observer, std::size_t subject, std::size_t node,
                  double r);

  /// Sets r for every subject and node seen by one observer. The BS node
  /// is left untouched unless include_bs is set.
  void set_observer_radius(std::size_t observer, double r,
                           bool include_bs = false);
  void set_all(double r, bool include_bs = false);

  std::size_t num_ues() const { return num_ues_; }
  std::size_t num_nodes() const { return num_nodes_; }

 private:
  std::size_t index(std::size_t observer, std::size_t subject,
                    std::size_t node) const;

  std::size_t num_ues_ = 0;
  std::size_t num_nodes_ = 0;
  std::vector<double> radii_;
};

/// Everything one UE knows: noisy estimates of all K position matrices
/// plus the error radii those estimates were drawn with. Observer 0 is the
/// most informed UE in the hierarchy.
struct BeliefSet {
  std::size_t observer = 0;
  std::vector<PositionMatrix> estimates;   ///< estimate of P^w, w = 0..K-1
  std::vector<std::vector<double>> radii;  ///< [subject][node] error radii

  const PositionMatrix& estimate_of(std::size_t subject) const {
    return estimates.at(subject);
  }
};

/// Uniform draw from the closed disk of the given radius (square-root
/// radial transform).
Vec2 sample_position_error(double radius, Rng& rng);

/// Draws ground truth: UE positions i.i.d. uniform in the cluster disk,
/// L-1 reflector positions uniform in the reflector region and shared by
/// all K UEs, BS fixed.
std::vector<PositionMatrix> sample_scenario(const ScenarioConfig& config,
                                            Rng& rng);

/// Adds independent per-node uniform-disk errors to every observer's copy
/// of every position matrix.
std::vector<BeliefSet> build_beliefs(const std::vector<PositionMatrix>& truth,
                                     const ErrorModel& em, Rng& rng);

/// Fresh draw from the same generative model as sample_scenario; used as
/// the prior over position matrices.
std::vector<PositionMatrix> sample_prior(const ScenarioConfig& config,
                                         Rng& rng);

/// Draws candidate true positions given one observer's noisy estimates:
/// per node, uniform on the intersection of the error disk around the
/// estimate and the prior support (cluster disk for UE nodes, reflector
/// region for reflector nodes; a BS node with radius 0 is taken as exact).
/// Rejection sampling is capped at 1000 attempts per node and falls back
/// to the nearest point of the prior support.
std::vector<PositionMatrix> sample_posterior(const BeliefSet& belief,
                                             const ScenarioConfig& config,
                                             Rng& rng);

}  // namespace beamcoord
