// SPDX-License-Identifier: Apache-2.0
#include "beamcoord/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace beamcoord {

namespace {

constexpr double kProfileSumTolerance = 1e-12;
constexpr int kPosteriorMaxAttempts = 1000;

Vec2 sample_in_rect(const Rect& r, Rng& rng) {
  return {r.lo.x + rng.uniform() * r.width(),
          r.lo.y + rng.uniform() * r.height()};
}

Vec2 sample_in_disk(Vec2 center, double radius, Rng& rng) {
  return center + sample_position_error(radius, rng);
}

bool in_disk(Vec2 p, Vec2 center, double radius) {
  return (p - center).norm() <= radius;
}

// Nearest point of the closed disk to p.
Vec2 clamp_to_disk(Vec2 p, Vec2 center, double radius) {
  const Vec2 d = p - center;
  const double dist = d.norm();
  if (dist <= radius || dist == 0.0) return p;
  return center + (radius / dist) * d;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (num_ues < 1) throw std::invalid_argument("num_ues must be >= 1");
  if (num_paths < 1) throw std::invalid_argument("num_paths must be >= 1");
  if (cluster_radius < 0.0) {
    throw std::invalid_argument("cluster_radius must be >= 0");
  }
  if (!(noise_power > 0.0)) {
    throw std::invalid_argument("noise_power must be > 0");
  }
  if (n_ue < 1 || n_bs < 1) {
    throw std::invalid_argument("antenna counts must be >= 1");
  }
  if (m_ue < 1 || m_bs < 1) {
    throw std::invalid_argument("codebook sizes must be >= 1");
  }
  if (path_power_profile.size() != num_paths) {
    throw std::invalid_argument("path_power_profile must have num_paths entries");
  }
  double sum = 0.0;
  for (double s : path_power_profile) {
    if (s < 0.0) throw std::invalid_argument("path powers must be >= 0");
    sum += s;
  }
  if (std::abs(sum - 1.0) > kProfileSumTolerance) {
    throw std::invalid_argument("path_power_profile must sum to 1");
  }
  if (num_paths > 1 &&
      (reflector_region.width() < 0.0 || reflector_region.height() < 0.0)) {
    throw std::invalid_argument("reflector_region must have lo <= hi");
  }
}

ErrorModel::ErrorModel(std::size_t num_ues, std::size_t num_paths,
                       double radius)
    : num_ues_(num_ues),
      num_nodes_(num_paths + 1),
      radii_(num_ues * num_ues * (num_paths + 1), 0.0) {
  if (radius != 0.0) set_all(radius);
}

std::size_t ErrorModel::index(std::size_t observer, std::size_t subject,
                              std::size_t node) const {
  return (observer * num_ues_ + subject) * num_nodes_ + node;
}

double ErrorModel::radius(std::size_t observer, std::size_t subject,
                          std::size_t node) const {
  return radii_.at(index(observer, subject, node));
}

void ErrorModel::set_radius(std::size_t observer, std::size_t subject,
                            std::size_t node, double r) {
  if (r < 0.0) throw std::invalid_argument("error radius must be >= 0");
  radii_.at(index(observer, subject, node)) = r;
}

void ErrorModel::set_observer_radius(std::size_t observer, double r,
                                     bool include_bs) {
  for (std::size_t w = 0; w < num_ues_; ++w) {
    for (std::size_t n = include_bs ? 0 : 1; n < num_nodes_; ++n) {
      set_radius(observer, w, n, r);
    }
  }
}

void ErrorModel::set_all(double r, bool include_bs) {
  for (std::size_t u = 0; u < num_ues_; ++u) {
    set_observer_radius(u, r, include_bs);
  }
}

Vec2 sample_position_error(double radius, Rng& rng) {
  if (radius <= 0.0) return {0.0, 0.0};
  const double r = radius * std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::vector<PositionMatrix> sample_scenario(const ScenarioConfig& config,
                                            Rng& rng) {
  // Reflectors are global environment objects: drawn once, shared by all
  // K position matrices.
  std::vector<Vec2> reflectors;
  reflectors.reserve(config.num_paths - 1);
  for (std::size_t i = 0; i + 1 < config.num_paths; ++i) {
    reflectors.push_back(sample_in_rect(config.reflector_region, rng));
  }

  std::vector<PositionMatrix> out(config.num_ues);
  for (PositionMatrix& p : out) {
    p.bs = config.bs_position;
    p.reflectors = reflectors;
    p.ue = sample_in_disk(config.cluster_center, config.cluster_radius, rng);
  }
  return out;
}

std::vector<BeliefSet> build_beliefs(const std::vector<PositionMatrix>& truth,
                                     const ErrorModel& em, Rng& rng) {
  const std::size_t num_ues = truth.size();
  if (em.num_ues() != num_ues) {
    throw std::invalid_argument("error model / truth UE count mismatch");
  }

  std::vector<BeliefSet> out(num_ues);
  for (std::size_t u = 0; u < num_ues; ++u) {
    BeliefSet& b = out[u];
    b.observer = u;
    b.estimates = truth;
    b.radii.assign(num_ues, {});
    for (std::size_t w = 0; w < num_ues; ++w) {
      const std::size_t nodes = truth[w].num_nodes();
      if (em.num_nodes() != nodes) {
        throw std::invalid_argument("error model / truth node count mismatch");
      }
      b.radii[w].resize(nodes);
      for (std::size_t n = 0; n < nodes; ++n) {
        const double r = em.radius(u, w, n);
        b.radii[w][n] = r;
        b.estimates[w].set_node(
            n, truth[w].node(n) + sample_position_error(r, rng));
      }
    }
  }
  return out;
}

std::vector<PositionMatrix> sample_prior(const ScenarioConfig& config,
                                         Rng& rng) {
  return sample_scenario(config, rng);
}

namespace {

// Uniform draw on the intersection of the error disk around the estimate
// and the prior support. The sampling side is whichever region is smaller,
// with membership in the other checked afterwards; either way the accepted
// draw is uniform on the intersection.
Vec2 posterior_node(Vec2 estimate, double radius, std::size_t node,
                    std::size_t num_nodes, const ScenarioConfig& config,
                    Rng& rng) {
  if (radius <= 0.0) return estimate;  // point likelihood

  const bool is_bs = node == 0;
  const bool is_ue = node + 1 == num_nodes;
  if (is_bs) {
    // The generative model pins the BS only through its configured
    // position; with a nonzero radius the prior adds no support
    // constraint, so the likelihood disk is the posterior.
    return estimate + sample_position_error(radius, rng);
  }

  const double disk_area =
      std::numbers::pi * radius * radius;
  if (is_ue) {
    const double prior_area = std::numbers::pi * config.cluster_radius *
                              config.cluster_radius;
    const bool from_disk = disk_area <= prior_area;
    for (int attempt = 0; attempt < kPosteriorMaxAttempts; ++attempt) {
      Vec2 candidate =
          from_disk
              ? estimate + sample_position_error(radius, rng)
              : sample_in_disk(config.cluster_center, config.cluster_radius,
                               rng);
      const bool ok =
          from_disk
              ? in_disk(candidate, config.cluster_center,
                        config.cluster_radius)
              : in_disk(candidate, estimate, radius);
      if (ok) return candidate;
    }
    return clamp_to_disk(estimate, config.cluster_center,
                         config.cluster_radius);
  }

  // Reflector node.
  const double prior_area = config.reflector_region.area();
  const bool from_disk = disk_area <= prior_area;
  for (int attempt = 0; attempt < kPosteriorMaxAttempts; ++attempt) {
    Vec2 candidate = from_disk
                         ? estimate + sample_position_error(radius, rng)
                         : sample_in_rect(config.reflector_region, rng);
    const bool ok = from_disk ? config.reflector_region.contains(candidate)
                              : in_disk(candidate, estimate, radius);
    if (ok) return candidate;
  }
  return config.reflector_region.clamp(estimate);
}

}  // namespace

std::vector<PositionMatrix> sample_posterior(const BeliefSet& belief,
                                             const ScenarioConfig& config,
                                             Rng& rng) {
  std::vector<PositionMatrix> out = belief.estimates;
  for (std::size_t w = 0; w < out.size(); ++w) {
    const std::size_t nodes = out[w].num_nodes();
    for (std::size_t n = 0; n < nodes; ++n) {
      out[w].set_node(n, posterior_node(belief.estimates[w].node(n),
                                        belief.radii[w][n], n, nodes, config,
                                        rng));
    }
  }
  return out;
}

}  // namespace beamcoord
