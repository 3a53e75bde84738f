// SPDX-License-Identifier: Apache-2.0
//
// beamcoord: coordinated analog beam selection simulator for uplink
// multi-user mmWave systems.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace beamcoord {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

/// Axis-aligned rectangle, lo <= hi componentwise.
struct Rect {
  Vec2 lo;
  Vec2 hi;

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
  bool contains(Vec2 p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  /// Nearest point of the rectangle to p.
  Vec2 clamp(Vec2 p) const {
    return {std::fmin(std::fmax(p.x, lo.x), hi.x),
            std::fmin(std::fmax(p.y, lo.y), hi.y)};
  }
};

/// Thrown when two nodes of a position matrix (nearly) coincide, so that a
/// path direction is undefined.
class DegenerateGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 2-D coordinates of the nodes spanning one UE's propagation paths: the
/// BS, the L-1 reflectors and the UE itself. Node order when indexed:
/// BS, R_1 .. R_{L-1}, UE.
struct PositionMatrix {
  Vec2 bs;
  std::vector<Vec2> reflectors;
  Vec2 ue;

  std::size_t num_paths() const { return reflectors.size() + 1; }
  std::size_t num_nodes() const { return reflectors.size() + 2; }

  Vec2 node(std::size_t n) const;
  void set_node(std::size_t n, Vec2 value);
};

struct PathAngles {
  std::vector<double> aod;  ///< departure angles at the UE, in [0, 2*pi)
  std::vector<double> aoa;  ///< arrival angles at the BS, in [0, 2*pi)
};

/// Derives per-path angles from node positions. Path 1 is the LoS link;
/// path l > 1 bounces off reflector l-1. Angles are measured
/// counter-clockwise from the +x axis, which is also the ULA axis of both
/// arrays. Throws DegenerateGeometry if an involved node pair is closer
/// than 1e-9 m.
PathAngles angles_from_positions(const PositionMatrix& p);

}  // namespace beamcoord
