// SPDX-License-Identifier: Apache-2.0
#include "beamcoord/geometry.hpp"

#include <numbers>
#include <string>

namespace beamcoord {

namespace {

constexpr double kMinNodeDistance = 1e-9;  // meters
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;  // fmod can return exactly 2*pi after rounding
  return a;
}

// Angle of (to - from) against the +x axis, wrapped to [0, 2*pi).
double direction_angle(Vec2 from, Vec2 to, const char* what) {
  const Vec2 d = to - from;
  if (d.norm() <= kMinNodeDistance) {
    throw DegenerateGeometry(std::string("coincident nodes: ") + what);
  }
  return wrap_angle(std::atan2(d.y, d.x));
}

}  // namespace

Vec2 PositionMatrix::node(std::size_t n) const {
  if (n == 0) return bs;
  if (n <= reflectors.size()) return reflectors[n - 1];
  return ue;
}

void PositionMatrix::set_node(std::size_t n, Vec2 value) {
  if (n == 0) {
    bs = value;
  } else if (n <= reflectors.size()) {
    reflectors[n - 1] = value;
  } else {
    ue = value;
  }
}

PathAngles angles_from_positions(const PositionMatrix& p) {
  PathAngles out;
  out.aod.reserve(p.num_paths());
  out.aoa.reserve(p.num_paths());

  // Path 1: LoS.
  out.aod.push_back(direction_angle(p.ue, p.bs, "UE/BS"));
  out.aoa.push_back(direction_angle(p.bs, p.ue, "BS/UE"));

  for (const Vec2& r : p.reflectors) {
    out.aod.push_back(direction_angle(p.ue, r, "UE/reflector"));
    out.aoa.push_back(direction_angle(p.bs, r, "BS/reflector"));
  }
  return out;
}

}  // namespace beamcoord
