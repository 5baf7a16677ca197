#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ellipsect/types.hpp"

namespace ellipsect {

// Fibonacci sphere directions with a seed-controlled phase jitter. seed 0
// gives the plain lattice; any seed is deterministic.
inline std::vector<Vec3> fibonacci_directions(int n, std::uint64_t seed = 0) {
  std::vector<Vec3> dirs;
  dirs.reserve(n);
  double phase = 0.0;
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    phase = std::uniform_real_distribution<double>(0.0, 2.0 * M_PI)(rng);
  }
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i + phase;
    dirs.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return dirs;
}

// Rodrigues rotation of v about the unit axis by the given angle.
inline Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return v * c + axis.cross(v) * s + axis * (axis.dot(v)) * (1.0 - c);
}

// Rotation matrix from a rotation vector (angle = norm, axis = direction).
inline Mat3 rotation_from_vector(const Vec3& w) {
  double angle = w.norm();
  if (angle < 1e-300) return Mat3::Identity();
  return Eigen::AngleAxisd(angle, w / angle).toRotationMatrix();
}

}  // namespace ellipsect
