#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "pettylab/error.hpp"
#include "pettylab/linalg.hpp"

namespace pettylab {

/// Deterministic point set on S^2 used as the extremization domain.
struct SphereGrid {
  std::vector<Vec3> points;
  std::size_t resolution = 0;
};

/// Spherical Fibonacci lattice with n points (equal-area latitude bands, golden-angle longitudes).
inline SphereGrid fibonacci_sphere(std::size_t n) {
  if (n < 2) throw InputError("fibonacci_sphere: need n >= 2, got " + std::to_string(n));
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  SphereGrid grid;
  grid.resolution = n;
  grid.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    Vec3 p{r * std::cos(phi), r * std::sin(phi), z};
    grid.points.push_back(p / norm(p));
  }
  return grid;
}

/// Geodesic distance between unit vectors.
inline double angle_between(const Vec3& a, const Vec3& b) noexcept {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

}  // namespace pettylab
