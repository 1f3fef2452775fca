#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pettylab/error.hpp"

namespace pettylab {

/// Point or direction in R^3.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double& operator[](std::size_t i) noexcept { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double operator[](std::size_t i) const noexcept { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) noexcept {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) noexcept {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) noexcept {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) noexcept { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) noexcept { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) noexcept { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// det of the matrix with columns a, b, c.
constexpr double det3(const Vec3& a, const Vec3& b, const Vec3& c) noexcept { return dot(cross(a, b), c); }

inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (!(n > 0.0)) throw InputError("cannot normalize a zero vector");
  return a / n;
}

inline bool is_finite(const Vec3& a) noexcept {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Row-major 3x3 matrix acting on column vectors.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static constexpr Mat3 identity() noexcept { return Mat3{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}}; }

  constexpr Vec3 operator*(const Vec3& v) const noexcept {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }

  constexpr Mat3 transposed() const noexcept {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.m[i][j] = m[j][i];
    return t;
  }

  constexpr double det() const noexcept {
    const Vec3 c0{m[0][0], m[1][0], m[2][0]};
    const Vec3 c1{m[0][1], m[1][1], m[2][1]};
    const Vec3 c2{m[0][2], m[1][2], m[2][2]};
    return det3(c0, c1, c2);
  }

  /// Inverse transpose; the map carrying normals and projection-body generators.
  Mat3 cofactor_transpose_inverse() const {
    const double d = det();
    if (d == 0.0) throw InputError("singular matrix");
    Mat3 c;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        c.m[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / d;
      }
    return c;
  }
};

// ---------------------------------------------------------------------------
// Dimension-generic exterior algebra.

using VecD = std::vector<double>;

/// Signed determinant of the d x d matrix whose columns are `cols`.
inline double det_d(std::span<const VecD> cols) {
  const std::size_t d = cols.size();
  if (d == 0) throw InputError("det_d: empty argument list");
  for (const auto& c : cols)
    if (c.size() != d) throw InputError("det_d: expected " + std::to_string(d) + " vectors of dimension " +
                                        std::to_string(d));
  // Gaussian elimination with partial pivoting on the transpose (same determinant).
  std::vector<VecD> a(cols.begin(), cols.end());
  double det = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < d; ++r)
      if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
    if (a[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t r = k + 1; r < d; ++r) {
      const double f = a[r][k] / a[k][k];
      if (f == 0.0) continue;
      for (std::size_t c = k; c < d; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return det;
}

inline double det_d(std::initializer_list<VecD> cols) { return det_d(std::span<const VecD>(cols.begin(), cols.size())); }

/// Generalized cross product of d-1 vectors in R^d: the w with <w, y> = det(v_1, ..., v_{d-1}, y).
inline VecD wedge_last(std::span<const VecD> vs) {
  const std::size_t d = vs.size() + 1;
  if (d < 2) throw InputError("wedge_last: need at least one vector");
  for (const auto& v : vs)
    if (v.size() != d) throw InputError("wedge_last: expected vectors of dimension " + std::to_string(d));
  VecD w(d, 0.0);
  std::vector<VecD> cols(vs.begin(), vs.end());
  cols.emplace_back(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    std::fill(cols.back().begin(), cols.back().end(), 0.0);
    cols.back()[k] = 1.0;
    w[k] = det_d(std::span<const VecD>(cols));
  }
  return w;
}

inline VecD wedge_last(std::initializer_list<VecD> vs) {
  return wedge_last(std::span<const VecD>(vs.begin(), vs.size()));
}

inline VecD to_vecd(const Vec3& v) { return {v.x, v.y, v.z}; }

inline Vec3 to_vec3(const VecD& v) {
  if (v.size() != 3) throw InputError("expected a 3-vector");
  return {v[0], v[1], v[2]};
}

/// Orthonormal pair spanning the plane orthogonal to the unit vector n.
inline std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& n) {
  const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 u = normalized(cross(n, helper));
  return {u, cross(n, u)};
}

}  // namespace pettylab
