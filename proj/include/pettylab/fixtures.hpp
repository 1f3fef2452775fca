#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pettylab/body.hpp"
#include "pettylab/error.hpp"
#include "pettylab/polytope.hpp"
#include "pettylab/revolution.hpp"

namespace pettylab::fixtures {

inline Polytope cube(double r = 1.0) {
  std::vector<Vec3> v;
  for (int i = 0; i < 8; ++i) v.push_back({(i & 1) ? r : -r, (i & 2) ? r : -r, (i & 4) ? r : -r});
  return convex_hull(v);
}

inline Polytope octahedron() { return convex_hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}); }

inline Polytope tetrahedron() { return convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

/// Hull of the vertices of a `level`-times subdivided icosahedron on the unit sphere
/// (12, 42, 162, 642 vertices for levels 0..3).
inline Polytope icosphere(int level) {
  if (level < 0 || level > 5) throw InputError("icosphere: level must be in 0..5");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v{{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p = normalized(p);
  std::vector<std::array<int, 3>> f{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                                    {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                                    {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      if (auto it = mid.find(key); it != mid.end()) return it->second;
      v.push_back(normalized(v[a] + v[b]));
      return mid[key] = static_cast<int>(v.size()) - 1;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& [a, b, c] : f) {
      const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  return convex_hull(v);
}

inline RevolutionBody cone_profile(int d = 3) { return double_cone(d, 1.0, 1.0); }
inline RevolutionBody cylinder_profile(int d = 3) { return cylinder(d, 1.0, 1.0); }

/// Named fixture bodies: cube, octahedron, tetrahedron, icosphere0..icosphere3,
/// double-cone, cylinder, ball.
inline Body by_name(const std::string& name) {
  if (name == "cube") return cube();
  if (name == "octahedron") return octahedron();
  if (name == "tetrahedron") return tetrahedron();
  if (name.rfind("icosphere", 0) == 0 && name.size() == 10 && name[9] >= '0' && name[9] <= '3')
    return icosphere(name[9] - '0');
  if (name == "double-cone") return cone_profile();
  if (name == "cylinder") return cylinder_profile();
  if (name == "ball") return Ball{};
  throw InputError("unknown fixture '" + name + "'");
}

inline std::vector<std::string> names() {
  return {"cube", "octahedron", "tetrahedron", "icosphere0", "icosphere1", "icosphere2", "icosphere3",
          "double-cone", "cylinder", "ball"};
}

}  // namespace pettylab::fixtures
