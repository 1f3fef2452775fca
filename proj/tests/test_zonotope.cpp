#include <gtest/gtest.h>

#include <cmath>

#include "pettylab/fixtures.hpp"
#include "pettylab/random_bodies.hpp"
#include "pettylab/zonotope.hpp"

using namespace pettylab;

namespace {

const GeneratorSet kCube{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

// Hull of all sign combinations: the zonotope as a polytope, built without the determinant formula.
Polytope sign_sum_hull(const GeneratorSet& z) {
  std::vector<Vec3> pts;
  const std::size_t n = z.gens.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec3 p{};
    for (std::size_t i = 0; i < n; ++i) p += (mask >> i & 1U) ? z.gens[i] : -z.gens[i];
    pts.push_back(p);
  }
  return convex_hull(pts);
}

// Area of the planar hull of the projected sign sums.
double projected_hull_area(const GeneratorSet& z, const Vec3& x) {
  const auto [u, w] = orthonormal_complement(x);
  std::vector<Vec2> pts;
  for (const auto& v : sign_sum_hull(z).vertices) pts.push_back({dot(v, u), dot(v, w)});
  return polygon_area(convex_hull_2d(pts));
}

// Monte-Carlo volume from the support-function membership test |<y, u>| <= h(u) over many u.
double mc_zonotope_volume(const GeneratorSet& z, int samples) {
  const auto hull = sign_sum_hull(z);
  const auto facets = facet_data(hull);
  const double r = max_abs_coordinate(hull.vertices);
  Rng rng(99);
  std::uniform_real_distribution<double> u(-r, r);
  int in = 0;
  for (int i = 0; i < samples; ++i) {
    const Vec3 y{u(rng), u(rng), u(rng)};
    bool inside = true;
    for (const auto& f : facets)
      if (dot(y, f.normal) > z_support(z, f.normal) + 1e-12) {
        inside = false;
        break;
      }
    in += inside;
  }
  return std::pow(2 * r, 3) * in / samples;
}

}  // namespace

TEST(ZSupport, Examples) {
  EXPECT_DOUBLE_EQ(z_support(kCube, {1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(z_support(GeneratorSet{{{1, 0, 0}, {1, 0, 0}}}, {1, 0, 0}), 2.0);
  EXPECT_NEAR(z_support(kCube, normalized({1, 1, 1})), std::sqrt(3.0), 1e-15);
}

TEST(ZVolume, Examples) {
  EXPECT_DOUBLE_EQ(z_volume(kCube), 8.0);
  EXPECT_DOUBLE_EQ(z_volume(GeneratorSet{{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}}), 0.0);
  const GeneratorSet z{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}};
  EXPECT_DOUBLE_EQ(z_volume(z), 32.0);
  EXPECT_NEAR(mc_zonotope_volume(z, 1000000) / 32.0, 1.0, 0.01);
}

TEST(ZVolume, MatchesSignSumHull) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto z = random_zonotope(rng, 3, 8);
    EXPECT_NEAR(z_volume(z), volume(sign_sum_hull(z)), 1e-9 * z_volume(z));
  }
}

TEST(ZVolume, Scaling) {
  Rng rng(6);
  const auto z = random_zonotope(rng, 5, 5);
  GeneratorSet s = z;
  for (auto& g : s.gens) g *= 1.7;
  EXPECT_NEAR(z_volume(s), std::pow(1.7, 3) * z_volume(z), 1e-12 * z_volume(s));
  const Vec3 x = random_unit(rng);
  EXPECT_NEAR(second_proj_support(s, x), std::pow(1.7, 4) * second_proj_support(z, x), 1e-11 * second_proj_support(s, x));
}

TEST(Shadow, Examples) {
  EXPECT_DOUBLE_EQ(z_shadow_area(kCube, {0, 0, 1}), 4.0);
  EXPECT_DOUBLE_EQ(z_shadow_area(GeneratorSet{{{1, 0, 0}, {0, 1, 0}}}, {0, 0, 1}), 4.0);
  const GeneratorSet z{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}};
  EXPECT_NEAR(z_shadow_area(z, {0, 0, 1}), projected_hull_area(z, {0, 0, 1}), 1e-12);
}

TEST(Shadow, CoherentWithProjectionBody) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto z = random_zonotope(rng, 3, 8);
    const Vec3 x = random_unit(rng);
    const double a = z_shadow_area(z, x);
    EXPECT_NEAR(a, z_support(projection_body(z), x), 1e-12 * a);
    EXPECT_NEAR(a, projected_hull_area(z, x), 1e-11 * a);
    const double s = second_proj_support(z, x);
    EXPECT_NEAR(s, z_shadow_area(projection_body(z), x), 1e-9 * s);
  }
}

TEST(ProjectionBody, Cube) {
  const auto pz = projection_body(kCube);
  ASSERT_EQ(pz.gens.size(), 3u);
  for (const auto& g : pz.gens) EXPECT_DOUBLE_EQ(norm(g), 4.0);
  EXPECT_DOUBLE_EQ(z_volume(pz), 512.0);  // [-4,4]^3
  const auto ppz = projection_body(pz);
  for (const auto& u : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) EXPECT_DOUBLE_EQ(z_support(ppz, u), 64.0);
  EXPECT_THROW(projection_body(GeneratorSet{{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}}), FlatBodyError);
}

TEST(SecondProjection, Examples) {
  EXPECT_DOUBLE_EQ(second_proj_support(kCube, {1, 0, 0}), 64.0);
  EXPECT_NEAR(second_proj_support(kCube, normalized({1, 1, 1})), 64.0 * std::sqrt(3.0), 1e-12);
  EXPECT_THROW(second_proj_support(GeneratorSet{{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}}, {0, 0, 1}), FlatBodyError);
}

TEST(PolytopeProjection, Fixtures) {
  const auto pc = polytope_projection_body(fixtures::cube());
  for (const auto& u : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) EXPECT_NEAR(z_support(pc, u), 4.0, 1e-12);
  EXPECT_NEAR(z_support(pc, normalized({1, 1, 1})), 4.0 * std::sqrt(3.0), 1e-12);

  const auto po = polytope_projection_body(fixtures::octahedron(), true);
  ASSERT_EQ(po.gens.size(), 4u);
  for (const auto& g : po.gens) {
    EXPECT_NEAR(std::abs(g.x), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(g.y), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(g.z), 0.5, 1e-12);
  }

  const auto pt = polytope_projection_body(fixtures::tetrahedron());
  ASSERT_EQ(pt.gens.size(), 4u);
  double total = 0;
  for (const auto& g : pt.gens) total += norm(g);
  EXPECT_NEAR(total, 0.75 + 0.25 * std::sqrt(3.0), 1e-14);
}

TEST(PolytopeProjection, ShadowArea) {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_polytope(rng, 15);
    const Vec3 x = random_unit(rng);
    const auto [u, w] = orthonormal_complement(x);
    std::vector<Vec2> pts;
    for (const auto& v : p.vertices) pts.push_back({dot(v, u), dot(v, w)});
    const double shadow = polygon_area(convex_hull_2d(pts));
    EXPECT_NEAR(z_support(polytope_projection_body(p), x), shadow, 1e-12 * shadow);
    EXPECT_NEAR(z_support(polytope_projection_body(p, true), x), shadow, 1e-12 * shadow);
  }
}

TEST(Merge, KeepsSupport) {
  const GeneratorSet z{{{1, 0, 0}, {-2, 0, 0}, {0, 1, 0}, {0, 0, 3}, {0, 0, 1}}};
  const auto m = merge_parallel(z);
  EXPECT_EQ(m.gens.size(), 3u);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = random_unit(rng);
    EXPECT_NEAR(z_support(m, x), z_support(z, x), 1e-14);
  }
}

TEST(Zonogon, AreaInPlane) {
  EXPECT_DOUBLE_EQ(zonogon_area(kCube, {1, 0, 0}, {0, 1, 0}), 4.0);
  EXPECT_DOUBLE_EQ(zonogon_area(kCube, {1, 0, 0}, {0, 0, 1}), 4.0);
}
