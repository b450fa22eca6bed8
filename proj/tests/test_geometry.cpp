#include <doctest.h>

#include <array>
#include <vector>

#include "oracles.hpp"
#include "vemh/geometry.hpp"

using namespace vemh;

namespace {

std::vector<Vec2> unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

// CCW L-shape: kernel is the lower-left quadrant square.
std::vector<Vec2> l_shape() {
  return {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
}

// Right triangle as a six-noded polygon (collinear midside nodes).
std::vector<Vec2> right_triangle6() {
  return {{0, 0}, {0.5, 0}, {1, 0}, {0.5, 0.5}, {0, 1}, {0, 0.5}};
}

}  // namespace

TEST_CASE("cross2 is the z component of the 3D cross product") {
  CHECK(cross2({1, 0}, {0, 1}) == 1.0);
  CHECK(cross2({0, 1}, {1, 0}) == -1.0);
  CHECK(cross2({2, 3}, {4, 6}) == 0.0);
}

TEST_CASE("signed_area matches shoelace values and orientation") {
  CHECK(signed_area(unit_square()) == doctest::Approx(1.0));
  std::vector<Vec2> tri{{0, 0}, {1, 0}, {0, 1}};
  CHECK(signed_area(tri) == doctest::Approx(0.5));
  std::vector<Vec2> cw{{0, 0}, {0, 1}, {1, 0}};
  CHECK(signed_area(cw) == doctest::Approx(-0.5));
  CHECK(signed_area(l_shape()) == doctest::Approx(3.0));
}

TEST_CASE("area_centroid agrees with the moment oracle") {
  const auto sq = unit_square();
  CHECK((area_centroid(sq) - Vec2(0.5, 0.5)).norm() < 1e-14);

  const std::vector<Vec2> hex{{0.0, 0.0},   {1.3, -0.2}, {1.9, 0.7},
                              {1.1, 1.5},   {0.3, 1.2},  {-0.4, 0.6}};
  const double A = oracle::polygon_moment(hex, 0, 0);
  const Vec2 c(oracle::polygon_moment(hex, 1, 0) / A, oracle::polygon_moment(hex, 0, 1) / A);
  CHECK((area_centroid(hex) - c).norm() < 1e-13);
  CHECK(signed_area(hex) == doctest::Approx(A));
}

TEST_CASE("polygon_diameter is the max pairwise vertex distance") {
  CHECK(polygon_diameter(unit_square()) == doctest::Approx(std::sqrt(2.0)));
  CHECK(polygon_diameter(l_shape()) == doctest::Approx(std::sqrt(8.0)));  // (2,0)-(0,2)
}

TEST_CASE("is_simple_polygon accepts collinear chains and rejects crossings") {
  CHECK(is_simple_polygon(unit_square()));
  CHECK(is_simple_polygon(right_triangle6()));
  CHECK(is_simple_polygon(l_shape()));
  const std::vector<Vec2> bowtie{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK_FALSE(is_simple_polygon(bowtie));
  // Non-adjacent edges touching at a point is also non-simple.
  const std::vector<Vec2> touch{{0, 0}, {2, 0}, {2, 1}, {1, 0}, {0, 1}};
  CHECK_FALSE(is_simple_polygon(touch));
}

TEST_CASE("has_reflex_vertex distinguishes convex, straight, and reflex corners") {
  CHECK_FALSE(has_reflex_vertex(unit_square()));
  CHECK_FALSE(has_reflex_vertex(right_triangle6()));  // straight angles are not reflex
  CHECK(has_reflex_vertex(l_shape()));                // the (1,1) corner
}

TEST_CASE("star_convex_from tests visibility of the whole boundary") {
  const auto sq = unit_square();
  CHECK(star_convex_from(sq, {0.5, 0.5}));
  CHECK_FALSE(star_convex_from(sq, {1.5, 0.5}));

  const auto L = l_shape();
  CHECK(star_convex_from(L, {0.5, 0.5}));        // kernel point
  CHECK_FALSE(star_convex_from(L, {1.7, 0.3}));  // lower-right lobe cannot see upper lobe
}

TEST_CASE("ear_clip produces a CCW triangulation covering the polygon") {
  auto check_cover = [](const std::vector<Vec2>& poly, size_t max_tris) {
    const auto tris = ear_clip(poly);
    CHECK(tris.size() <= max_tris);
    double sum = 0.0;
    for (const auto& t : tris) {
      const double a2 = cross2(poly[t[1]] - poly[t[0]], poly[t[2]] - poly[t[0]]);
      CHECK(a2 > 0.0);
      sum += 0.5 * a2;
    }
    CHECK(sum == doctest::Approx(signed_area(poly)).epsilon(1e-12));
  };
  check_cover(unit_square(), 2);
  check_cover(l_shape(), 4);
  check_cover(right_triangle6(), 4);  // degenerate ears dropped

  const std::vector<Vec2> nonconvex{{0, 0},           {1, 0},
                                    {1.514844, -0.819072}, {1.220547, 0.375400},
                                    {1.549272, 1.320583},  {1.056461, 0.717747}};
  check_cover(nonconvex, 4);
}
