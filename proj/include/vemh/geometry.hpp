#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace vemh {

using Vec2 = Eigen::Vector2d;

// 2D cross product (z-component of the 3D cross).
inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Signed area of a polygon given as a CCW vertex cycle (shoelace).
double signed_area(std::span<const Vec2> poly);

// Area centroid of a simple polygon.
Vec2 area_centroid(std::span<const Vec2> poly);

// Largest pairwise vertex distance.
double polygon_diameter(std::span<const Vec2> poly);

// True if no two non-adjacent edges intersect or touch.
// Collinear consecutive vertices are fine.
bool is_simple_polygon(std::span<const Vec2> poly);

// True if some vertex has a reflex interior angle (CCW polygon assumed).
bool has_reflex_vertex(std::span<const Vec2> poly, double tol = 1e-12);

// True if the fan from point c over the boundary covers the polygon without
// folding, i.e. every edge sees c strictly on its interior side.
bool star_convex_from(std::span<const Vec2> poly, const Vec2& c, double tol_rel = 1e-12);

// Triangulate a simple polygon by ear clipping; returns vertex index triples.
// Zero-area ears (collinear vertices) are dropped, not emitted.
std::vector<std::array<int, 3>> ear_clip(std::span<const Vec2> poly);

}  // namespace vemh
