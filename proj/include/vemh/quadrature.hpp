#pragma once

#include <array>
#include <span>
#include <vector>

#include "vemh/geometry.hpp"

namespace vemh {

struct QuadPoint {
  Vec2 x;
  double w = 0.0;
};

// Interior rule for a simple polygon: the polygon is triangulated (fan from
// the centroid when it lies in the kernel, ear clipping otherwise) and a
// conical-product Gauss rule exact to the requested total degree is mapped
// onto each sub-triangle. Weights sum to the polygon area.
struct PolygonRule {
  std::vector<QuadPoint> points;
  double area = 0.0;
};

PolygonRule polygon_rule(std::span<const Vec2> poly, int degree);

// Per-segment Gauss rule along the polygon boundary with outward normals.
struct EdgeSegment {
  int local_a = -1, local_b = -1;  // polygon vertex indices of the endpoints
  Vec2 a, b;
  Vec2 normal;  // unit outward normal (CCW polygon)
  double length = 0.0;
  std::vector<double> t;  // parameter in [0,1] along a -> b
  std::vector<double> w;  // arc-length weights, sum to length
};

struct EdgeRule {
  std::vector<EdgeSegment> segments;
};

EdgeRule edge_rule(std::span<const Vec2> poly, int degree);

// Gauss-Legendre nodes/weights on [0,1]; weights sum to 1.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Gauss-Jacobi nodes/weights on [0,1] for the weight (1-x); weights sum to 1/2.
void gauss_jacobi10_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace vemh
