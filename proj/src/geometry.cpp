#include "vemh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vemh {

double signed_area(std::span<const Vec2> poly) {
  const size_t n = poly.size();
  double a = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    a += cross2(p, q);
  }
  return 0.5 * a;
}

Vec2 area_centroid(std::span<const Vec2> poly) {
  const size_t n = poly.size();
  const double a = signed_area(poly);
  if (std::abs(a) < 1e-300) throw std::runtime_error("area_centroid: degenerate polygon");
  Vec2 c = Vec2::Zero();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double w = cross2(p, q);
    c += w * (p + q);
  }
  return c / (6.0 * a);
}

double polygon_diameter(std::span<const Vec2> poly) {
  double d = 0.0;
  for (size_t i = 0; i < poly.size(); ++i)
    for (size_t j = i + 1; j < poly.size(); ++j)
      d = std::max(d, (poly[i] - poly[j]).norm());
  return d;
}

namespace {

// Proper or touching intersection of segments [a,b] and [c,d].
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    const double v = cross2(q - p, r - p);
    const double scale = (q - p).norm() * (r - p).norm();
    if (std::abs(v) <= 1e-14 * std::max(scale, 1e-300)) return 0;
    return v > 0 ? 1 : -1;
  };
  const auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return std::min(p.x(), q.x()) - 1e-14 <= r.x() && r.x() <= std::max(p.x(), q.x()) + 1e-14 &&
           std::min(p.y(), q.y()) - 1e-14 <= r.y() && r.y() <= std::max(p.y(), q.y()) + 1e-14;
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

bool is_simple_polygon(std::span<const Vec2> poly) {
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // Skip adjacent edges (they share a vertex by construction).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

bool has_reflex_vertex(std::span<const Vec2> poly, double tol) {
  const int n = static_cast<int>(poly.size());
  const double scale = polygon_diameter(poly);
  for (int i = 0; i < n; ++i) {
    const Vec2& prev = poly[(i + n - 1) % n];
    const Vec2& cur = poly[i];
    const Vec2& next = poly[(i + 1) % n];
    if (cross2(cur - prev, next - cur) < -tol * scale * scale) return true;
  }
  return false;
}

bool star_convex_from(std::span<const Vec2> poly, const Vec2& c, double tol_rel) {
  // c lies in the closed kernel iff it is on or left of every CCW edge.
  // Zero-area fan triangles (c collinear with an edge) are harmless.
  const int n = static_cast<int>(poly.size());
  const double a = std::abs(signed_area(poly));
  for (int i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    if (cross2(q - p, c - p) < -tol_rel * a) return false;
  }
  return true;
}

std::vector<std::array<int, 3>> ear_clip(std::span<const Vec2> poly) {
  const int n = static_cast<int>(poly.size());
  if (signed_area(poly) <= 0) throw std::runtime_error("ear_clip: polygon must be CCW");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::vector<std::array<int, 3>> tris;
  const double scale2 = polygon_diameter(poly) * polygon_diameter(poly);

  const auto point_in_tri = [](const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    const double d1 = cross2(b - a, p - a);
    const double d2 = cross2(c - b, p - b);
    const double d3 = cross2(a - c, p - c);
    const bool has_neg = (d1 < 0) || (d2 < 0) || (d3 < 0);
    const bool has_pos = (d1 > 0) || (d2 > 0) || (d3 > 0);
    return !(has_neg && has_pos);
  };

  int guard = 0;
  while (idx.size() > 3) {
    if (++guard > 10 * n * n) throw std::runtime_error("ear_clip: no ear found (non-simple polygon?)");
    bool clipped = false;
    const int m = static_cast<int>(idx.size());
    for (int i = 0; i < m; ++i) {
      const int ia = idx[(i + m - 1) % m], ib = idx[i], ic = idx[(i + 1) % m];
      const Vec2 &a = poly[ia], &b = poly[ib], &c = poly[ic];
      const double cr = cross2(b - a, c - b);
      if (cr < -1e-14 * scale2) continue;  // reflex corner, not an ear
      if (cr <= 1e-14 * scale2) {
        // Collinear corner: remove the vertex, it spans no area.
        idx.erase(idx.begin() + i);
        clipped = true;
        break;
      }
      bool contains = false;
      for (int j = 0; j < m; ++j) {
        const int ij = idx[j];
        if (ij == ia || ij == ib || ij == ic) continue;
        if (point_in_tri(a, b, c, poly[ij])) { contains = true; break; }
      }
      if (contains) continue;
      tris.push_back({ia, ib, ic});
      idx.erase(idx.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped) throw std::runtime_error("ear_clip: stuck (non-simple polygon?)");
  }
  if (idx.size() == 3) {
    const double cr = cross2(poly[idx[1]] - poly[idx[0]], poly[idx[2]] - poly[idx[1]]);
    if (cr > 1e-14 * scale2) tris.push_back({idx[0], idx[1], idx[2]});
  }
  return tris;
}

}  // namespace vemh
