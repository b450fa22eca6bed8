#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vemh/geometry.hpp"

namespace vemh {

// Six-noded polygonal element stored as a CCW vertex cycle. For six-noded
// triangles the cycle is (v0, m01, v1, m12, v2, m20). Collinear consecutive
// nodes are allowed; the polygon must be simple with positive area.
struct Element6 {
  std::array<int, 6> nodes{};
};

struct BoundaryEdge {
  int element = -1;
  int local_edge = -1;  // segment nodes[j] -> nodes[(j+1)%6]
  std::string tag;
};

struct ElementGeometry {
  Vec2 centroid = Vec2::Zero();
  double area = 0.0;
  double diameter = 0.0;  // h_E, max pairwise node distance
  double ell0 = 0.0;      // min centroid-to-node distance
};

// Node provenance recorded by generators so perturbation can tell corner
// vertices from midside nodes. Meshes read from JSON have no structure table.
struct NodeStructure {
  bool midside = false;
  int parent_a = -1, parent_b = -1;  // corner nodes a midside node bisects
  bool on_boundary = false;
};

struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<Element6> elements;
  std::vector<BoundaryEdge> boundary;
  std::vector<NodeStructure> structure;  // empty unless generator-built

  std::array<Vec2, 6> element_points(int e) const {
    std::array<Vec2, 6> p;
    for (int i = 0; i < 6; ++i) p[i] = nodes[elements[e].nodes[i]];
    return p;
  }
  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }
};

ElementGeometry element_geometry(const Mesh& mesh, int element);
ElementGeometry element_geometry(std::span<const Vec2> poly);

// Throws std::runtime_error naming the offending element/node on violation:
// arity, index range, repeated nodes, orientation, non-simple polygon.
void validate_mesh(const Mesh& mesh);

// Total mesh area (sum of element areas).
double mesh_area(const Mesh& mesh);

// Detect boundary segments (those owned by exactly one element) and tag the
// ones whose midpoint satisfies pred. Call repeatedly for multiple tags.
void tag_boundary(Mesh& mesh, const std::string& tag,
                  const std::function<bool(const Vec2&)>& pred);

// Ids of nodes incident to boundary edges carrying the given tag.
std::vector<int> boundary_nodes(const Mesh& mesh, const std::string& tag);

struct Rect {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
};

enum class Split { Diagonal, Cross };

// nx-by-ny grid of quads over the rectangle; each quad is split into
// six-noded triangles (2 per quad for Diagonal, 4 for Cross). Boundary edges
// are tagged left/right/bottom/top.
Mesh gen_triangle6_structured(int nx, int ny, const Rect& domain, Split split);

// Random perturbation of interior corner vertices of a generator-built mesh;
// midside nodes are re-bisected, boundary nodes stay put. Deterministic for
// fixed seed. magnitude is a fraction of the local element diameter, < 0.5.
Mesh gen_triangle6_perturbed(const Mesh& base, double magnitude, std::uint64_t seed);

// M-by-N cross-split strip in which the quad center is moved to relative
// height `collapse` in (0,1), driving one sub-triangle of each quad toward a
// sliver as collapse -> 1. collapse = 0.5 reproduces the cross split.
Mesh gen_degenerate_strip(int m, int n, double length, double height, double collapse);

// M-by-N tiling of the strip by six-noded hexagons whose shared vertical
// sides zigzag by `distortion` (fraction of cell width, in [0, 0.5)),
// producing a mix of convex and nonconvex cells. distortion = 0 gives
// rectangles with collinear midside nodes.
Mesh gen_nonconvex_strip(int m, int n, double length, double height, double distortion);

// Build a six-noded mesh from CCW corner triangles, deduplicating shared
// corners (by exact coordinates) and generating midside nodes. Intended for
// custom structured grids (polar, mapped); callers tag boundaries afterwards.
Mesh mesh_from_corner_triangles(std::span<const std::array<Vec2, 3>> tris);

Mesh mesh_io_read(const std::string& path);
void mesh_io_write(const Mesh& mesh, const std::string& path);

}  // namespace vemh
