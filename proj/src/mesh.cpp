#include "vemh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace vemh {

ElementGeometry element_geometry(std::span<const Vec2> poly) {
  ElementGeometry g;
  g.area = signed_area(poly);
  if (g.area <= 0) throw std::runtime_error("element_geometry: non-positive area");
  g.centroid = area_centroid(poly);
  g.diameter = polygon_diameter(poly);
  g.ell0 = std::numeric_limits<double>::max();
  for (const Vec2& p : poly) g.ell0 = std::min(g.ell0, (p - g.centroid).norm());
  return g;
}

ElementGeometry element_geometry(const Mesh& mesh, int element) {
  const auto pts = mesh.element_points(element);
  return element_geometry(std::span<const Vec2>(pts.data(), pts.size()));
}

void validate_mesh(const Mesh& mesh) {
  const int nn = mesh.n_nodes();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto& el = mesh.elements[e].nodes;
    std::set<int> uniq(el.begin(), el.end());
    if (uniq.size() != 6)
      throw std::runtime_error("mesh: element " + std::to_string(e) + " repeats a node");
    for (int id : el)
      if (id < 0 || id >= nn)
        throw std::runtime_error("mesh: element " + std::to_string(e) + " references node " +
                                 std::to_string(id) + " out of range");
    const auto pts = mesh.element_points(e);
    const std::span<const Vec2> poly(pts.data(), pts.size());
    if (signed_area(poly) <= 0)
      throw std::runtime_error("mesh: element " + std::to_string(e) +
                               " is not counterclockwise (non-positive area)");
    if (!is_simple_polygon(poly))
      throw std::runtime_error("mesh: element " + std::to_string(e) + " is not a simple polygon");
  }
  for (const auto& be : mesh.boundary) {
    if (be.element < 0 || be.element >= mesh.n_elements() || be.local_edge < 0 || be.local_edge >= 6)
      throw std::runtime_error("mesh: boundary entry references invalid element/edge");
  }
}

double mesh_area(const Mesh& mesh) {
  double a = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto pts = mesh.element_points(e);
    a += signed_area(std::span<const Vec2>(pts.data(), pts.size()));
  }
  return a;
}

namespace {

// Segments owned by exactly one element, as (element, local_edge).
std::vector<std::pair<int, int>> find_boundary_segments(const Mesh& mesh) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& el : mesh.elements) {
    for (int j = 0; j < 6; ++j) {
      const int a = el.nodes[j], b = el.nodes[(j + 1) % 6];
      count[{std::min(a, b), std::max(a, b)}]++;
    }
  }
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int j = 0; j < 6; ++j) {
      const int a = mesh.elements[e].nodes[j], b = mesh.elements[e].nodes[(j + 1) % 6];
      if (count[{std::min(a, b), std::max(a, b)}] == 1) out.push_back({e, j});
    }
  }
  return out;
}

}  // namespace

void tag_boundary(Mesh& mesh, const std::string& tag,
                  const std::function<bool(const Vec2&)>& pred) {
  std::set<std::pair<int, int>> tagged;
  for (const auto& be : mesh.boundary) tagged.insert({be.element, be.local_edge});
  for (const auto& [e, j] : find_boundary_segments(mesh)) {
    if (tagged.count({e, j})) continue;
    const Vec2 a = mesh.nodes[mesh.elements[e].nodes[j]];
    const Vec2 b = mesh.nodes[mesh.elements[e].nodes[(j + 1) % 6]];
    if (pred(0.5 * (a + b))) mesh.boundary.push_back({e, j, tag});
  }
}

std::vector<int> boundary_nodes(const Mesh& mesh, const std::string& tag) {
  std::set<int> ids;
  for (const auto& be : mesh.boundary) {
    if (be.tag != tag) continue;
    ids.insert(mesh.elements[be.element].nodes[be.local_edge]);
    ids.insert(mesh.elements[be.element].nodes[(be.local_edge + 1) % 6]);
  }
  return {ids.begin(), ids.end()};
}

namespace {

// Incremental mesh builder that dedupes nodes by exact coordinates. All
// generators compute shared nodes from identical expressions, so bitwise
// equality is the right key.
struct Builder {
  Mesh mesh;
  std::map<std::pair<double, double>, int> index;

  int corner(const Vec2& p) {
    const auto key = std::make_pair(p.x(), p.y());
    if (auto it = index.find(key); it != index.end()) return it->second;
    const int id = mesh.n_nodes();
    mesh.nodes.push_back(p);
    mesh.structure.push_back({});
    index[key] = id;
    return id;
  }

  int midside(int a, int b) {
    const Vec2 p = 0.5 * (mesh.nodes[a] + mesh.nodes[b]);
    const auto key = std::make_pair(p.x(), p.y());
    if (auto it = index.find(key); it != index.end()) return it->second;
    const int id = mesh.n_nodes();
    mesh.nodes.push_back(p);
    mesh.structure.push_back({true, std::min(a, b), std::max(a, b), false});
    index[key] = id;
    return id;
  }

  void triangle6(int v0, int v1, int v2) {
    mesh.elements.push_back({{v0, midside(v0, v1), v1, midside(v1, v2), v2, midside(v2, v0)}});
  }

  void finish_boundary_flags() {
    for (const auto& [e, j] : find_boundary_segments(mesh)) {
      mesh.structure[mesh.elements[e].nodes[j]].on_boundary = true;
      mesh.structure[mesh.elements[e].nodes[(j + 1) % 6]].on_boundary = true;
    }
  }
};

void tag_rect_boundary(Mesh& mesh, const Rect& r) {
  const double tx = 1e-9 * (r.x1 - r.x0), ty = 1e-9 * (r.y1 - r.y0);
  tag_boundary(mesh, "left", [&](const Vec2& p) { return std::abs(p.x() - r.x0) < tx; });
  tag_boundary(mesh, "right", [&](const Vec2& p) { return std::abs(p.x() - r.x1) < tx; });
  tag_boundary(mesh, "bottom", [&](const Vec2& p) { return std::abs(p.y() - r.y0) < ty; });
  tag_boundary(mesh, "top", [&](const Vec2& p) { return std::abs(p.y() - r.y1) < ty; });
}

}  // namespace

Mesh gen_triangle6_structured(int nx, int ny, const Rect& domain, Split split) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("gen_triangle6_structured: nx, ny >= 1");
  if (domain.x1 <= domain.x0 || domain.y1 <= domain.y0)
    throw std::invalid_argument("gen_triangle6_structured: empty domain");
  Builder bld;
  const double dx = (domain.x1 - domain.x0) / nx, dy = (domain.y1 - domain.y0) / ny;
  const auto gx = [&](int i) { return i == nx ? domain.x1 : domain.x0 + i * dx; };
  const auto gy = [&](int j) { return j == ny ? domain.y1 : domain.y0 + j * dy; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int ll = bld.corner({gx(i), gy(j)});
      const int lr = bld.corner({gx(i + 1), gy(j)});
      const int ur = bld.corner({gx(i + 1), gy(j + 1)});
      const int ul = bld.corner({gx(i), gy(j + 1)});
      if (split == Split::Diagonal) {
        bld.triangle6(ll, lr, ur);
        bld.triangle6(ll, ur, ul);
      } else {
        const int c = bld.corner({0.5 * (gx(i) + gx(i + 1)), 0.5 * (gy(j) + gy(j + 1))});
        bld.triangle6(ll, lr, c);
        bld.triangle6(lr, ur, c);
        bld.triangle6(ur, ul, c);
        bld.triangle6(ul, ll, c);
      }
    }
  }
  bld.finish_boundary_flags();
  tag_rect_boundary(bld.mesh, domain);
  validate_mesh(bld.mesh);
  return bld.mesh;
}

Mesh gen_triangle6_perturbed(const Mesh& base, double magnitude, std::uint64_t seed) {
  if (!(magnitude >= 0.0 && magnitude < 0.5))
    throw std::invalid_argument("gen_triangle6_perturbed: magnitude must be in [0, 0.5)");
  if (base.structure.size() != base.nodes.size())
    throw std::invalid_argument("gen_triangle6_perturbed: base mesh has no structure table");

  Mesh mesh = base;
  const int nn = mesh.n_nodes();

  std::vector<std::vector<int>> node_elems(nn);
  for (int e = 0; e < mesh.n_elements(); ++e)
    for (int id : mesh.elements[e].nodes) node_elems[id].push_back(e);

  std::vector<double> h_local(nn, 0.0);
  {
    std::vector<double> h_elem(mesh.n_elements());
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const auto pts = mesh.element_points(e);
      h_elem[e] = polygon_diameter(std::span<const Vec2>(pts.data(), pts.size()));
    }
    for (int id = 0; id < nn; ++id) {
      double h = std::numeric_limits<double>::max();
      for (int e : node_elems[id]) h = std::min(h, h_elem[e]);
      h_local[id] = node_elems[id].empty() ? 0.0 : h;
    }
  }

  // midsides hanging off each corner node
  std::vector<std::vector<int>> dependents(nn);
  for (int id = 0; id < nn; ++id) {
    if (!mesh.structure[id].midside) continue;
    dependents[mesh.structure[id].parent_a].push_back(id);
    dependents[mesh.structure[id].parent_b].push_back(id);
  }

  const auto rebisect = [&](int mid) {
    mesh.nodes[mid] =
        0.5 * (mesh.nodes[mesh.structure[mid].parent_a] + mesh.nodes[mesh.structure[mid].parent_b]);
  };
  const auto elements_ok = [&](const std::set<int>& elems) {
    for (int e : elems) {
      const auto pts = mesh.element_points(e);
      const std::span<const Vec2> poly(pts.data(), pts.size());
      if (signed_area(poly) <= 0 || !is_simple_polygon(poly)) return false;
    }
    return true;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  constexpr int kRetryCap = 64;

  for (int id = 0; id < nn; ++id) {
    const auto& st = mesh.structure[id];
    if (st.midside || st.on_boundary) continue;
    std::set<int> affected(node_elems[id].begin(), node_elems[id].end());
    for (int mid : dependents[id])
      for (int e : node_elems[mid]) affected.insert(e);

    const Vec2 original = mesh.nodes[id];
    bool placed = false;
    for (int attempt = 0; attempt < kRetryCap; ++attempt) {
      const Vec2 offset(unit(rng), unit(rng));
      mesh.nodes[id] = original + magnitude * h_local[id] * offset;
      for (int mid : dependents[id]) rebisect(mid);
      if (elements_ok(affected)) { placed = true; break; }
    }
    if (!placed) {
      throw std::runtime_error("gen_triangle6_perturbed: node " + std::to_string(id) +
                               " could not be placed within the retry cap");
    }
  }
  validate_mesh(mesh);
  return mesh;
}

Mesh gen_degenerate_strip(int m, int n, double length, double height, double collapse) {
  if (m < 1 || (n != 1 && n != 2))
    throw std::invalid_argument("gen_degenerate_strip: m >= 1 and n in {1, 2}");
  if (!(collapse > 0.0 && collapse < 1.0))
    throw std::invalid_argument(
        "gen_degenerate_strip: collapse must be in (0, 1); the limits collapse a sub-triangle "
        "to exactly zero area");
  Builder bld;
  const double dx = length / m, dy = height / n;
  const auto gx = [&](int i) { return i == m ? length : i * dx; };
  const auto gy = [&](int j) { return j == n ? height : j * dy; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      const int ll = bld.corner({gx(i), gy(j)});
      const int lr = bld.corner({gx(i + 1), gy(j)});
      const int ur = bld.corner({gx(i + 1), gy(j + 1)});
      const int ul = bld.corner({gx(i), gy(j + 1)});
      const int c = bld.corner({0.5 * (gx(i) + gx(i + 1)), gy(j) + collapse * dy});
      bld.triangle6(ll, lr, c);
      bld.triangle6(lr, ur, c);
      bld.triangle6(ur, ul, c);
      bld.triangle6(ul, ll, c);
    }
  }
  bld.finish_boundary_flags();
  tag_rect_boundary(bld.mesh, {0, 0, length, height});
  validate_mesh(bld.mesh);
  return bld.mesh;
}

Mesh gen_nonconvex_strip(int m, int n, double length, double height, double distortion) {
  if (m < 1 || n < 1) throw std::invalid_argument("gen_nonconvex_strip: m, n >= 1");
  if (!(distortion >= 0.0 && distortion < 0.5))
    throw std::invalid_argument("gen_nonconvex_strip: distortion must be in [0, 0.5)");
  Builder bld;
  const double wx = length / m, hy = height / n;
  const auto gx = [&](int i) { return i == m ? length : i * wx; };
  const auto gy = [&](int j) { return j == n ? height : j * hy; };
  // Joint on vertical line i at mid-height of row j; interior lines zigzag.
  const auto joint = [&](int i, int j) -> Vec2 {
    const double delta =
        (i == 0 || i == m) ? 0.0 : ((i + j) % 2 == 0 ? 1.0 : -1.0) * distortion * wx;
    return {gx(i) + delta, gy(j) + 0.5 * hy};
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      const int bl = bld.corner({gx(i), gy(j)});
      const int br = bld.corner({gx(i + 1), gy(j)});
      const int rm = bld.corner(joint(i + 1, j));
      const int tr = bld.corner({gx(i + 1), gy(j + 1)});
      const int tl = bld.corner({gx(i), gy(j + 1)});
      const int lm = bld.corner(joint(i, j));
      bld.mesh.elements.push_back({{bl, br, rm, tr, tl, lm}});
    }
  }
  bld.finish_boundary_flags();
  tag_rect_boundary(bld.mesh, {0, 0, length, height});
  validate_mesh(bld.mesh);
  return bld.mesh;
}

Mesh mesh_from_corner_triangles(std::span<const std::array<Vec2, 3>> tris) {
  if (tris.empty()) throw std::invalid_argument("mesh_from_corner_triangles: no triangles");
  Builder bld;
  for (const auto& t : tris) {
    const int a = bld.corner(t[0]), b = bld.corner(t[1]), c = bld.corner(t[2]);
    bld.triangle6(a, b, c);
  }
  bld.finish_boundary_flags();
  validate_mesh(bld.mesh);
  return bld.mesh;
}

Mesh mesh_io_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("mesh_io_read: cannot open " + path);
  nlohmann::json j;
  in >> j;
  Mesh mesh;
  for (const auto& nd : j.at("nodes")) {
    if (!nd.is_array() || nd.size() != 2)
      throw std::runtime_error("mesh_io_read: node entries must be [x, y]");
    mesh.nodes.push_back({nd[0].get<double>(), nd[1].get<double>()});
  }
  int e = 0;
  for (const auto& el : j.at("elements")) {
    if (!el.is_array() || el.size() != 6)
      throw std::runtime_error("mesh_io_read: element " + std::to_string(e) +
                               " must list exactly 6 node ids");
    Element6 elem;
    for (int i = 0; i < 6; ++i) elem.nodes[i] = el[i].get<int>();
    mesh.elements.push_back(elem);
    ++e;
  }
  if (j.contains("boundary")) {
    for (const auto& be : j.at("boundary")) {
      if (!be.is_array() || be.size() != 3)
        throw std::runtime_error("mesh_io_read: boundary entries must be [element, edge, tag]");
      mesh.boundary.push_back({be[0].get<int>(), be[1].get<int>(), be[2].get<std::string>()});
    }
  }
  validate_mesh(mesh);
  return mesh;
}

void mesh_io_write(const Mesh& mesh, const std::string& path) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const Vec2& p : mesh.nodes) j["nodes"].push_back({p.x(), p.y()});
  j["elements"] = nlohmann::json::array();
  for (const auto& el : mesh.elements)
    j["elements"].push_back(std::vector<int>(el.nodes.begin(), el.nodes.end()));
  j["boundary"] = nlohmann::json::array();
  for (const auto& be : mesh.boundary) {
    j["boundary"].push_back(nlohmann::json::array({be.element, be.local_edge, be.tag}));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("mesh_io_write: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace vemh
