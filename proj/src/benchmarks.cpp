#include "vemh/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace vemh {

namespace {

constexpr double kPi = std::numbers::pi;

Mesh translated(Mesh m, const Vec2& t) {
  for (auto& p : m.nodes) p += t;
  return m;
}

// Move boundary midside nodes whose corner parents both sit on the circle of
// the given radius onto that circle, so curved boundaries are resolved by two
// chords per element edge.
void project_midsides_to_arc(Mesh& mesh, double radius) {
  const double tol = 1e-9 * radius;
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    const auto& st = mesh.structure[i];
    if (!st.midside || !st.on_boundary) continue;
    if (std::abs(mesh.nodes[st.parent_a].norm() - radius) > tol) continue;
    if (std::abs(mesh.nodes[st.parent_b].norm() - radius) > tol) continue;
    mesh.nodes[i] = radius * mesh.nodes[i].normalized();
  }
  validate_mesh(mesh);
}

std::function<double(const Mesh&, const FieldSolution&)> uy_at(const Vec2& p) {
  return [p](const Mesh& mesh, const FieldSolution& sol) {
    return sol.d[dof_y(node_nearest(mesh, p))];
  };
}

void add_line_samples(std::vector<BcSample>& out, const Vec2& p0, const Vec2& p1, const Vec2& n,
                      const std::string& traction_tag, const std::string& dirichlet_tag,
                      int count) {
  for (int i = 0; i < count; ++i) {
    const double t = (i + 0.5) / count;
    out.push_back({p0 + t * (p1 - p0), n, traction_tag, dirichlet_tag});
  }
}

// Arc of the circle |x| = radius between polar angles th0 and th1; `outward`
// says whether the domain's outward normal points away from the origin.
void add_arc_samples(std::vector<BcSample>& out, double radius, double th0, double th1,
                     bool outward, const std::string& traction_tag, int count) {
  for (int i = 0; i < count; ++i) {
    const double th = th0 + (th1 - th0) * (i + 0.5) / count;
    const Vec2 rhat{std::cos(th), std::sin(th)};
    out.push_back({radius * rhat, outward ? rhat : Vec2(-rhat), traction_tag, ""});
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Closed forms.
// ---------------------------------------------------------------------------

Vec2 TimoshenkoBeam::displacement(const Vec2& X) const {
  const double x = X.x(), y = X.y();
  const double k = P / (6.0 * Ebar() * inertia());
  const double nb = nubar(), c = half_depth();
  const double u = -k * y * ((6.0 * L - 3.0 * x) * x + (2.0 + nb) * y * y) - rotation * y;
  const double v = k * (3.0 * nb * y * y * (L - x) + (3.0 * L - x) * x * x +
                        6.0 * (1.0 + nb) * c * c * x) +
                   rotation * x;
  return {u, v};
}

Eigen::Vector3d TimoshenkoBeam::stress(const Vec2& X) const {
  const double x = X.x(), y = X.y();
  const double I = inertia(), c = half_depth();
  return {-P * (L - x) * y / I, 0.0, P * (c * c - y * y) / (2.0 * I)};
}

double TimoshenkoBeam::balanced_rotation() const {
  const double c = half_depth();
  return -P * (2.0 + nubar()) * c * c / (6.0 * Ebar() * inertia());
}

Vec2 KirschPlate::displacement(const Vec2& X) const {
  const double r = X.norm(), th = std::atan2(X.y(), X.x());
  const double kap = kolosov();
  const double ra = r / a, ar = a / r, ar3 = ar * ar * ar;
  const double f = sigma0 * a / (8.0 * mu());
  const double ux = f * (ra * (kap + 1.0) * std::cos(th) +
                         2.0 * ar * ((1.0 + kap) * std::cos(th) + std::cos(3.0 * th)) -
                         2.0 * ar3 * std::cos(3.0 * th));
  const double uy = f * (ra * (kap - 3.0) * std::sin(th) +
                         2.0 * ar * ((1.0 - kap) * std::sin(th) + std::sin(3.0 * th)) -
                         2.0 * ar3 * std::sin(3.0 * th));
  return {ux, uy};
}

Eigen::Vector3d KirschPlate::stress(const Vec2& X) const {
  const double r = X.norm(), th = std::atan2(X.y(), X.x());
  const double a2 = (a * a) / (r * r), a4 = a2 * a2;
  const double c2 = std::cos(2.0 * th), s2 = std::sin(2.0 * th);
  const double srr = 0.5 * sigma0 * (1.0 - a2) + 0.5 * sigma0 * (1.0 - 4.0 * a2 + 3.0 * a4) * c2;
  const double stt = 0.5 * sigma0 * (1.0 + a2) - 0.5 * sigma0 * (1.0 + 3.0 * a4) * c2;
  const double srt = -0.5 * sigma0 * (1.0 + 2.0 * a2 - 3.0 * a4) * s2;
  const double c = std::cos(th), s = std::sin(th);
  return {srr * c * c + stt * s * s - 2.0 * srt * s * c,
          srr * s * s + stt * c * c + 2.0 * srt * s * c,
          (srr - stt) * s * c + srt * (c * c - s * s)};
}

Vec2 LameCylinder::displacement(const Vec2& X) const {
  const double r = X.norm();
  const double k = p * a * a / (b * b - a * a);
  const double ur = (1.0 + nu) * k / E * ((1.0 - 2.0 * nu) * r + b * b / r);
  return ur / r * X;
}

Eigen::Vector3d LameCylinder::stress(const Vec2& X) const {
  const double r = X.norm(), th = std::atan2(X.y(), X.x());
  const double k = p * a * a / (b * b - a * a);
  const double srr = k * (1.0 - b * b / (r * r));
  const double stt = k * (1.0 + b * b / (r * r));
  const double c = std::cos(th), s = std::sin(th);
  return {srr * c * c + stt * s * s, srr * s * s + stt * c * c, (srr - stt) * s * c};
}

double LameCylinder::hydrostatic() const {
  const double k = p * a * a / (b * b - a * a);
  return (1.0 + nu) * 2.0 * k / 3.0;
}

Vec2 ManufacturedField::displacement(const Vec2& X) const {
  const double x = X.x(), y = X.y();
  const double q = 1.0 / (1.0 + law.lambda());
  const double s = std::sin(kPi * x) * std::sin(kPi * y);
  return {std::sin(2.0 * kPi * y) * (std::cos(2.0 * kPi * x) - 1.0) + q * s,
          std::sin(2.0 * kPi * x) * (1.0 - std::cos(2.0 * kPi * y)) + q * s};
}

Eigen::Vector3d ManufacturedField::stress(const Vec2& X) const {
  const double x = X.x(), y = X.y();
  const double q = 1.0 / (1.0 + law.lambda());
  const double c1x = std::cos(kPi * x), s1x = std::sin(kPi * x);
  const double c1y = std::cos(kPi * y), s1y = std::sin(kPi * y);
  const double c2x = std::cos(2.0 * kPi * x), s2x = std::sin(2.0 * kPi * x);
  const double c2y = std::cos(2.0 * kPi * y), s2y = std::sin(2.0 * kPi * y);
  const double ux = -2.0 * kPi * s2x * s2y + q * kPi * c1x * s1y;
  const double uy = 2.0 * kPi * c2y * (c2x - 1.0) + q * kPi * s1x * c1y;
  const double vx = 2.0 * kPi * c2x * (1.0 - c2y) + q * kPi * c1x * s1y;
  const double vy = 2.0 * kPi * s2x * s2y + q * kPi * s1x * c1y;
  return law.C * Eigen::Vector3d(ux, vy, uy + vx);
}

Vec2 ManufacturedField::body(const Vec2& X) const {
  const double x = X.x(), y = X.y();
  const double lam = law.lambda(), mu = law.mu();
  const double q = 1.0 / (1.0 + lam);
  const double s = std::sin(kPi * x) * std::sin(kPi * y);
  const double grad = (lam + mu) * q * std::cos(kPi * (x + y));
  const double s2x = std::sin(2.0 * kPi * x), s2y = std::sin(2.0 * kPi * y);
  const double c2x = std::cos(2.0 * kPi * x), c2y = std::cos(2.0 * kPi * y);
  const double bx = grad - mu * (8.0 * c2x * s2y - 4.0 * s2y + 2.0 * q * s);
  const double by = grad - mu * (-8.0 * c2y * s2x + 4.0 * s2x + 2.0 * q * s);
  return -kPi * kPi * Vec2(bx, by);
}

// ---------------------------------------------------------------------------
// Case plumbing.
// ---------------------------------------------------------------------------

int node_nearest(const Mesh& mesh, const Vec2& p) {
  if (mesh.nodes.empty()) throw std::invalid_argument("node_nearest: empty mesh");
  int best = 0;
  double d2 = (mesh.nodes[0] - p).squaredNorm();
  for (int i = 1; i < mesh.n_nodes(); ++i) {
    const double v = (mesh.nodes[i] - p).squaredNorm();
    if (v < d2) d2 = v, best = i;
  }
  return best;
}

const MeshFamily& BenchmarkCase::family(const std::string& family_name) const {
  for (const auto& f : families)
    if (f.name == family_name) return f;
  std::string known;
  for (const auto& f : families) known += (known.empty() ? "" : ", ") + f.name;
  throw std::invalid_argument("case " + name + ": unknown mesh family '" + family_name +
                              "' (have: " + known + ")");
}

HydroMode hydro_mode_for(const BenchmarkCase& bc, FormKind kind) {
  return kind == FormKind::Psh12 ? HydroMode::Pointwise : bc.hydro_mode_sh;
}

DirichletBC make_dirichlet(const Mesh& mesh, const BenchmarkCase& bc) {
  DirichletBC out;
  for (const auto& rule : bc.dirichlet) {
    for (int n : boundary_nodes(mesh, rule.tag)) {
      const Vec2 v = rule.value ? rule.value(mesh.nodes[n]) : Vec2::Zero();
      if (rule.fix_x) out.fix(n, 0, v.x());
      if (rule.fix_y) out.fix(n, 1, v.y());
    }
  }
  return out;
}

void check_bc_consistency(const BenchmarkCase& bc, double tol) {
  if (!bc.exact) return;
  double sscale = 1.0, uscale = 1.0;
  for (const auto& s : bc.bc_samples) {
    sscale = std::max(sscale, bc.exact->sigma(s.x).cwiseAbs().maxCoeff());
    uscale = std::max(uscale, bc.exact->u(s.x).cwiseAbs().maxCoeff());
  }
  for (std::size_t i = 0; i < bc.bc_samples.size(); ++i) {
    const auto& s = bc.bc_samples[i];
    const auto where = [&] {
      return "case " + bc.name + ", boundary sample " + std::to_string(i) + " at (" +
             std::to_string(s.x.x()) + ", " + std::to_string(s.x.y()) + ")";
    };
    if (!s.dirichlet_tag.empty()) {
      const auto rule = std::find_if(bc.dirichlet.begin(), bc.dirichlet.end(),
                                     [&](const DirichletRule& r) { return r.tag == s.dirichlet_tag; });
      if (rule == bc.dirichlet.end())
        throw std::runtime_error(where() + ": no Dirichlet rule tagged " + s.dirichlet_tag);
      const Vec2 data = rule->value ? rule->value(s.x) : Vec2::Zero();
      const Vec2 ue = bc.exact->u(s.x);
      if ((rule->fix_x && std::abs(data.x() - ue.x()) > tol * uscale) ||
          (rule->fix_y && std::abs(data.y() - ue.y()) > tol * uscale))
        throw std::runtime_error(where() + ": Dirichlet data disagrees with the exact field");
    } else {
      const Eigen::Vector3d sg = bc.exact->sigma(s.x);
      const Vec2 t_exact{sg[0] * s.n.x() + sg[2] * s.n.y(), sg[2] * s.n.x() + sg[1] * s.n.y()};
      Vec2 t_applied = Vec2::Zero();
      if (!s.traction_tag.empty()) t_applied = bc.loads.tractions.at(s.traction_tag)(s.x);
      if ((t_applied - t_exact).cwiseAbs().maxCoeff() > tol * sscale)
        throw std::runtime_error(where() + ": applied traction disagrees with sigma.n");
    }
  }
}

// ---------------------------------------------------------------------------
// Mesh builders.
// ---------------------------------------------------------------------------

Mesh cooks_mesh(int n) {
  if (n < 1) throw std::invalid_argument("cooks_mesh: n >= 1");
  std::vector<Vec2> grid((n + 1) * (n + 1));
  const auto at = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const double s = double(i) / n, t = double(j) / n;
      const double yb = 44.0 * s, yt = 44.0 + 16.0 * s;
      grid[at(i, j)] = {48.0 * s, yb + t * (yt - yb)};
    }
  }
  std::vector<std::array<Vec2, 3>> tris;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Vec2 A = grid[at(i, j)], B = grid[at(i + 1, j)];
      const Vec2 C = grid[at(i + 1, j + 1)], D = grid[at(i, j + 1)];
      tris.push_back({A, B, C});
      tris.push_back({A, C, D});
    }
  }
  Mesh mesh = mesh_from_corner_triangles(tris);
  tag_boundary(mesh, "left", [](const Vec2& p) { return std::abs(p.x()) < 1e-6; });
  tag_boundary(mesh, "right", [](const Vec2& p) { return std::abs(p.x() - 48.0) < 1e-6; });
  return mesh;
}

namespace {

// Polar-like grid between the circle r = a and an outer contour R(theta),
// swept over [0, pi/2] and split into triangles.
Mesh polar_patch_mesh(int nr, int nt, double a, const std::function<double(double)>& outer) {
  if (nr < 1 || nt < 1) throw std::invalid_argument("polar_patch_mesh: nr, nt >= 1");
  std::vector<Vec2> grid((nr + 1) * (nt + 1));
  const auto at = [nr](int i, int j) { return j * (nr + 1) + i; };
  for (int j = 0; j <= nt; ++j) {
    const double th = 0.5 * kPi * (double(j) / nt);
    const double R = outer(th);
    for (int i = 0; i <= nr; ++i) {
      const double r = a + (R - a) * (double(i) / nr);
      grid[at(i, j)] = {r * std::cos(th), r * std::sin(th)};
    }
  }
  std::vector<std::array<Vec2, 3>> tris;
  for (int j = 0; j < nt; ++j) {
    for (int i = 0; i < nr; ++i) {
      const Vec2 A = grid[at(i, j)], B = grid[at(i + 1, j)];
      const Vec2 C = grid[at(i + 1, j + 1)], D = grid[at(i, j + 1)];
      tris.push_back({A, B, C});
      tris.push_back({A, C, D});
    }
  }
  return mesh_from_corner_triangles(tris);
}

}  // namespace

Mesh plate_hole_mesh(int nr, int nt) {
  const double a = 1.0, S = 5.0;
  Mesh mesh = polar_patch_mesh(nr, nt, a,
                               [S](double th) { return S / std::max(std::cos(th), std::sin(th)); });
  project_midsides_to_arc(mesh, a);
  tag_boundary(mesh, "symx", [](const Vec2& p) { return std::abs(p.x()) < 1e-7; });
  tag_boundary(mesh, "symy", [](const Vec2& p) { return std::abs(p.y()) < 1e-7; });
  tag_boundary(mesh, "right", [S](const Vec2& p) { return std::abs(p.x() - S) < 1e-7; });
  tag_boundary(mesh, "top", [S](const Vec2& p) { return std::abs(p.y() - S) < 1e-7; });
  return mesh;
}

Mesh annulus_mesh(int nr, int nt, double a, double b) {
  if (!(b > a && a > 0)) throw std::invalid_argument("annulus_mesh: need 0 < a < b");
  Mesh mesh = polar_patch_mesh(nr, nt, a, [b](double) { return b; });
  project_midsides_to_arc(mesh, a);
  project_midsides_to_arc(mesh, b);
  tag_boundary(mesh, "symx", [b](const Vec2& p) { return std::abs(p.x()) < 1e-9 * b; });
  tag_boundary(mesh, "symy", [b](const Vec2& p) { return std::abs(p.y()) < 1e-9 * b; });
  // Straight edges are already tagged; of the two arcs, only the inner one
  // passes the radius threshold.
  const double thresh = a + 0.25 * (b - a) / nr;
  tag_boundary(mesh, "inner", [thresh](const Vec2& p) { return p.norm() < thresh; });
  return mesh;
}

// ---------------------------------------------------------------------------
// Cases.
// ---------------------------------------------------------------------------

BenchmarkCase case_cantilever_thin() {
  const double L = 32.0, D = 1.0, P = -100.0;
  BenchmarkCase bc;
  bc.name = "cantilever_thin";
  bc.law = make_material(1e5, 0.49995, Regime::PlaneStrain);
  TimoshenkoBeam beam{bc.law.E, bc.law.nu, L, D, P, Regime::PlaneStrain, 0.0};
  beam.rotation = beam.balanced_rotation();
  const Rect rect{0.0, -0.5 * D, L, 0.5 * D};
  bc.families = {
      {"diagonal", 4,
       [rect](int l) { return gen_triangle6_structured(8 << l, 1, rect, Split::Diagonal); }},
      {"cross", 4,
       [rect](int l) { return gen_triangle6_structured(8 << l, 1, rect, Split::Cross); }},
      {"degenerate", 4,
       [=](int l) {
         return translated(gen_degenerate_strip(8 << l, 1, L, D, 0.8), {0.0, -0.5 * D});
       }},
      {"nonconvex", 4,
       [=](int l) {
         return translated(gen_nonconvex_strip(8 << l, 1, L, D, 0.3), {0.0, -0.5 * D});
       }},
  };
  bc.dirichlet = {{"left", true, true, [beam](const Vec2& x) { return beam.displacement(x); }}};
  bc.loads.tractions["right"] = [beam](const Vec2& x) { return Vec2(0.0, beam.stress(x)[2]); };
  bc.exact = ExactFields{[beam](const Vec2& x) { return beam.displacement(x); },
                         [beam](const Vec2& x) { return beam.stress(x); }};
  add_line_samples(bc.bc_samples, {0.0, -0.5 * D}, {0.0, 0.5 * D}, {-1, 0}, "", "left", 5);
  add_line_samples(bc.bc_samples, {L, -0.5 * D}, {L, 0.5 * D}, {1, 0}, "right", "", 5);
  add_line_samples(bc.bc_samples, {0.0, 0.5 * D}, {L, 0.5 * D}, {0, 1}, "", "", 5);
  add_line_samples(bc.bc_samples, {0.0, -0.5 * D}, {L, -0.5 * D}, {0, -1}, "", "", 5);
  // The exact v is constant across the end section, so the corner sample
  // shares the closed-form normalization while always being a mesh vertex.
  bc.qoi = uy_at({L, 0.5 * D});
  bc.qoi_exact = beam.tip_deflection();
  return bc;
}

BenchmarkCase case_cantilever_thick() {
  const double L = 48.0, D = 12.0, P = 40.0;
  BenchmarkCase bc;
  bc.name = "cantilever_thick";
  bc.law = make_material(30000.0, 0.25, Regime::PlaneStress);
  TimoshenkoBeam beam{bc.law.E, bc.law.nu, L, D, P, Regime::PlaneStress, 0.0};
  beam.rotation = beam.balanced_rotation();
  const Rect rect{0.0, -0.5 * D, L, 0.5 * D};
  bc.families = {{"diagonal", 5, [rect](int l) {
                    return gen_triangle6_structured(1 << l, 1 << l, rect, Split::Diagonal);
                  }}};
  bc.dirichlet = {{"left", true, true, [beam](const Vec2& x) { return beam.displacement(x); }}};
  bc.loads.tractions["right"] = [beam](const Vec2& x) { return Vec2(0.0, beam.stress(x)[2]); };
  bc.exact = ExactFields{[beam](const Vec2& x) { return beam.displacement(x); },
                         [beam](const Vec2& x) { return beam.stress(x); }};
  add_line_samples(bc.bc_samples, {0.0, -0.5 * D}, {0.0, 0.5 * D}, {-1, 0}, "", "left", 5);
  add_line_samples(bc.bc_samples, {L, -0.5 * D}, {L, 0.5 * D}, {1, 0}, "right", "", 5);
  add_line_samples(bc.bc_samples, {0.0, 0.5 * D}, {L, 0.5 * D}, {0, 1}, "", "", 5);
  add_line_samples(bc.bc_samples, {0.0, -0.5 * D}, {L, -0.5 * D}, {0, -1}, "", "", 5);
  bc.qoi = uy_at({L, 0.5 * D});
  bc.qoi_exact = beam.tip_deflection();
  return bc;
}

BenchmarkCase case_cooks_membrane() {
  BenchmarkCase bc;
  bc.name = "cooks_membrane";
  bc.law = make_material(250.0, 0.49995, Regime::PlaneStrain);
  bc.families = {{"structured", 4, [](int l) { return cooks_mesh(4 << l); }}};
  bc.dirichlet = {{"left", true, true, {}}};
  bc.loads.tractions["right"] = [](const Vec2&) { return Vec2(0.0, 6.25); };
  bc.qoi = uy_at({48.0, 60.0});
  return bc;
}

BenchmarkCase case_plate_with_hole() {
  BenchmarkCase bc;
  bc.name = "plate_with_hole";
  bc.law = make_material(2e7, 0.49995, Regime::PlaneStrain);
  const KirschPlate plate{bc.law.E, bc.law.nu, 1.0, 1.0};
  bc.families = {{"structured", 6, [](int l) { return plate_hole_mesh(4 << l, 6 << l); }}};
  bc.dirichlet = {{"symx", true, false, {}}, {"symy", false, true, {}}};
  bc.loads.tractions["right"] = [plate](const Vec2& x) {
    const Eigen::Vector3d s = plate.stress(x);
    return Vec2(s[0], s[2]);
  };
  bc.loads.tractions["top"] = [plate](const Vec2& x) {
    const Eigen::Vector3d s = plate.stress(x);
    return Vec2(s[2], s[1]);
  };
  bc.exact = ExactFields{[plate](const Vec2& x) { return plate.displacement(x); },
                         [plate](const Vec2& x) { return plate.stress(x); }};
  add_arc_samples(bc.bc_samples, 1.0, 0.0, 0.5 * kPi, false, "", 10);
  add_line_samples(bc.bc_samples, {5.0, 0.0}, {5.0, 5.0}, {1, 0}, "right", "", 5);
  add_line_samples(bc.bc_samples, {0.0, 5.0}, {5.0, 5.0}, {0, 1}, "top", "", 5);
  add_line_samples(bc.bc_samples, {0.0, 1.0}, {0.0, 5.0}, {-1, 0}, "", "symx", 5);
  add_line_samples(bc.bc_samples, {1.0, 0.0}, {5.0, 0.0}, {0, -1}, "", "symy", 5);
  return bc;
}

BenchmarkCase case_pressurized_cylinder() {
  const double a = 1.0, b = 5.0, p = 1e5;
  BenchmarkCase bc;
  bc.name = "pressurized_cylinder";
  bc.law = make_material(2e5, 0.49995, Regime::PlaneStrain);
  const LameCylinder cyl{bc.law.E, bc.law.nu, a, b, p};
  bc.families = {{"structured", 5, [a, b](int l) {
                    const int n = 4 << l;
                    return annulus_mesh(n, n, a, b);
                  }}};
  bc.dirichlet = {{"symx", true, false, {}}, {"symy", false, true, {}}};
  bc.loads.tractions["inner"] = [p](const Vec2& x) { return Vec2(p * x.normalized()); };
  bc.exact = ExactFields{[cyl](const Vec2& x) { return cyl.displacement(x); },
                         [cyl](const Vec2& x) { return cyl.stress(x); }};
  bc.hydro_mode_sh = HydroMode::ElementAverage;
  add_arc_samples(bc.bc_samples, a, 0.0, 0.5 * kPi, false, "inner", 10);
  add_arc_samples(bc.bc_samples, b, 0.0, 0.5 * kPi, true, "", 10);
  add_line_samples(bc.bc_samples, {0.0, a}, {0.0, b}, {-1, 0}, "", "symx", 5);
  add_line_samples(bc.bc_samples, {a, 0.0}, {b, 0.0}, {0, -1}, "", "symy", 5);
  return bc;
}

BenchmarkCase case_manufactured() {
  BenchmarkCase bc;
  bc.name = "manufactured";
  bc.law = make_material(1.0, 0.49995, Regime::PlaneStrain);
  const ManufacturedField mf{bc.law};
  const Rect unit{0.0, 0.0, 1.0, 1.0};
  bc.families = {
      {"cross", 4,
       [unit](int l) { return gen_triangle6_structured(4 << l, 4 << l, unit, Split::Cross); }},
      {"diagonal", 4,
       [unit](int l) { return gen_triangle6_structured(4 << l, 4 << l, unit, Split::Diagonal); }},
      {"perturbed", 4,
       [unit](int l) {
         const int n = 4 << l;
         return gen_triangle6_perturbed(gen_triangle6_structured(n, n, unit, Split::Diagonal),
                                        0.2, 97);
       }},
  };
  for (const char* tag : {"left", "right", "bottom", "top"})
    bc.dirichlet.push_back({tag, true, true, {}});
  bc.loads.body = [mf](const Vec2& x) { return mf.body(x); };
  bc.exact = ExactFields{[mf](const Vec2& x) { return mf.displacement(x); },
                         [mf](const Vec2& x) { return mf.stress(x); }};
  add_line_samples(bc.bc_samples, {0, 0}, {0, 1}, {-1, 0}, "", "left", 3);
  add_line_samples(bc.bc_samples, {1, 0}, {1, 1}, {1, 0}, "", "right", 3);
  add_line_samples(bc.bc_samples, {0, 0}, {1, 0}, {0, -1}, "", "bottom", 2);
  add_line_samples(bc.bc_samples, {0, 1}, {1, 1}, {0, 1}, "", "top", 2);
  return bc;
}

BenchmarkCase case_punch() {
  BenchmarkCase bc;
  bc.name = "punch";
  bc.law = make_material(250.0, 0.4999999, Regime::PlaneStrain);
  const Rect unit{0.0, 0.0, 1.0, 1.0};
  const auto mark_load = [](Mesh m) {
    for (auto& be : m.boundary) {
      if (be.tag != "top") continue;
      const Vec2 p0 = m.nodes[m.elements[be.element].nodes[be.local_edge]];
      const Vec2 p1 = m.nodes[m.elements[be.element].nodes[(be.local_edge + 1) % 6]];
      if (0.5 * (p0.x() + p1.x()) < 0.5) be.tag = "top_load";
    }
    return m;
  };
  bc.families = {
      {"cross", 4,
       [=](int l) {
         const int n = 4 << l;
         return mark_load(gen_triangle6_structured(n, n, unit, Split::Cross));
       }},
      {"nonconvex", 4,
       [=](int l) {
         const int n = 4 << l;
         return mark_load(gen_nonconvex_strip(n, n, 1.0, 1.0, 0.3));
       }},
  };
  bc.dirichlet = {{"left", true, false, {}},
                  {"top", true, false, {}},
                  {"top_load", true, false, {}},
                  {"bottom", false, true, {}}};
  bc.loads.tractions["top_load"] = [](const Vec2&) { return Vec2(0.0, -250.0); };
  return bc;
}

BenchmarkCase benchmark_by_name(const std::string& name) {
  static const std::map<std::string, BenchmarkCase (*)()> factories = {
      {"cantilever_thin", case_cantilever_thin},
      {"cantilever_thick", case_cantilever_thick},
      {"cooks_membrane", case_cooks_membrane},
      {"plate_with_hole", case_plate_with_hole},
      {"pressurized_cylinder", case_pressurized_cylinder},
      {"manufactured", case_manufactured},
      {"punch", case_punch},
  };
  const auto it = factories.find(name);
  if (it == factories.end()) {
    std::string known;
    for (const auto& [k, v] : factories) known += (known.empty() ? "" : ", ") + k;
    throw std::invalid_argument("unknown benchmark case '" + name + "' (have: " + known + ")");
  }
  return it->second();
}

std::vector<std::string> benchmark_names() {
  return {"cantilever_thin",      "cantilever_thick", "cooks_membrane", "plate_with_hole",
          "pressurized_cylinder", "manufactured",     "punch"};
}

CaseSolution solve_case(const BenchmarkCase& bc, const Mesh& mesh, const Formulation& form) {
  CaseSolution out;
  out.system = assemble(mesh, form, bc.law, bc.loads);
  out.sol = solve(mesh, out.system, make_dirichlet(mesh, bc), form);
  return out;
}

}  // namespace vemh
