#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vemh/analysis.hpp"

using namespace vemh;

namespace {

Formulation make_form(FormKind k) {
  Formulation f;
  f.kind = k;
  return f;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_csv(const char* stem) {
  return (std::filesystem::temp_directory_path() / stem).string();
}

}  // namespace

TEST_CASE("scan_triangle places vertices and midside nodes") {
  const auto pts = scan_triangle(0.4, 2.0);
  CHECK((pts[0] - Vec2(-1, 0)).norm() == 0.0);
  CHECK((pts[2] - Vec2(1, 0)).norm() == 0.0);
  CHECK((pts[4] - Vec2(0.4, 2.0)).norm() == 0.0);
  CHECK((pts[1] - Vec2(0, 0)).norm() == 0.0);
  CHECK((pts[3] - Vec2(0.7, 1.0)).norm() < 1e-15);
  CHECK((pts[5] - Vec2(-0.3, 1.0)).norm() < 1e-15);
}

TEST_CASE("element_eigenvalues: ascending order with a 3-dimensional rigid kernel") {
  const MaterialLaw law = make_material(1.0, 0.3, Regime::PlaneStrain);
  const auto pts = scan_triangle(0.0, std::sqrt(3.0));
  for (FormKind kind : {FormKind::Sh15, FormKind::Psh12, FormKind::Sh9Stab, FormKind::Sh11Stab}) {
    const Eigen::VectorXd ev =
        element_eigenvalues(std::span<const Vec2, 6>(pts.data(), 6), make_form(kind), law);
    REQUIRE(ev.size() == 12);
    for (int i = 1; i < 12; ++i) CHECK(ev(i) >= ev(i - 1));
    const double scale = ev.cwiseAbs().maxCoeff();
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ev(i)) < 1e-12 * scale);
    CHECK(ev(3) > 1e-6 * scale);  // full rank beyond the rigid modes
  }
  // Unstabilized sh9 on the same element: 9 stress modes cannot control all
  // 9 deformation modes everywhere; here the fourth eigenvalue is still
  // positive but the stabilized variant must dominate it.
  const Eigen::VectorXd e9 =
      element_eigenvalues(std::span<const Vec2, 6>(pts.data(), 6), make_form(FormKind::Sh9), law);
  const Eigen::VectorXd e9s = element_eigenvalues(std::span<const Vec2, 6>(pts.data(), 6),
                                                  make_form(FormKind::Sh9Stab), law);
  CHECK(e9s(3) >= e9(3) - 1e-12);
}

TEST_CASE("eigen_scan: grid layout, determinism, CSV format") {
  const MaterialLaw law = make_material(1.0, 0.4999999, Regime::PlaneStrain);
  const Formulation form = make_form(FormKind::Sh15);
  const auto rows = eigen_scan(form, law, 5);
  REQUIRE(rows.size() == 25);

  // g2 varies slowest; both coordinates span their ranges inclusively.
  CHECK(rows[0].g1 == doctest::Approx(-10.0));
  CHECK(rows[0].g2 == doctest::Approx(0.05));
  CHECK(rows[4].g1 == doctest::Approx(10.0));
  CHECK(rows[4].g2 == doctest::Approx(0.05));
  CHECK(rows[20].g2 == doctest::Approx(10.0));
  CHECK(rows[24].g1 == doctest::Approx(10.0));
  CHECK(rows[24].g2 == doctest::Approx(10.0));
  for (const auto& r : rows) CHECK(r.eig4 > 0.0);

  const auto rows2 = eigen_scan(form, law, 5);
  for (size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].eig4 == rows2[i].eig4);

  const std::string path = temp_csv("vemh_scan_test.csv");
  write_eigen_scan_csv(rows, path);
  const std::string text = slurp(path);
  CHECK(text.substr(0, 11) == "g1,g2,eig4\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 26);
  std::filesystem::remove(path);

  CHECK_THROWS_WITH_AS(eigen_scan(form, law, 1), doctest::Contains("res"),
                       std::invalid_argument);
}

TEST_CASE("penalty weight drives the smallest deformation eigenvalue monotonically") {
  const MaterialLaw law = make_material(1.0, 0.4999999, Regime::PlaneStrain);
  const auto pts = scan_triangle(0.3, 1.1);
  double prev = 0.0;
  bool first = true;
  for (double mult : {0.1, 1.0, 10.0, 100.0}) {
    Formulation form = make_form(FormKind::Psh12);
    form.alpha_mult = mult;
    const Eigen::VectorXd ev =
        element_eigenvalues(std::span<const Vec2, 6>(pts.data(), 6), form, law);
    if (!first) CHECK(ev(3) <= prev * (1.0 + 1e-12));
    prev = ev(3);
    first = false;
  }
}

TEST_CASE("fit_rate recovers exact slopes and applies the coarse-level policy") {
  CHECK(fit_rate({0.4, 0.2, 0.1}, {0.16, 0.04, 0.01}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit_rate({1.0, 0.5, 0.25}, {3.0, 1.5, 0.75}) == doctest::Approx(1.0).epsilon(1e-12));

  // With >= 4 levels the coarsest is dropped: pollute it and the fit over the
  // remaining exact-quadratic levels is still 2.
  CHECK(fit_rate({0.8, 0.4, 0.2, 0.1}, {100.0, 0.16, 0.04, 0.01}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // Same data with 3 levels keeps everything and the slope moves.
  CHECK(fit_rate({0.8, 0.4, 0.2}, {100.0, 0.16, 0.04}) != doctest::Approx(2.0).epsilon(0.1));

  // Order of the input does not matter.
  CHECK(fit_rate({0.1, 0.4, 0.2}, {0.01, 0.16, 0.04}) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(fit_rate({0.1}, {0.01}), doctest::Contains("at least 2"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(fit_rate({0.1, 0.2}, {0.01}), doctest::Contains("at least 2"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(fit_rate({0.2, 0.1}, {0.04, 0.0}), doctest::Contains("positive"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(fit_rate({0.2, 0.2}, {0.04, 0.01}), doctest::Contains("degenerate"),
                       std::invalid_argument);
}

TEST_CASE("error_norms vanishes on a reproduced affine field") {
  const MaterialLaw law = make_material(200.0, 0.3, Regime::PlaneStrain);
  auto u = [](const Vec2& x) {
    return Vec2(0.3 + 1.2 * x.x() - 0.7 * x.y(), -0.4 + 0.5 * x.x() + 0.9 * x.y());
  };
  const Eigen::Vector3d sigma_c = law.C * Eigen::Vector3d(1.2, 0.9, -0.2);
  ExactFields exact;
  exact.u = u;
  exact.sigma = [=](const Vec2&) { return sigma_c; };

  const Mesh mesh = gen_triangle6_structured(3, 2, Rect{0, 0, 1.5, 1}, Split::Cross);
  const Formulation form = make_form(FormKind::Sh15);
  const GlobalSystem sys = assemble(mesh, form, law, {});
  DirichletBC bc;
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    bc.fix(i, 0, u(mesh.nodes[i]).x());
    bc.fix(i, 1, u(mesh.nodes[i]).y());
  }
  const FieldSolution sol = solve(mesh, sys, bc, form);

  for (HydroMode mode : {HydroMode::Pointwise, HydroMode::ElementAverage}) {
    const ErrorRow row = error_norms(mesh, sys, sol, law, exact, mode);
    CHECK(row.l2_disp < 1e-12 * row.l2_disp_exact);
    CHECK(row.energy < 1e-11 * row.energy_exact);
    CHECK(row.l2_hydro < 1e-11 * row.l2_hydro_exact);
    CHECK(row.n_dofs == 2 * mesh.n_nodes());
    double hmax = 0.0;
    for (int e = 0; e < mesh.n_elements(); ++e)
      hmax = std::max(hmax, element_geometry(mesh, e).diameter);
    CHECK(row.h == doctest::Approx(hmax));
  }

  // Exact norms match closed forms on the 1.5 x 1 rectangle:
  // int |u|^2 and the constant-stress energy/hydro integrals.
  const ErrorRow row = error_norms(mesh, sys, sol, law, exact, HydroMode::Pointwise);
  const double A = 1.5;
  const Eigen::Vector3d eps = law.Cinv * sigma_c;
  CHECK(row.energy_exact == doctest::Approx(std::sqrt(A * sigma_c.dot(eps))).epsilon(1e-12));
  const double p = hydrostatic_from_voigt(law, sigma_c);
  CHECK(row.l2_hydro_exact == doctest::Approx(std::sqrt(A * p * p)).epsilon(1e-12));

  ExactFields missing;
  CHECK_THROWS_WITH_AS(error_norms(mesh, sys, sol, law, missing, HydroMode::Pointwise),
                       doctest::Contains("exact fields"), std::invalid_argument);
}

TEST_CASE("write_error_csv emits the documented header") {
  std::vector<ErrorRow> rows(1);
  rows[0].mesh_id = "m0";
  rows[0].h = 0.5;
  rows[0].n_dofs = 18;
  rows[0].l2_disp = 1e-3;
  const std::string path = temp_csv("vemh_err_test.csv");
  write_error_csv(rows, path);
  const std::string text = slurp(path);
  CHECK(text.substr(0, 45) == "mesh_id,h,n_dofs,l2_disp,energy,l2_hydro\nm0,0");
  std::filesystem::remove(path);
}

TEST_CASE("recover_fields reproduces constant stress from a patch solution") {
  const MaterialLaw law = make_material(200.0, 0.3, Regime::PlaneStrain);
  auto u = [](const Vec2& x) {
    return Vec2(0.3 + 1.2 * x.x() - 0.7 * x.y(), -0.4 + 0.5 * x.x() + 0.9 * x.y());
  };
  const Eigen::Vector3d sigma = law.C * Eigen::Vector3d(1.2, 0.9, -0.2);

  const Mesh mesh = gen_nonconvex_strip(3, 2, 3.0, 2.0, 0.25);
  const Formulation form = make_form(FormKind::Psh12);
  const GlobalSystem sys = assemble(mesh, form, law, {});
  DirichletBC bc;
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    bc.fix(i, 0, u(mesh.nodes[i]).x());
    bc.fix(i, 1, u(mesh.nodes[i]).y());
  }
  const FieldSolution sol = solve(mesh, sys, bc, form);
  const auto rec = recover_fields(mesh, sys, sol, law);
  REQUIRE(rec.size() == static_cast<size_t>(mesh.n_elements()));
  const double p = hydrostatic_from_voigt(law, sigma);
  const double tr = (law.Cinv * sigma)(0) + (law.Cinv * sigma)(1);
  for (const auto& r : rec) {
    CHECK((r.sigma_centroid - sigma).norm() < 1e-9 * sigma.norm());
    CHECK(r.p_tilde == doctest::Approx(p).epsilon(1e-9));
    CHECK(r.trace_strain == doctest::Approx(tr).epsilon(1e-9));
  }
}

TEST_CASE("inject_exact_stress reproduces representable fields exactly") {
  const MaterialLaw law = make_material(70.0, 0.25, Regime::PlaneStrain);
  const Mesh mesh = gen_triangle6_structured(2, 2, Rect{0, 0, 2, 2}, Split::Diagonal);
  const StressBasis basis = make_stress_basis(StressBasisKind::Beta15);

  // Divergence-free linear field inside the 15-term span.
  auto sigma = [](const Vec2& x) { return Eigen::Vector3d(x.y(), x.x(), 0.0); };
  const auto betas = inject_exact_stress(mesh, basis, law, sigma);
  REQUIRE(betas.size() == static_cast<size_t>(mesh.n_elements()));
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementGeometry geom = element_geometry(mesh, e);
    const auto pts = mesh.element_points(e);
    for (const Vec2& x : {geom.centroid, pts[1], pts[4]}) {
      const Eigen::Vector3d s = basis.eval(geom, x) * betas[e];
      CHECK((s - sigma(x)).norm() < 1e-10 * (1.0 + sigma(x).norm()));
    }
  }
}
