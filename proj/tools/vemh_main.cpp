#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vemh/analysis.hpp"
#include "vemh/benchmarks.hpp"
#include "vemh/study.hpp"
#include "vemh/vtk.hpp"

namespace {

using namespace vemh;

int cmd_run(const std::string& config_path) {
  const StudyConfig config = study_config_from_json(config_path);
  const int code = run_study_to_files(config);
  if (code != 0) std::cerr << "warning: some study cells failed (see results CSV)\n";
  return code;
}

int cmd_eigen_scan(const std::string& formulation, int res, double E, double nu,
                   const std::string& out) {
  Formulation form;
  form.kind = parse_formulation(formulation);
  const MaterialLaw law = make_material(E, nu, Regime::PlaneStrain);
  const auto rows = eigen_scan(form, law, res);
  write_eigen_scan_csv(rows, out);
  std::cout << "wrote " << rows.size() << " scan rows to " << out << "\n";
  return 0;
}

struct MeshGenOptions {
  std::string family;
  int nx = 8, ny = 8;
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  double collapse = 0.8, distortion = 0.3, magnitude = 0.2;
  unsigned seed = 7;
  double a = 1, b = 5;
  std::string out;
};

int cmd_mesh_gen(const MeshGenOptions& o) {
  Mesh mesh;
  const Rect rect{o.x0, o.y0, o.x1, o.y1};
  if (o.family == "diagonal") {
    mesh = gen_triangle6_structured(o.nx, o.ny, rect, Split::Diagonal);
  } else if (o.family == "cross") {
    mesh = gen_triangle6_structured(o.nx, o.ny, rect, Split::Cross);
  } else if (o.family == "perturbed") {
    mesh = gen_triangle6_perturbed(gen_triangle6_structured(o.nx, o.ny, rect, Split::Diagonal),
                                   o.magnitude, o.seed);
  } else if (o.family == "degenerate") {
    mesh = gen_degenerate_strip(o.nx, o.ny, o.x1 - o.x0, o.y1 - o.y0, o.collapse);
  } else if (o.family == "nonconvex") {
    mesh = gen_nonconvex_strip(o.nx, o.ny, o.x1 - o.x0, o.y1 - o.y0, o.distortion);
  } else if (o.family == "cooks") {
    mesh = cooks_mesh(o.nx);
  } else if (o.family == "plate_hole") {
    mesh = plate_hole_mesh(o.nx, o.ny);
  } else if (o.family == "annulus") {
    mesh = annulus_mesh(o.nx, o.ny, o.a, o.b);
  } else {
    throw CLI::ValidationError(
        "family must be one of diagonal, cross, perturbed, degenerate, nonconvex, cooks, "
        "plate_hole, annulus");
  }
  mesh_io_write(mesh, o.out);
  std::cout << "wrote " << mesh.n_elements() << " elements, " << mesh.n_nodes() << " nodes to "
            << o.out << "\n";
  return 0;
}

int cmd_solve(const std::string& mesh_path, const std::string& case_name,
              const std::string& formulation, double alpha_mult, bool has_alpha,
              const std::string& out, const std::string& vtk_out) {
  const BenchmarkCase bc = benchmark_by_name(case_name);
  check_bc_consistency(bc);
  const Mesh mesh = mesh_io_read(mesh_path);
  Formulation form;
  form.kind = parse_formulation(formulation);
  if (has_alpha) form.alpha_mult = alpha_mult;
  const CaseSolution cs = solve_case(bc, mesh, form);

  nlohmann::json j;
  j["case"] = case_name;
  j["formulation"] = formulation;
  j["n_nodes"] = mesh.n_nodes();
  j["n_elements"] = mesh.n_elements();
  j["residual"] = cs.sol.residual;
  {
    auto& d = j["displacement"] = nlohmann::json::array();
    for (int i = 0; i < mesh.n_nodes(); ++i)
      d.push_back({cs.sol.d[dof_x(i)], cs.sol.d[dof_y(i)]});
  }
  if (bc.exact) {
    const ErrorRow row = error_norms(mesh, cs.system, cs.sol, bc.law, *bc.exact,
                                     hydro_mode_for(bc, form.kind));
    const auto rel = [](double e, double n) { return n > 0 ? e / n : 0.0; };
    j["errors"] = {{"l2_disp", row.l2_disp},
                   {"energy", row.energy},
                   {"l2_hydro", row.l2_hydro},
                   {"l2_disp_rel", rel(row.l2_disp, row.l2_disp_exact)},
                   {"energy_rel", rel(row.energy, row.energy_exact)},
                   {"l2_hydro_rel", rel(row.l2_hydro, row.l2_hydro_exact)}};
  }
  if (bc.qoi) j["qoi"] = bc.qoi(mesh, cs.sol);

  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot open " + out);
  os << j.dump(2) << "\n";
  if (!vtk_out.empty()) {
    const auto recovered = recover_fields(mesh, cs.system, cs.sol, bc.law);
    write_vtk(vtk_out, mesh, cs.sol.d, recovered, case_name + " " + formulation);
  }
  std::cout << "solved " << case_name << " (" << formulation << "), residual " << cs.sol.residual
            << ", wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stress-hybrid virtual element benchmarks for 2D linear elasticity"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "Run a study from a JSON config");
  run->add_option("config", run_config, "Study config JSON path")->required();

  std::string scan_form = "sh15", scan_out = "scan.csv";
  int scan_res = 100;
  double scan_E = 1.0, scan_nu = 0.49995;
  auto* scan = app.add_subcommand("eigen-scan", "Element eigenvalue scan over vertex positions");
  scan->add_option("--formulation", scan_form, "Formulation name")->capture_default_str();
  scan->add_option("--res", scan_res, "Grid resolution per axis")->capture_default_str();
  scan->add_option("--E", scan_E, "Young's modulus")->capture_default_str();
  scan->add_option("--nu", scan_nu, "Poisson's ratio")->capture_default_str();
  scan->add_option("--out", scan_out, "Output CSV path")->capture_default_str();

  auto* mesh_cmd = app.add_subcommand("mesh", "Mesh utilities");
  mesh_cmd->require_subcommand(1);
  MeshGenOptions gen_opts;
  auto* gen = mesh_cmd->add_subcommand("gen", "Generate a mesh and write it as JSON");
  gen->add_option("family", gen_opts.family,
                  "diagonal | cross | perturbed | degenerate | nonconvex | cooks | plate_hole | "
                  "annulus")
      ->required();
  gen->add_option("--nx", gen_opts.nx, "Cells in x (or n / nr)")->capture_default_str();
  gen->add_option("--ny", gen_opts.ny, "Cells in y (or nt)")->capture_default_str();
  gen->add_option("--x0", gen_opts.x0)->capture_default_str();
  gen->add_option("--y0", gen_opts.y0)->capture_default_str();
  gen->add_option("--x1", gen_opts.x1)->capture_default_str();
  gen->add_option("--y1", gen_opts.y1)->capture_default_str();
  gen->add_option("--collapse", gen_opts.collapse, "Degenerate collapse in (0,1)")
      ->capture_default_str();
  gen->add_option("--distortion", gen_opts.distortion, "Nonconvex zigzag in [0,0.5)")
      ->capture_default_str();
  gen->add_option("--magnitude", gen_opts.magnitude, "Perturbation fraction in [0,0.5)")
      ->capture_default_str();
  gen->add_option("--seed", gen_opts.seed, "Perturbation seed")->capture_default_str();
  gen->add_option("--a", gen_opts.a, "Annulus inner radius")->capture_default_str();
  gen->add_option("--b", gen_opts.b, "Annulus outer radius")->capture_default_str();
  gen->add_option("--out", gen_opts.out, "Output mesh JSON path")->required();

  std::string solve_mesh, solve_case_name, solve_form = "sh15", solve_out = "sol.json",
              solve_vtk;
  double solve_alpha = 0.0;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one case on an imported mesh");
  solve_cmd->add_option("--mesh", solve_mesh, "Mesh JSON path")->required();
  solve_cmd->add_option("--case", solve_case_name, "Benchmark case name")->required();
  solve_cmd->add_option("--formulation", solve_form, "Formulation name")->capture_default_str();
  auto* alpha_opt =
      solve_cmd->add_option("--alpha-mult", solve_alpha, "Penalty multiplier override");
  solve_cmd->add_option("--out", solve_out, "Output solution JSON path")->capture_default_str();
  solve_cmd->add_option("--vtk", solve_vtk, "Also write a VTK file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_config);
    if (*scan) return cmd_eigen_scan(scan_form, scan_res, scan_E, scan_nu, scan_out);
    if (*gen) return cmd_mesh_gen(gen_opts);
    if (*solve_cmd)
      return cmd_solve(solve_mesh, solve_case_name, solve_form, solve_alpha,
                       alpha_opt->count() > 0, solve_out, solve_vtk);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
