#include "vemh/study.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "vemh/vtk.hpp"

namespace vemh {

namespace {

constexpr const char* kTableStudy = "thick_cantilever_table";

std::string normalize_study_name(const std::string& name) {
  if (name == "table_a3") return kTableStudy;
  return name;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CellPlan {
  std::string formulation;
  int level = -1;
  std::string mesh_file;  // empty -> family level
  std::string vtk_path;   // empty -> no VTK
};

StudyCell compute_cell(const BenchmarkCase& bc, const MeshFamily* family, const CellPlan& plan,
                       const StudyConfig& config, HydroMode hydro) {
  StudyCell cell;
  cell.case_name = bc.name;
  cell.formulation = plan.formulation;
  cell.family = family ? family->name : "imported";
  cell.level = plan.level;
  try {
    const Mesh mesh =
        plan.mesh_file.empty() ? family->build(plan.level) : mesh_io_read(plan.mesh_file);
    cell.mesh_id = plan.mesh_file.empty()
                       ? cell.family + "-L" + std::to_string(plan.level) + "-" +
                             std::to_string(mesh.n_elements()) + "el"
                       : std::filesystem::path(plan.mesh_file).stem().string();
    Formulation form;
    form.kind = parse_formulation(plan.formulation);
    if (config.alpha_mult) form.alpha_mult = *config.alpha_mult;
    const CaseSolution cs = solve_case(bc, mesh, form);
    if (bc.exact) {
      cell.norms = error_norms(mesh, cs.system, cs.sol, bc.law, *bc.exact, hydro);
      cell.norms.mesh_id = cell.mesh_id;
      cell.has_norms = true;
    } else {
      cell.norms.mesh_id = cell.mesh_id;
      cell.norms.n_dofs = 2 * mesh.n_nodes();
      for (int e = 0; e < mesh.n_elements(); ++e)
        cell.norms.h = std::max(cell.norms.h, element_geometry(mesh, e).diameter);
    }
    if (bc.qoi) {
      cell.qoi = bc.qoi(mesh, cs.sol);
      if (std::isfinite(bc.qoi_exact) && bc.qoi_exact != 0.0)
        cell.qoi_normalized = cell.qoi / bc.qoi_exact;
      cell.has_qoi = true;
    }
    if (!plan.vtk_path.empty()) {
      const auto recovered = recover_fields(mesh, cs.system, cs.sol, bc.law);
      write_vtk(plan.vtk_path, mesh, cs.sol.d, recovered,
                bc.name + " " + plan.formulation + " " + cell.mesh_id);
    }
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.message = e.what();
  }
  return cell;
}

void write_results_csv(const std::string& path, const std::vector<StudyCell>& cells) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "case,formulation,family,level,mesh_id,status,h,n_dofs,l2_disp,energy,l2_hydro,"
         "l2_disp_rel,energy_rel,l2_hydro_rel,qoi,qoi_normalized,message\n";
  for (const auto& c : cells) {
    out << c.case_name << ',' << c.formulation << ',' << c.family << ',' << c.level << ','
        << c.mesh_id << ',' << (c.ok ? "ok" : "failed") << ',';
    if (c.ok) out << fmt(c.norms.h) << ',' << c.norms.n_dofs;
    else out << ',';
    out << ',';
    if (c.has_norms) {
      const auto rel = [](double e, double n) { return n > 0 ? e / n : 0.0; };
      out << fmt(c.norms.l2_disp) << ',' << fmt(c.norms.energy) << ',' << fmt(c.norms.l2_hydro)
          << ',' << fmt(rel(c.norms.l2_disp, c.norms.l2_disp_exact)) << ','
          << fmt(rel(c.norms.energy, c.norms.energy_exact)) << ','
          << fmt(rel(c.norms.l2_hydro, c.norms.l2_hydro_exact));
    } else {
      out << ",,,,,";
    }
    out << ',';
    if (c.has_qoi) {
      out << fmt(c.qoi) << ',';
      if (std::isfinite(c.qoi_normalized)) out << fmt(c.qoi_normalized);
    } else {
      out << ',';
    }
    out << ',' << csv_escape(c.message) << '\n';
  }
}

void write_rates_csv(const std::string& path, const std::string& case_name,
                     const std::string& family, const std::vector<StudyRate>& rates) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "case,formulation,family,norm,rate\n";
  for (const auto& r : rates)
    out << case_name << ',' << r.formulation << ',' << family << ',' << r.norm << ','
        << fmt(r.rate) << '\n';
}

void write_table_csv(const std::string& path, const StudyConfig& config,
                     const std::vector<StudyCell>& cells, const std::vector<int>& levels) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "mesh";
  for (const auto& f : config.formulations) out << ',' << f;
  out << '\n';
  for (int level : levels) {
    const int n = 1 << level;
    out << n << 'x' << n;
    for (const auto& f : config.formulations) {
      out << ',';
      for (const auto& c : cells) {
        if (c.level != level || c.formulation != f) continue;
        if (c.ok && std::isfinite(c.qoi_normalized)) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.4f", c.qoi_normalized);
          out << buf;
        }
        break;
      }
    }
    out << '\n';
  }
}

}  // namespace

StudyConfig study_config_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open study config " + path);
  nlohmann::json j;
  in >> j;
  static const std::set<std::string> known = {"study",      "formulations", "family",
                                              "levels",     "alpha_mult",   "hydro_mode",
                                              "out_dir",    "vtk",          "jobs",
                                              "mesh_files"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key()))
      throw std::runtime_error("study config: unknown key '" + item.key() + "'");
  }
  StudyConfig c;
  c.study = j.at("study").get<std::string>();
  if (j.contains("formulations")) c.formulations = j["formulations"].get<std::vector<std::string>>();
  if (j.contains("family")) c.family = j["family"].get<std::string>();
  if (j.contains("levels")) c.levels = j["levels"].get<std::vector<int>>();
  if (j.contains("alpha_mult")) c.alpha_mult = j["alpha_mult"].get<double>();
  if (j.contains("hydro_mode")) c.hydro_mode = j["hydro_mode"].get<std::string>();
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("vtk")) c.vtk = j["vtk"].get<bool>();
  if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
  if (j.contains("mesh_files")) c.mesh_files = j["mesh_files"].get<std::vector<std::string>>();
  return c;
}

StudyResult run_study(const StudyConfig& config) {
  const std::string study = normalize_study_name(config.study);
  if (config.formulations.empty()) throw std::invalid_argument("study: nothing to run");
  if (!config.hydro_mode.empty() && config.hydro_mode != "pointwise" &&
      config.hydro_mode != "element_average")
    throw std::invalid_argument("study: hydro_mode must be pointwise or element_average");
  if (!config.mesh_files.empty() && !config.levels.empty())
    throw std::invalid_argument("study: mesh_files and levels are mutually exclusive");

  const BenchmarkCase bc =
      benchmark_by_name(study == kTableStudy ? "cantilever_thick" : study);
  for (const auto& f : config.formulations) parse_formulation(f);  // validate early
  check_bc_consistency(bc);

  const MeshFamily* family = nullptr;
  std::vector<int> levels;
  if (config.mesh_files.empty()) {
    family = &(config.family.empty() ? bc.families.front() : bc.family(config.family));
    levels = config.levels;
    if (levels.empty())
      for (int l = 0; l < family->levels; ++l) levels.push_back(l);
    for (int l : levels)
      if (l < 0 || l >= family->levels)
        throw std::invalid_argument("study: level " + std::to_string(l) + " out of range for " +
                                    family->name);
  }

  std::vector<CellPlan> plans;
  for (const auto& f : config.formulations) {
    if (config.mesh_files.empty()) {
      for (int l : levels) {
        CellPlan p{f, l, "", ""};
        if (config.vtk)
          p.vtk_path = config.out_dir + "/" + study + "_" + f + "_" + family->name + "_L" +
                       std::to_string(l) + ".vtk";
        plans.push_back(std::move(p));
      }
    } else {
      for (std::size_t i = 0; i < config.mesh_files.size(); ++i) {
        CellPlan p{f, static_cast<int>(i), config.mesh_files[i], ""};
        if (config.vtk)
          p.vtk_path = config.out_dir + "/" + study + "_" + f + "_import_L" + std::to_string(i) +
                       ".vtk";
        plans.push_back(std::move(p));
      }
    }
  }
  if (config.vtk) std::filesystem::create_directories(config.out_dir);

  StudyResult result;
  result.cells.resize(plans.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < plans.size();) {
      const HydroMode hydro =
          config.hydro_mode == "pointwise"
              ? HydroMode::Pointwise
              : config.hydro_mode == "element_average"
                    ? HydroMode::ElementAverage
                    : hydro_mode_for(bc, parse_formulation(plans[i].formulation));
      result.cells[i] = compute_cell(bc, family, plans[i], config, hydro);
    }
  };
  int jobs = config.jobs > 0 ? config.jobs
                             : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(plans.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t + 1 < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Fitted rates per formulation where at least three levels carry norms.
  for (const auto& f : config.formulations) {
    std::vector<double> h, ed, ee, eh;
    for (const auto& c : result.cells) {
      if (c.formulation != f || !c.ok || !c.has_norms) continue;
      h.push_back(c.norms.h);
      ed.push_back(c.norms.l2_disp);
      ee.push_back(c.norms.energy);
      eh.push_back(c.norms.l2_hydro);
    }
    if (h.size() < 3) continue;
    const auto push = [&](const char* norm, const std::vector<double>& err) {
      try {
        result.rates.push_back({f, norm, fit_rate(h, err)});
      } catch (const std::exception&) {
        // degenerate error sequence; no rate for this norm
      }
    };
    push("l2_disp", ed);
    push("energy", ee);
    push("l2_hydro", eh);
  }

  for (const auto& c : result.cells)
    if (!c.ok) result.exit_code = 2;
  return result;
}

int run_study_to_files(const StudyConfig& config) {
  const std::string study = normalize_study_name(config.study);
  std::filesystem::create_directories(config.out_dir);
  const StudyResult result = run_study(config);
  write_results_csv(config.out_dir + "/" + study + "_results.csv", result.cells);
  if (!result.rates.empty()) {
    const std::string fam = result.cells.empty() ? "" : result.cells.front().family;
    write_rates_csv(config.out_dir + "/" + study + "_rates.csv",
                    result.cells.empty() ? study : result.cells.front().case_name, fam,
                    result.rates);
  }
  if (study == kTableStudy) {
    std::vector<int> levels;
    for (const auto& c : result.cells)
      if (c.formulation == config.formulations.front()) levels.push_back(c.level);
    write_table_csv(config.out_dir + "/" + study + ".csv", config, result.cells, levels);
  }
  return result.exit_code;
}

std::vector<std::string> study_names() {
  auto names = benchmark_names();
  names.push_back(kTableStudy);
  return names;
}

}  // namespace vemh
