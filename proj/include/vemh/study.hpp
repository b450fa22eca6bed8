#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vemh/analysis.hpp"
#include "vemh/benchmarks.hpp"

namespace vemh {

// Configuration for one study run: a benchmark case (or the thick-cantilever
// displacement table) swept over formulations and mesh levels.
struct StudyConfig {
  std::string study;  // case name or "thick_cantilever_table"
  std::vector<std::string> formulations;
  std::string family;       // empty -> the case's default family
  std::vector<int> levels;  // empty -> every level of the family
  std::optional<double> alpha_mult;
  std::string hydro_mode;  // "", "pointwise", or "element_average"
  std::string out_dir = ".";
  bool vtk = false;
  int jobs = 0;  // parallel cells; 0 -> hardware concurrency
  std::vector<std::string> mesh_files;  // imported meshes instead of family levels
};

// Parses the JSON mirror of StudyConfig; rejects unknown keys.
StudyConfig study_config_from_json(const std::string& path);

struct StudyCell {
  std::string case_name, formulation, family, mesh_id;
  int level = -1;
  bool ok = false;
  std::string message;  // failure reason when !ok
  bool has_norms = false;
  ErrorRow norms;
  bool has_qoi = false;
  double qoi = std::numeric_limits<double>::quiet_NaN();
  double qoi_normalized = std::numeric_limits<double>::quiet_NaN();
};

struct StudyRate {
  std::string formulation, norm;  // norm in {l2_disp, energy, l2_hydro}
  double rate = std::numeric_limits<double>::quiet_NaN();
};

struct StudyResult {
  std::vector<StudyCell> cells;
  std::vector<StudyRate> rates;
  int exit_code = 0;  // 0 full success, 2 partial cell failures
};

// Runs all cells (in parallel when configured), writing VTK per cell if
// requested. A failing cell is recorded, not fatal. Deterministic output
// ordering regardless of scheduling.
StudyResult run_study(const StudyConfig& config);

// run_study plus the CSV outputs under config.out_dir; returns the exit code.
int run_study_to_files(const StudyConfig& config);

std::vector<std::string> study_names();

}  // namespace vemh
