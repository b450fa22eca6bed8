#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vemh/system.hpp"

namespace vemh {

using VecField = std::function<Vec2(const Vec2&)>;
using StressVoigtField = std::function<Eigen::Vector3d(const Vec2&)>;

// Six-noded triangle with vertices (-1,0), (1,0), (g1,g2) and midside nodes
// at the edge midpoints.
std::array<Vec2, 6> scan_triangle(double g1, double g2);

// Ascending eigenvalues of the 12x12 element stiffness matrix.
Eigen::VectorXd element_eigenvalues(std::span<const Vec2, 6> pts, const Formulation& form,
                                    const MaterialLaw& law);

struct EigenScanRow {
  double g1 = 0, g2 = 0, eig4 = 0;
};

// Sweeps the apex vertex over a res-by-res grid of (g1, g2) in
// [-10,10] x [0.05,10] and records the fourth-smallest stiffness eigenvalue.
std::vector<EigenScanRow> eigen_scan(const Formulation& form, const MaterialLaw& law,
                                     int res = 100);

void write_eigen_scan_csv(const std::vector<EigenScanRow>& rows, const std::string& path);

enum class HydroMode { Pointwise, ElementAverage };

struct ErrorRow {
  std::string mesh_id;
  double h = 0;       // max element diameter
  int n_dofs = 0;
  double l2_disp = 0;
  double energy = 0;
  double l2_hydro = 0;
  // Norms of the exact fields, for relative reporting.
  double l2_disp_exact = 0;
  double energy_exact = 0;
  double l2_hydro_exact = 0;
};

struct ExactFields {
  VecField u;
  StressVoigtField sigma;
};

ErrorRow error_norms(const Mesh& mesh, const GlobalSystem& system, const FieldSolution& sol,
                     const MaterialLaw& law, const ExactFields& exact, HydroMode hydro_mode);

void write_error_csv(const std::vector<ErrorRow>& rows, const std::string& path);

// Least-squares slope of log(err) against log(h); with four or more levels
// the coarsest is left out of the fit. Levels with zero error are rejected.
double fit_rate(const std::vector<double>& h, const std::vector<double>& err);

// Per-element recovered fields sampled from the stress coefficients.
struct RecoveredElement {
  Eigen::Vector3d sigma_centroid = Eigen::Vector3d::Zero();
  double p_tilde = 0;       // hydrostatic stress (element average)
  double trace_strain = 0;  // trace of C^-1 sigma (element average)
};

std::vector<RecoveredElement> recover_fields(const Mesh& mesh, const GlobalSystem& system,
                                             const FieldSolution& sol, const MaterialLaw& law);

// C^-1-orthogonal projection of an exact stress field onto each element's
// stress basis; feeds the same recovery path as a computed solution.
std::vector<Eigen::VectorXd> inject_exact_stress(const Mesh& mesh, const StressBasis& basis,
                                                 const MaterialLaw& law,
                                                 const StressVoigtField& sigma);

}  // namespace vemh
