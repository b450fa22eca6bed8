#include "vemh/vtk.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "vemh/system.hpp"

namespace vemh {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void write_vtk(const std::string& path, const Mesh& mesh, const Eigen::VectorXd& d,
               const std::vector<RecoveredElement>& recovered, const std::string& title) {
  if (d.size() != 2 * mesh.n_nodes())
    throw std::invalid_argument("write_vtk: displacement vector size mismatch");
  if (static_cast<int>(recovered.size()) != mesh.n_elements())
    throw std::invalid_argument("write_vtk: recovered field size mismatch");

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_vtk: cannot open " + path);

  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";

  out << "POINTS " << mesh.n_nodes() << " double\n";
  for (const auto& p : mesh.nodes) out << num(p.x()) << ' ' << num(p.y()) << " 0\n";

  out << "CELLS " << mesh.n_elements() << ' ' << 7 * mesh.n_elements() << '\n';
  for (const auto& el : mesh.elements) {
    out << 6;
    for (int n : el.nodes) out << ' ' << n;
    out << '\n';
  }
  out << "CELL_TYPES " << mesh.n_elements() << '\n';
  for (int e = 0; e < mesh.n_elements(); ++e) out << "7\n";  // VTK_POLYGON

  out << "POINT_DATA " << mesh.n_nodes() << "\nVECTORS displacement double\n";
  for (int i = 0; i < mesh.n_nodes(); ++i)
    out << num(d[dof_x(i)]) << ' ' << num(d[dof_y(i)]) << " 0\n";

  out << "CELL_DATA " << mesh.n_elements() << '\n';
  out << "SCALARS hydrostatic_stress double 1\nLOOKUP_TABLE default\n";
  for (const auto& r : recovered) out << num(r.p_tilde) << '\n';
  out << "SCALARS strain_trace double 1\nLOOKUP_TABLE default\n";
  for (const auto& r : recovered) out << num(r.trace_strain) << '\n';

  if (!out) throw std::runtime_error("write_vtk: write failed for " + path);
}

}  // namespace vemh
