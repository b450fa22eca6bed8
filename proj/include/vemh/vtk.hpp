#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vemh/analysis.hpp"
#include "vemh/mesh.hpp"

namespace vemh {

// Legacy ASCII VTK unstructured grid: elements as polygon cells, nodal
// displacement as point vectors, recovered hydrostatic stress and strain
// trace as cell scalars. Readable by ParaView/VisIt for contour plots.
void write_vtk(const std::string& path, const Mesh& mesh, const Eigen::VectorXd& d,
               const std::vector<RecoveredElement>& recovered,
               const std::string& title = "vemh solution");

}  // namespace vemh
