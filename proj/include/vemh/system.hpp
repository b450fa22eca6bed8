#pragma once

#include <Eigen/Sparse>
#include <map>
#include <string>
#include <vector>

#include "vemh/element.hpp"

namespace vemh {

// Global DOF numbering: node i carries DOFs (2i, 2i+1).
inline int dof_x(int node) { return 2 * node; }
inline int dof_y(int node) { return 2 * node + 1; }

struct Loads {
  BodyForce body;                            // may be empty
  std::map<std::string, Traction> tractions; // boundary tag -> traction
};

struct GlobalSystem {
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd f;
  std::vector<ElementOperators> elements;
};

GlobalSystem assemble(const Mesh& mesh, const Formulation& form, const MaterialLaw& law,
                      const Loads& loads);

// Prescribed DOF values (node-component resolved to global DOF ids).
struct DirichletBC {
  std::map<int, double> value;

  void fix(int node, int component, double v) { value[2 * node + component] = v; }
};

struct FieldSolution {
  FormKind formulation = FormKind::Sh15;
  Eigen::VectorXd d;                  // nodal displacements
  std::vector<Eigen::VectorXd> beta;  // stress coefficients per element
  Eigen::VectorXd reactions;          // K d - f, nonzero only at fixed DOFs
  double residual = 0.0;              // normwise backward error of the free-DOF solve
};

// Eliminates fixed DOFs symmetrically, solves the reduced SPD system with a
// direct sparse factorization, recovers per-element stress coefficients and
// reactions. Throws if the constraints leave rigid modes or the residual
// check fails.
FieldSolution solve(const Mesh& mesh, const GlobalSystem& system, const DirichletBC& bc,
                    const Formulation& form);

Vec2 total_applied_load(const GlobalSystem& system, const DirichletBC& bc);
Vec2 total_reaction(const FieldSolution& sol);

}  // namespace vemh
