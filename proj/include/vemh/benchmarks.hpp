#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vemh/analysis.hpp"
#include "vemh/mesh.hpp"
#include "vemh/system.hpp"

namespace vemh {

// ---------------------------------------------------------------------------
// Closed-form reference solutions.
// ---------------------------------------------------------------------------

// End-loaded cantilever over [0,L] x [-D/2, D/2]: shear resultant P on the
// right end, left end held by the exact displacement. The base fixity keeps
// the vertical section element at the support vertical (du/dy(0,0) = 0);
// `rotation` adds a rigid rotation about the support, which switches between
// the standard fixity conventions of the closed form.
struct TimoshenkoBeam {
  double E = 1, nu = 0, L = 1, D = 1, P = 1;
  Regime regime = Regime::PlaneStress;
  double rotation = 0;

  double Ebar() const { return regime == Regime::PlaneStrain ? E / (1 - nu * nu) : E; }
  double nubar() const { return regime == Regime::PlaneStrain ? nu / (1 - nu) : nu; }
  double inertia() const { return D * D * D / 12.0; }
  double half_depth() const { return 0.5 * D; }
  Vec2 displacement(const Vec2& x) const;
  Eigen::Vector3d stress(const Vec2& x) const;
  double tip_deflection() const { return displacement({L, 0.0}).y(); }
  // Rotation that balances the support fixity between the section and the
  // beam axis; with it, tip_deflection matches the commonly tabulated value.
  double balanced_rotation() const;
};

// Infinite plate with a traction-free circular hole of radius a under a
// far-field uniaxial load sigma0 along x (plane strain).
struct KirschPlate {
  double E = 1, nu = 0, a = 1, sigma0 = 1;

  double mu() const { return E / (2 * (1 + nu)); }
  double kolosov() const { return 3 - 4 * nu; }
  Vec2 displacement(const Vec2& x) const;
  Eigen::Vector3d stress(const Vec2& x) const;
};

// Thick-walled cylinder, inner radius a under pressure p, outer radius b
// traction-free (plane strain).
struct LameCylinder {
  double E = 1, nu = 0, a = 1, b = 2, p = 1;

  Vec2 displacement(const Vec2& x) const;
  Eigen::Vector3d stress(const Vec2& x) const;
  double hydrostatic() const;  // constant over the domain
};

// Trigonometric manufactured solution on the unit square with homogeneous
// Dirichlet boundary and a nonzero body force.
struct ManufacturedField {
  MaterialLaw law;

  Vec2 displacement(const Vec2& x) const;
  Eigen::Vector3d stress(const Vec2& x) const;
  Vec2 body(const Vec2& x) const;
};

// ---------------------------------------------------------------------------
// Benchmark case definitions.
// ---------------------------------------------------------------------------

struct DirichletRule {
  std::string tag;
  bool fix_x = false;
  bool fix_y = false;
  VecField value;  // empty -> zero data
};

// Point on the true problem boundary with outward unit normal, used to check
// that the exact fields honor the boundary conditions the case imposes.
// With dirichlet_tag set, the rule's data is compared against the exact
// displacement; otherwise the applied traction (none when traction_tag is
// empty) is compared against sigma.n.
struct BcSample {
  Vec2 x = Vec2::Zero();
  Vec2 n = Vec2::Zero();
  std::string traction_tag;
  std::string dirichlet_tag;
};

struct MeshFamily {
  std::string name;
  int levels = 0;
  std::function<Mesh(int)> build;  // level in [0, levels)
};

struct BenchmarkCase {
  std::string name;
  MaterialLaw law;
  std::vector<MeshFamily> families;  // families.front() is the default
  std::vector<DirichletRule> dirichlet;
  Loads loads;
  std::optional<ExactFields> exact;
  std::vector<BcSample> bc_samples;
  // Hydrostatic-error sampling for the non-penalty formulations (the penalty
  // formulation always uses pointwise sampling).
  HydroMode hydro_mode_sh = HydroMode::Pointwise;
  std::function<double(const Mesh&, const FieldSolution&)> qoi;  // empty -> none
  double qoi_exact = std::numeric_limits<double>::quiet_NaN();

  const MeshFamily& family(const std::string& family_name) const;  // throws if unknown
};

HydroMode hydro_mode_for(const BenchmarkCase& bc, FormKind kind);

// Dirichlet constraints for all tagged nodes of the case's rules.
DirichletBC make_dirichlet(const Mesh& mesh, const BenchmarkCase& bc);

// Verifies exact-field/BC consistency at the case's boundary samples:
// tractions match sigma.n and Dirichlet data matches the exact displacement.
// Throws std::runtime_error naming the first violated sample. No-op for
// cases without exact fields.
void check_bc_consistency(const BenchmarkCase& bc, double tol = 1e-8);

BenchmarkCase case_cantilever_thin();
BenchmarkCase case_cantilever_thick();
BenchmarkCase case_cooks_membrane();
BenchmarkCase case_plate_with_hole();
BenchmarkCase case_pressurized_cylinder();
BenchmarkCase case_manufactured();
BenchmarkCase case_punch();

BenchmarkCase benchmark_by_name(const std::string& name);  // throws if unknown
std::vector<std::string> benchmark_names();

// Assemble, constrain, and solve a case on a concrete mesh.
struct CaseSolution {
  GlobalSystem system;
  FieldSolution sol;
};
CaseSolution solve_case(const BenchmarkCase& bc, const Mesh& mesh, const Formulation& form);

// Mesh builders shared with the test suite.
Mesh cooks_mesh(int n);
Mesh plate_hole_mesh(int nr, int nt);
Mesh annulus_mesh(int nr, int nt, double a, double b);

int node_nearest(const Mesh& mesh, const Vec2& p);

}  // namespace vemh
