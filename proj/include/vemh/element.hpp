#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>

#include "vemh/bases.hpp"
#include "vemh/material.hpp"
#include "vemh/mesh.hpp"
#include "vemh/quadrature.hpp"

namespace vemh {

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix6x12d = Eigen::Matrix<double, 6, 12>;
using Matrix12d = Eigen::Matrix<double, 12, 12>;
using Vector12d = Eigen::Matrix<double, 12, 1>;

using BodyForce = std::function<Vec2(const Vec2&)>;
using Traction = std::function<Vec2(const Vec2&)>;

// Element formulations. The *_stab variants add the rank-correcting term to
// the rank-deficient 9/11-term stiffnesses. The 13-term hybrid exists for
// spectral studies only and is kept out of the benchmark drivers.
enum class FormKind { Sh9, Sh11, Sh15, Sh13, Psh12, Sh9Stab, Sh11Stab };

struct Formulation {
  FormKind kind = FormKind::Sh15;
  double kappa = 1e4;    // penalty scale: alpha = min(cap, kappa / E) * ell0^2
  double cap = 10.0;
  double tau = 0.5;      // stabilization magnitude
  std::optional<double> alpha_mult;  // overrides alpha = alpha_mult * ell0^2

  bool penalty() const { return kind == FormKind::Psh12; }
  bool stabilized() const { return kind == FormKind::Sh9Stab || kind == FormKind::Sh11Stab; }
  StressBasisKind basis_kind() const;
  double alpha(const MaterialLaw& law, const ElementGeometry& geom) const;
};

FormKind parse_formulation(const std::string& name);
std::string formulation_name(FormKind kind);

// Energy-projection system G pi = B. Rows 1-3 pin the rigid modes by nodal
// averaging, rows 4-6 impose the energy orthogonality.
Matrix6d compute_G(std::span<const Vec2, 6> pts, const ElementGeometry& geom,
                   const MaterialLaw& law);
Matrix6x12d compute_B(std::span<const Vec2, 6> pts, const ElementGeometry& geom,
                      const MaterialLaw& law);
Matrix6x12d compute_PiEps(const Matrix6d& G, const Matrix6x12d& B);

// Stress-basis blocks.
Eigen::MatrixXd compute_H(const StressBasis& basis, const ElementGeometry& geom,
                          const MaterialLaw& law, const PolygonRule& rule);
Eigen::MatrixXd compute_Hp(const StressBasis& basis, const ElementGeometry& geom,
                           const PolygonRule& rule);
// L = boundary term - volume term; the volume term vanishes for
// divergence-free bases (PiEps is then unused).
Eigen::MatrixXd compute_L(const StressBasis& basis, const ElementGeometry& geom,
                          const EdgeRule& edges, const PolygonRule& rule,
                          const Matrix6x12d& PiEps);
Eigen::VectorXd compute_Lp(const StressBasis& basis, const ElementGeometry& geom,
                           const PolygonRule& rule, const BodyForce& body);

struct StiffnessSH {
  Eigen::MatrixXd PiBeta;  // k x 12, maps nodal displacements to stress coefficients
  Matrix12d K;
};
StiffnessSH stiffness_sh(const Eigen::MatrixXd& H, const Eigen::MatrixXd& L);

struct StiffnessPSH {
  Eigen::MatrixXd PiBeta;      // k x 12
  Eigen::VectorXd beta_const;  // body-force contribution to the coefficients
  Matrix12d K;
  Vector12d f_penalty;
};
StiffnessPSH stiffness_psh(const Eigen::MatrixXd& H, const Eigen::MatrixXd& Hp,
                           const Eigen::MatrixXd& L, const Eigen::VectorXd& Lp, double alpha);

// tau * (I - D (D^T D)^-1 D^T) with D the 12x6 nodal-value matrix of the
// linear monomials; spectrum is {0 x6, tau x6} and linear fields lie in the
// kernel.
Matrix12d stabilization_KS(std::span<const Vec2, 6> pts, const ElementGeometry& geom, double tau);

// Consistent load: body force against the projected displacement plus edge
// tractions. Traction segments are given as (local_edge, traction).
Vector12d force_vector(const ElementGeometry& geom, const EdgeRule& edges,
                       const PolygonRule& rule, const Matrix6x12d& PiEps, const BodyForce& body,
                       std::span<const std::pair<int, Traction>> tractions);

// Everything assembly and recovery need from one element.
struct ElementOperators {
  ElementGeometry geom;
  StressBasis basis;
  Matrix6x12d PiEps = Matrix6x12d::Zero();
  Eigen::MatrixXd PiBeta;      // k x 12
  Eigen::VectorXd beta_const;  // k (zero unless penalty formulation)
  Matrix12d K = Matrix12d::Zero();
  Vector12d f = Vector12d::Zero();
};

ElementOperators build_element(const Mesh& mesh, int element, const Formulation& form,
                               const MaterialLaw& law, const BodyForce& body,
                               std::span<const std::pair<int, Traction>> tractions);

inline ElementOperators build_element(const Mesh& mesh, int element, const Formulation& form,
                                      const MaterialLaw& law) {
  return build_element(mesh, element, form, law, nullptr, {});
}

}  // namespace vemh
