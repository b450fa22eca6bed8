#pragma once

#include <Eigen/Dense>

#include "vemh/mesh.hpp"

namespace vemh {

// All polynomial bases are expressed in the scaled element coordinates
// xi = (x - x_E) / h_E, eta = (y - y_E) / h_E. Derivatives with respect to
// physical coordinates therefore carry a 1 / h_E factor.

// Linear vector monomials m_1..m_6 = (1,0), (0,1), (-eta,xi), (eta,xi),
// (xi,0), (0,eta), evaluated as a 2x6 matrix.
Eigen::Matrix<double, 2, 6> eval_monomials(const ElementGeometry& geom, const Vec2& x);

// Voigt strains of the monomials (constant over the element): columns 1-3
// vanish, columns 4-6 are (0,0,2)/h, (1,0,0)/h, (0,1,0)/h.
Eigen::Matrix<double, 3, 6> eval_strain_monomials(const ElementGeometry& geom);

enum class StressBasisKind { Beta9, Beta11, Beta15, Beta13Hybrid, Beta12Penalty };

struct StressBasis {
  StressBasisKind kind = StressBasisKind::Beta15;

  int size() const;
  // True when every column is divergence-free by construction.
  bool divergence_free() const;

  // 3 x k stress components (sxx, syy, sxy) at a point.
  Eigen::MatrixXd eval(const ElementGeometry& geom, const Vec2& x) const;
  // 2 x k physical divergence (dsxx/dx + dsxy/dy, dsyy/dy + dsxy/dx).
  Eigen::MatrixXd eval_div(const ElementGeometry& geom, const Vec2& x) const;
};

StressBasis make_stress_basis(StressBasisKind kind);

}  // namespace vemh
