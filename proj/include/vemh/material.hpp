#pragma once

#include <Eigen/Dense>

namespace vemh {

enum class Regime { PlaneStrain, PlaneStress };

// Isotropic linear elasticity in Voigt form with strain (exx, eyy, 2exy) and
// stress (sxx, syy, sxy).
struct MaterialLaw {
  double E = 0.0;
  double nu = 0.0;
  Regime regime = Regime::PlaneStrain;
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d Cinv = Eigen::Matrix3d::Zero();

  double lambda() const { return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)); }
  double mu() const { return E / (2.0 * (1.0 + nu)); }
};

MaterialLaw make_material(double E, double nu, Regime regime);

// Hydrostatic stress (sxx + syy + szz) / 3; plane strain supplies
// szz = nu (sxx + syy), plane stress has szz = 0.
double hydrostatic_from_voigt(const MaterialLaw& law, const Eigen::Vector3d& sigma);

}  // namespace vemh
