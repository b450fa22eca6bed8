#include "vemh/material.hpp"

#include <stdexcept>

namespace vemh {

MaterialLaw make_material(double E, double nu, Regime regime) {
  if (!(E > 0)) throw std::invalid_argument("make_material: E must be positive");
  if (!(nu > -1 && nu < 0.5)) throw std::invalid_argument("make_material: nu must be in (-1, 0.5)");
  MaterialLaw law;
  law.E = E;
  law.nu = nu;
  law.regime = regime;
  if (regime == Regime::PlaneStrain) {
    const double f = E / ((1.0 + nu) * (1.0 - 2.0 * nu));
    law.C << f * (1.0 - nu), f * nu, 0.0,
             f * nu, f * (1.0 - nu), 0.0,
             0.0, 0.0, f * (1.0 - 2.0 * nu) / 2.0;
    law.Cinv << (1.0 - nu * nu) / E, -nu * (1.0 + nu) / E, 0.0,
                -nu * (1.0 + nu) / E, (1.0 - nu * nu) / E, 0.0,
                0.0, 0.0, 2.0 * (1.0 + nu) / E;
  } else {
    const double f = E / (1.0 - nu * nu);
    law.C << f, f * nu, 0.0,
             f * nu, f, 0.0,
             0.0, 0.0, f * (1.0 - nu) / 2.0;
    law.Cinv << 1.0 / E, -nu / E, 0.0,
                -nu / E, 1.0 / E, 0.0,
                0.0, 0.0, 2.0 * (1.0 + nu) / E;
  }
  return law;
}

double hydrostatic_from_voigt(const MaterialLaw& law, const Eigen::Vector3d& sigma) {
  const double s = sigma(0) + sigma(1);
  if (law.regime == Regime::PlaneStrain) return (1.0 + law.nu) * s / 3.0;
  return s / 3.0;
}

}  // namespace vemh
