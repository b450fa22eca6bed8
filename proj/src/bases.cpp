#include "vemh/bases.hpp"

#include <stdexcept>

namespace vemh {

Eigen::Matrix<double, 2, 6> eval_monomials(const ElementGeometry& geom, const Vec2& x) {
  const double xi = (x.x() - geom.centroid.x()) / geom.diameter;
  const double eta = (x.y() - geom.centroid.y()) / geom.diameter;
  Eigen::Matrix<double, 2, 6> m;
  m << 1, 0, -eta, eta, xi, 0,
       0, 1, xi, xi, 0, eta;
  return m;
}

Eigen::Matrix<double, 3, 6> eval_strain_monomials(const ElementGeometry& geom) {
  const double ih = 1.0 / geom.diameter;
  Eigen::Matrix<double, 3, 6> s = Eigen::Matrix<double, 3, 6>::Zero();
  s(2, 3) = 2.0 * ih;
  s(0, 4) = ih;
  s(1, 5) = ih;
  return s;
}

int StressBasis::size() const {
  switch (kind) {
    case StressBasisKind::Beta9: return 9;
    case StressBasisKind::Beta11: return 11;
    case StressBasisKind::Beta15: return 15;
    case StressBasisKind::Beta13Hybrid: return 13;
    case StressBasisKind::Beta12Penalty: return 12;
  }
  throw std::logic_error("StressBasis::size: bad kind");
}

bool StressBasis::divergence_free() const {
  return kind == StressBasisKind::Beta9 || kind == StressBasisKind::Beta11 ||
         kind == StressBasisKind::Beta15;
}

namespace {

// Airy-derived divergence-free columns; Beta9/Beta11 take leading subsets.
void airy_eval(double xi, double eta, int k, Eigen::MatrixXd& P) {
  const double x2 = xi * xi, y2 = eta * eta, xy = xi * eta;
  const double cols[15][3] = {
      {1, 0, 0},
      {0, 1, 0},
      {0, 0, 1},
      {eta, 0, 0},
      {0, xi, 0},
      {xi, 0, -eta},
      {0, eta, -xi},
      {0, 2 * xy, -x2},
      {2 * xy, 0, -y2},
      {-y2, x2, 0},
      {x2 - y2, y2 - x2, -2 * xy},
      {xi * (x2 - 6 * y2), 3 * xi * y2, -eta * (3 * x2 - 2 * y2)},
      {xi * x2, -xi * (2 * x2 - 3 * y2), -3 * x2 * eta},
      {3 * x2 * eta, -eta * (6 * x2 - y2), xi * (2 * x2 - 3 * y2)},
      {eta * (3 * x2 - 2 * y2), eta * y2, -3 * xi * y2}};
  for (int j = 0; j < k; ++j)
    for (int r = 0; r < 3; ++r) P(r, j) = cols[j][r];
}

void hybrid13_eval(double xi, double eta, Eigen::MatrixXd& P) {
  const double x2 = xi * xi, y2 = eta * eta, xy = xi * eta;
  const double cols[13][3] = {
      {1, 0, 0},
      {0, 1, 0},
      {0, 0, 1},
      {xi, 0, 0},
      {0, xi, 0},
      {0, 0, xi},
      {eta, 0, 0},
      {0, eta, 0},
      {0, 0, eta},
      {0, 2 * xy, -x2},
      {2 * xy, 0, -y2},
      {-y2, x2, 0},
      {x2 - y2, y2 - x2, -2 * xy}};
  for (int j = 0; j < 13; ++j)
    for (int r = 0; r < 3; ++r) P(r, j) = cols[j][r];
}

void penalty12_eval(double xi, double eta, Eigen::MatrixXd& P) {
  const double xy = xi * eta;
  const double cols[12][3] = {
      {1, 0, 0},
      {0, 1, 0},
      {0, 0, 1},
      {xi, 0, 0},
      {0, xi, 0},
      {0, 0, xi},
      {eta, 0, 0},
      {0, eta, 0},
      {0, 0, eta},
      {xy, 0, 0},
      {0, xy, 0},
      {0, 0, xy}};
  for (int j = 0; j < 12; ++j)
    for (int r = 0; r < 3; ++r) P(r, j) = cols[j][r];
}

// Scaled-coordinate divergences (d/dxi, d/deta); physical values need 1/h.
void hybrid13_div(double xi, double eta, Eigen::MatrixXd& D) {
  D.setZero();
  D(0, 3) = 1;             // d/dx(xi) of sxx
  D(1, 5) = 1;             // d/dx(xi) of sxy
  D(0, 8) = 1;             // d/dy(eta) of sxy
  D(1, 7) = 1;             // d/dy(eta) of syy
  (void)xi;
  (void)eta;
}

void penalty12_div(double xi, double eta, Eigen::MatrixXd& D) {
  D.setZero();
  D(0, 3) = 1;
  D(1, 5) = 1;
  D(0, 8) = 1;
  D(1, 7) = 1;
  D(0, 9) = eta;  // d/dx(xi eta) of sxx
  D(1, 10) = xi;  // d/dy(xi eta) of syy
  D(0, 11) = xi;  // d/dy(xi eta) of sxy
  D(1, 11) = eta; // d/dx(xi eta) of sxy
}

}  // namespace

Eigen::MatrixXd StressBasis::eval(const ElementGeometry& geom, const Vec2& x) const {
  const double xi = (x.x() - geom.centroid.x()) / geom.diameter;
  const double eta = (x.y() - geom.centroid.y()) / geom.diameter;
  Eigen::MatrixXd P(3, size());
  switch (kind) {
    case StressBasisKind::Beta9: airy_eval(xi, eta, 9, P); break;
    case StressBasisKind::Beta11: airy_eval(xi, eta, 11, P); break;
    case StressBasisKind::Beta15: airy_eval(xi, eta, 15, P); break;
    case StressBasisKind::Beta13Hybrid: hybrid13_eval(xi, eta, P); break;
    case StressBasisKind::Beta12Penalty: penalty12_eval(xi, eta, P); break;
  }
  return P;
}

Eigen::MatrixXd StressBasis::eval_div(const ElementGeometry& geom, const Vec2& x) const {
  const double xi = (x.x() - geom.centroid.x()) / geom.diameter;
  const double eta = (x.y() - geom.centroid.y()) / geom.diameter;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, size());
  switch (kind) {
    case StressBasisKind::Beta9:
    case StressBasisKind::Beta11:
    case StressBasisKind::Beta15:
      return D;  // divergence-free by construction
    case StressBasisKind::Beta13Hybrid: hybrid13_div(xi, eta, D); break;
    case StressBasisKind::Beta12Penalty: penalty12_div(xi, eta, D); break;
  }
  return D / geom.diameter;
}

StressBasis make_stress_basis(StressBasisKind kind) { return {kind}; }

}  // namespace vemh
