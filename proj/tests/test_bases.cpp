#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "oracles.hpp"
#include "vemh/bases.hpp"

using namespace vemh;

namespace {

ElementGeometry geom_at(const Vec2& c, double h) {
  ElementGeometry g;
  g.centroid = c;
  g.diameter = h;
  g.area = 1.0;
  g.ell0 = 0.5 * h;
  return g;
}

const StressBasisKind kAllKinds[] = {StressBasisKind::Beta9, StressBasisKind::Beta11,
                                     StressBasisKind::Beta15, StressBasisKind::Beta13Hybrid,
                                     StressBasisKind::Beta12Penalty};

}  // namespace

TEST_CASE("displacement monomials match the displayed matrix") {
  const ElementGeometry g = geom_at({2.0, -1.0}, 2.0);

  const auto at_c = eval_monomials(g, g.centroid);
  Eigen::Matrix<double, 2, 6> expect;
  expect << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0;
  CHECK((at_c - expect).norm() < 1e-15);

  // xi = 1, eta = 0.
  const auto at_x = eval_monomials(g, {g.centroid.x() + g.diameter, g.centroid.y()});
  expect << 1, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 0;
  CHECK((at_x - expect).norm() < 1e-15);

  // General point: [[1,0,-eta,eta,xi,0],[0,1,xi,xi,0,eta]].
  const double xi = 0.3, eta = -0.55;
  const auto at_p =
      eval_monomials(g, {g.centroid.x() + xi * g.diameter, g.centroid.y() + eta * g.diameter});
  expect << 1, 0, -eta, eta, xi, 0, 0, 1, xi, xi, 0, eta;
  CHECK((at_p - expect).norm() < 1e-14);
}

TEST_CASE("strain monomials: rigid columns vanish, constants carry 1/h") {
  const ElementGeometry g2 = geom_at({0.7, 0.1}, 2.0);
  const auto S2 = eval_strain_monomials(g2);
  CHECK(S2.leftCols<3>().norm() == 0.0);
  CHECK((S2.col(3) - Eigen::Vector3d(0, 0, 1.0)).norm() < 1e-15);  // (0,0,2)/h at h=2
  CHECK((S2.col(4) - Eigen::Vector3d(0.5, 0, 0)).norm() < 1e-15);
  CHECK((S2.col(5) - Eigen::Vector3d(0, 0.5, 0)).norm() < 1e-15);

  const auto S1 = eval_strain_monomials(geom_at({0.7, 0.1}, 1.0));
  CHECK((S1.rightCols<3>() - 2.0 * S2.rightCols<3>()).norm() < 1e-15);
}

TEST_CASE("strain monomials agree with finite differences of the monomials") {
  const ElementGeometry g = geom_at({-0.4, 1.3}, 1.7);
  const auto S = eval_strain_monomials(g);
  const Vec2 x(-0.1, 1.6);
  for (int mu = 0; mu < 6; ++mu) {
    auto u = [&](const Vec2& p) { return Vec2(eval_monomials(g, p).col(mu)); };
    const Eigen::Vector3d fd = oracle::fd_strain(u, x);
    CHECK((fd - S.col(mu)).norm() < 1e-8);
  }
}

TEST_CASE("stress bases: sizes, divergence-free flags, constant columns") {
  const ElementGeometry g = geom_at({0.2, 0.4}, 1.5);
  const int sizes[] = {9, 11, 15, 13, 12};
  const bool divfree[] = {true, true, true, false, false};
  for (int i = 0; i < 5; ++i) {
    const StressBasis basis = make_stress_basis(kAllKinds[i]);
    CHECK(basis.size() == sizes[i]);
    CHECK(basis.divergence_free() == divfree[i]);
    // At the centroid only the three constant columns survive, as I3.
    const Eigen::MatrixXd P = basis.eval(g, g.centroid);
    REQUIRE(P.rows() == 3);
    REQUIRE(P.cols() == sizes[i]);
    CHECK((P.leftCols<3>() - Eigen::Matrix3d::Identity()).norm() < 1e-14);
    CHECK(P.rightCols(sizes[i] - 3).norm() < 1e-14);
  }
}

TEST_CASE("beta15 column 12 closed-form value at xi = eta = 1") {
  const ElementGeometry g = geom_at({1.0, 2.0}, 3.0);
  const Vec2 x(g.centroid.x() + g.diameter, g.centroid.y() + g.diameter);
  const Eigen::MatrixXd P = make_stress_basis(StressBasisKind::Beta15).eval(g, x);
  CHECK(P(0, 11) == doctest::Approx(-5.0).epsilon(1e-13));
  CHECK(P(1, 11) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(P(2, 11) == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("beta12 column 10 divergence closed form") {
  const ElementGeometry g = geom_at({-1.0, 0.5}, 2.5);
  const Vec2 x(g.centroid.x() + 0.3 * g.diameter, g.centroid.y() + 0.7 * g.diameter);
  const Eigen::MatrixXd D = make_stress_basis(StressBasisKind::Beta12Penalty).eval_div(g, x);
  CHECK(D(0, 9) == doctest::Approx(0.7 / g.diameter).epsilon(1e-13));
  CHECK(D(1, 9) == doctest::Approx(0.0));
}

TEST_CASE("airy-derived bases are divergence-free on a 5x5 grid") {
  const ElementGeometry g = geom_at({0.3, -0.2}, 1.2);
  for (auto kind :
       {StressBasisKind::Beta9, StressBasisKind::Beta11, StressBasisKind::Beta15}) {
    const StressBasis basis = make_stress_basis(kind);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const Vec2 x(g.centroid.x() + (i - 2) * 0.4 * g.diameter,
                     g.centroid.y() + (j - 2) * 0.4 * g.diameter);
        const double pmax = basis.eval(g, x).cwiseAbs().maxCoeff();
        CHECK(basis.eval_div(g, x).cwiseAbs().maxCoeff() <= 1e-13 * std::max(1.0, pmax));
      }
    }
  }
}

TEST_CASE("eval_div matches finite differences for the non-divergence-free bases") {
  const ElementGeometry g = geom_at({0.0, 0.0}, 1.3);
  for (auto kind : {StressBasisKind::Beta13Hybrid, StressBasisKind::Beta12Penalty}) {
    const StressBasis basis = make_stress_basis(kind);
    const Vec2 pts[] = {{0.2, 0.3}, {-0.4, 0.1}, {0.5, -0.5}};
    for (const Vec2& x : pts) {
      const Eigen::MatrixXd D = basis.eval_div(g, x);
      for (int c = 0; c < basis.size(); ++c) {
        auto sxx = [&](const Vec2& p) { return basis.eval(g, p)(0, c); };
        auto syy = [&](const Vec2& p) { return basis.eval(g, p)(1, c); };
        auto sxy = [&](const Vec2& p) { return basis.eval(g, p)(2, c); };
        const double dx = oracle::fd_grad(sxx, x).x() + oracle::fd_grad(sxy, x).y();
        const double dy = oracle::fd_grad(sxy, x).x() + oracle::fd_grad(syy, x).y();
        CHECK(std::abs(D(0, c) - dx) < 1e-7);
        CHECK(std::abs(D(1, c) - dy) < 1e-7);
      }
    }
  }
}

TEST_CASE("every basis has full column rank on a sample grid") {
  const ElementGeometry g = geom_at({0.1, 0.9}, 1.1);
  for (auto kind : kAllKinds) {
    const StressBasis basis = make_stress_basis(kind);
    const int k = basis.size();
    Eigen::MatrixXd V(3 * 36, k);
    int r = 0;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const Vec2 x(g.centroid.x() + (i / 5.0 - 0.5) * g.diameter,
                     g.centroid.y() + (j / 5.0 - 0.5) * g.diameter);
        V.middleRows(r, 3) = basis.eval(g, x);
        r += 3;
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
    CHECK(svd.singularValues()(k - 1) > 1e-8 * svd.singularValues()(0));
  }
}

TEST_CASE("bases depend on the element only through centroid and diameter") {
  ElementGeometry a = geom_at({0.5, 0.25}, 2.0);
  ElementGeometry b = a;
  b.area = 17.0;  // area and ell0 must not matter
  b.ell0 = 0.01;
  const Vec2 x(1.1, 0.7);
  for (auto kind : kAllKinds) {
    const StressBasis basis = make_stress_basis(kind);
    CHECK((basis.eval(a, x) - basis.eval(b, x)).norm() == 0.0);
    CHECK((basis.eval_div(a, x) - basis.eval_div(b, x)).norm() == 0.0);
  }
  // Translating element and point together changes nothing.
  ElementGeometry c = a;
  c.centroid += Vec2(3.0, -2.0);
  const StressBasis b15 = make_stress_basis(StressBasisKind::Beta15);
  CHECK((b15.eval(a, x) - b15.eval(c, x + Vec2(3.0, -2.0))).norm() < 1e-14);
}
