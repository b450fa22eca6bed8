#include "vemh/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace vemh {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix built from the
// three-term recurrence, weights are mu0 times the squared first eigenvector
// components. alpha/beta are the recurrence coefficients on [-1,1].
void golub_welsch(const std::vector<double>& alpha, const std::vector<double>& beta_sqrt,
                  double mu0, std::vector<double>& nodes, std::vector<double>& weights) {
  const int n = static_cast<int>(alpha.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = alpha[i];
    if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = beta_sqrt[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success) throw std::runtime_error("golub_welsch: eigensolve failed");
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

}  // namespace

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n >= 1");
  std::vector<double> alpha(n, 0.0), bs(std::max(0, n - 1));
  for (int k = 1; k < n; ++k) bs[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  golub_welsch(alpha, bs, 2.0, nodes, weights);
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (nodes[i] + 1.0);
    weights[i] *= 0.5;
  }
}

void gauss_jacobi10_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi10_01: n >= 1");
  // Jacobi weight (1-x)^1 on [-1,1]: a0 = -1/3, a_k = -1/((2k+1)(2k+3)),
  // b_k = k(k+1)/(2k+1)^2, mu0 = 2.
  std::vector<double> alpha(n), bs(std::max(0, n - 1));
  alpha[0] = -1.0 / 3.0;
  for (int k = 1; k < n; ++k) {
    alpha[k] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
    bs[k - 1] = std::sqrt(k * (k + 1.0)) / (2.0 * k + 1.0);
  }
  golub_welsch(alpha, bs, 2.0, nodes, weights);
  // Map to [0,1]: x01 = (1+t)/2, and the weight (1-x01) contributes
  // an extra 1/2, so total scaling is 1/4.
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (nodes[i] + 1.0);
    weights[i] *= 0.25;
  }
}

namespace {

// Conical-product rule on the reference triangle (0,0),(1,0),(0,1), exact
// for polynomials of total degree <= degree.
std::vector<QuadPoint> reference_triangle_rule(int degree) {
  const int n = std::max(1, (degree + 2) / 2);  // 2n-1 >= degree+1 covers the cone factor
  std::vector<double> xu, wu, xv, wv;
  gauss_jacobi10_01(n, xu, wu);
  gauss_legendre_01(n, xv, wv);
  std::vector<QuadPoint> pts;
  pts.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pts.push_back({{xu[i], xv[j] * (1.0 - xu[i])}, wu[i] * wv[j]});
  return pts;
}

}  // namespace

PolygonRule polygon_rule(std::span<const Vec2> poly, int degree) {
  if (poly.size() < 3) throw std::invalid_argument("polygon_rule: need at least 3 vertices");
  if (degree < 0 || degree > 20) throw std::invalid_argument("polygon_rule: degree out of range");
  const double area = signed_area(poly);
  if (area <= 0) throw std::runtime_error("polygon_rule: polygon must be CCW with positive area");

  // Sub-triangles as point triples.
  std::vector<std::array<Vec2, 3>> tris;
  const Vec2 c = area_centroid(poly);
  if (star_convex_from(poly, c)) {
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
      const Vec2 &p = poly[i], &q = poly[(i + 1) % n];
      if (cross2(q - p, c - p) > 1e-14 * area) tris.push_back({c, p, q});
    }
  } else {
    for (const auto& t : ear_clip(poly)) tris.push_back({poly[t[0]], poly[t[1]], poly[t[2]]});
  }

  const auto ref = reference_triangle_rule(degree);
  PolygonRule rule;
  rule.area = area;
  rule.points.reserve(ref.size() * tris.size());
  for (const auto& t : tris) {
    const Vec2 e1 = t[1] - t[0], e2 = t[2] - t[0];
    const double jac = cross2(e1, e2);  // = 2 * triangle area
    for (const auto& rp : ref) {
      rule.points.push_back({t[0] + rp.x.x() * e1 + rp.x.y() * e2, rp.w * jac});
    }
  }
  return rule;
}

EdgeRule edge_rule(std::span<const Vec2> poly, int degree) {
  if (poly.size() < 3) throw std::invalid_argument("edge_rule: need at least 3 vertices");
  const int n = static_cast<int>(poly.size());
  const int npts = std::max(1, (degree + 2) / 2);
  std::vector<double> xs, ws;
  gauss_legendre_01(npts, xs, ws);
  EdgeRule rule;
  rule.segments.resize(n);
  for (int i = 0; i < n; ++i) {
    EdgeSegment& s = rule.segments[i];
    s.local_a = i;
    s.local_b = (i + 1) % n;
    s.a = poly[s.local_a];
    s.b = poly[s.local_b];
    const Vec2 d = s.b - s.a;
    s.length = d.norm();
    s.normal = s.length > 0 ? Vec2(d.y() / s.length, -d.x() / s.length) : Vec2(0, 0);
    s.t = xs;
    s.w.resize(npts);
    for (int k = 0; k < npts; ++k) s.w[k] = ws[k] * s.length;
  }
  return rule;
}

}  // namespace vemh
