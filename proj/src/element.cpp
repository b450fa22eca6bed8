#include "vemh/element.hpp"

#include <cmath>
#include <stdexcept>

namespace vemh {

StressBasisKind Formulation::basis_kind() const {
  switch (kind) {
    case FormKind::Sh9:
    case FormKind::Sh9Stab: return StressBasisKind::Beta9;
    case FormKind::Sh11:
    case FormKind::Sh11Stab: return StressBasisKind::Beta11;
    case FormKind::Sh15: return StressBasisKind::Beta15;
    case FormKind::Sh13: return StressBasisKind::Beta13Hybrid;
    case FormKind::Psh12: return StressBasisKind::Beta12Penalty;
  }
  throw std::logic_error("Formulation::basis_kind: bad kind");
}

double Formulation::alpha(const MaterialLaw& law, const ElementGeometry& geom) const {
  const double mult = alpha_mult ? *alpha_mult : std::min(cap, kappa / law.E);
  return mult * geom.ell0 * geom.ell0;
}

FormKind parse_formulation(const std::string& name) {
  if (name == "sh9") return FormKind::Sh9;
  if (name == "sh11") return FormKind::Sh11;
  if (name == "sh15") return FormKind::Sh15;
  if (name == "sh13") return FormKind::Sh13;
  if (name == "psh12") return FormKind::Psh12;
  if (name == "sh9_stab") return FormKind::Sh9Stab;
  if (name == "sh11_stab") return FormKind::Sh11Stab;
  throw std::invalid_argument("unknown formulation: " + name);
}

std::string formulation_name(FormKind kind) {
  switch (kind) {
    case FormKind::Sh9: return "sh9";
    case FormKind::Sh11: return "sh11";
    case FormKind::Sh15: return "sh15";
    case FormKind::Sh13: return "sh13";
    case FormKind::Psh12: return "psh12";
    case FormKind::Sh9Stab: return "sh9_stab";
    case FormKind::Sh11Stab: return "sh11_stab";
  }
  throw std::logic_error("formulation_name: bad kind");
}

Matrix6d compute_G(std::span<const Vec2, 6> pts, const ElementGeometry& geom,
                   const MaterialLaw& law) {
  Matrix6d G = Matrix6d::Zero();
  for (int j = 0; j < 6; ++j) {
    const auto m = eval_monomials(geom, pts[j]);
    for (int a = 0; a < 3; ++a)
      for (int mu = 0; mu < 6; ++mu) G(a, mu) += m.col(mu).dot(m.col(a)) / 6.0;
  }
  const auto S = eval_strain_monomials(geom);
  const Eigen::Matrix<double, 3, 6> CS = law.C * S;
  for (int a = 3; a < 6; ++a)
    for (int mu = 0; mu < 6; ++mu) G(a, mu) = geom.area * S.col(mu).dot(CS.col(a));
  return G;
}

Matrix6x12d compute_B(std::span<const Vec2, 6> pts, const ElementGeometry& geom,
                      const MaterialLaw& law) {
  Matrix6x12d B = Matrix6x12d::Zero();
  // Nodal-average rows: the basis function of DOF i is nonzero at node i only.
  for (int i = 0; i < 6; ++i) {
    const auto m = eval_monomials(geom, pts[i]);
    for (int a = 0; a < 3; ++a) {
      B(a, i) = m(0, a) / 6.0;
      B(a, 6 + i) = m(1, a) / 6.0;
    }
  }
  // Energy rows: int S(phi_i)^T C S(m_a) with the strain integral reduced to
  // the boundary. For hat functions on straight segments the trapezoid sum is
  // exact: each segment contributes (length/2) * normal to its endpoints.
  Eigen::Matrix<double, 6, 2> q = Eigen::Matrix<double, 6, 2>::Zero();
  for (int j = 0; j < 6; ++j) {
    const Vec2& a = pts[j];
    const Vec2& b = pts[(j + 1) % 6];
    const Vec2 d = b - a;
    const Vec2 scaled_normal(d.y(), -d.x());  // outward normal times length
    q.row(j) += 0.5 * scaled_normal.transpose();
    q.row((j + 1) % 6) += 0.5 * scaled_normal.transpose();
  }
  const auto S = eval_strain_monomials(geom);
  const Eigen::Matrix<double, 3, 6> CS = law.C * S;
  for (int i = 0; i < 6; ++i) {
    const Eigen::Vector3d ex(q(i, 0), 0.0, q(i, 1));
    const Eigen::Vector3d ey(0.0, q(i, 1), q(i, 0));
    for (int a = 3; a < 6; ++a) {
      B(a, i) = ex.dot(CS.col(a));
      B(a, 6 + i) = ey.dot(CS.col(a));
    }
  }
  return B;
}

Matrix6x12d compute_PiEps(const Matrix6d& G, const Matrix6x12d& B) {
  Eigen::FullPivLU<Matrix6d> lu(G);
  if (!lu.isInvertible()) throw std::runtime_error("compute_PiEps: singular projector system");
  return lu.solve(B);
}

Eigen::MatrixXd compute_H(const StressBasis& basis, const ElementGeometry& geom,
                          const MaterialLaw& law, const PolygonRule& rule) {
  const int k = basis.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(k, k);
  for (const auto& qp : rule.points) {
    const Eigen::MatrixXd P = basis.eval(geom, qp.x);
    H.noalias() += qp.w * P.transpose() * law.Cinv * P;
  }
  return 0.5 * (H + H.transpose());
}

Eigen::MatrixXd compute_Hp(const StressBasis& basis, const ElementGeometry& geom,
                           const PolygonRule& rule) {
  const int k = basis.size();
  Eigen::MatrixXd Hp = Eigen::MatrixXd::Zero(k, k);
  if (basis.divergence_free()) return Hp;
  for (const auto& qp : rule.points) {
    const Eigen::MatrixXd D = basis.eval_div(geom, qp.x);
    Hp.noalias() += qp.w * D.transpose() * D;
  }
  return 0.5 * (Hp + Hp.transpose());
}

Eigen::MatrixXd compute_L(const StressBasis& basis, const ElementGeometry& geom,
                          const EdgeRule& edges, const PolygonRule& rule,
                          const Matrix6x12d& PiEps) {
  const int k = basis.size();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(k, 12);
  // Boundary term: contour integral of P^T N phi with hat functions linear on
  // each segment.
  for (const auto& seg : edges.segments) {
    Eigen::Matrix<double, 3, 2> N;
    N << seg.normal.x(), 0.0,
         0.0, seg.normal.y(),
         seg.normal.y(), seg.normal.x();
    for (size_t g = 0; g < seg.t.size(); ++g) {
      const double t = seg.t[g];
      const Vec2 x = seg.a + t * (seg.b - seg.a);
      const Eigen::MatrixXd PtN = basis.eval(geom, x).transpose() * N;  // k x 2
      const double wa = seg.w[g] * (1.0 - t);
      const double wb = seg.w[g] * t;
      L.col(seg.local_a) += wa * PtN.col(0);
      L.col(seg.local_b) += wb * PtN.col(0);
      L.col(6 + seg.local_a) += wa * PtN.col(1);
      L.col(6 + seg.local_b) += wb * PtN.col(1);
    }
  }
  // Volume term against the projected displacement (nondivergence-free only).
  if (!basis.divergence_free()) {
    for (const auto& qp : rule.points) {
      const Eigen::MatrixXd D = basis.eval_div(geom, qp.x);           // 2 x k
      const auto M = eval_monomials(geom, qp.x);                      // 2 x 6
      L.noalias() -= qp.w * D.transpose() * (M * PiEps);
    }
  }
  return L;
}

Eigen::VectorXd compute_Lp(const StressBasis& basis, const ElementGeometry& geom,
                           const PolygonRule& rule, const BodyForce& body) {
  Eigen::VectorXd Lp = Eigen::VectorXd::Zero(basis.size());
  if (!body || basis.divergence_free()) return Lp;
  for (const auto& qp : rule.points) {
    const Eigen::MatrixXd D = basis.eval_div(geom, qp.x);
    const Vec2 b = body(qp.x);
    Lp.noalias() += qp.w * D.transpose() * Eigen::Vector2d(b.x(), b.y());
  }
  return Lp;
}

namespace {

// Solve M X = R for symmetric positive-definite M with diagonal equilibration
// so that badly scaled stress bases on thin elements stay tractable.
Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& M, const Eigen::MatrixXd& R,
                          const char* label) {
  const int k = static_cast<int>(M.rows());
  Eigen::VectorXd d(k);
  for (int i = 0; i < k; ++i) {
    if (!(M(i, i) > 0)) throw std::runtime_error(std::string(label) + ": matrix not positive");
    d(i) = 1.0 / std::sqrt(M(i, i));
  }
  const Eigen::MatrixXd Ms = d.asDiagonal() * M * d.asDiagonal();
  Eigen::LDLT<Eigen::MatrixXd> ldlt(Ms);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error(std::string(label) + ": factorization failed");
  const double dmin = ldlt.vectorD().minCoeff();
  const double dmax = ldlt.vectorD().maxCoeff();
  if (!(dmin > 0) || dmin < 1e-14 * dmax)
    throw std::runtime_error(std::string(label) + ": matrix numerically singular");
  return d.asDiagonal() * ldlt.solve(d.asDiagonal() * R);
}

}  // namespace

StiffnessSH stiffness_sh(const Eigen::MatrixXd& H, const Eigen::MatrixXd& L) {
  StiffnessSH out;
  out.PiBeta = spd_solve(H, L, "stiffness_sh: H");
  Matrix12d K = L.transpose() * out.PiBeta;
  out.K = 0.5 * (K + K.transpose());
  return out;
}

StiffnessPSH stiffness_psh(const Eigen::MatrixXd& H, const Eigen::MatrixXd& Hp,
                           const Eigen::MatrixXd& L, const Eigen::VectorXd& Lp, double alpha) {
  StiffnessPSH out;
  const Eigen::MatrixXd M = H + alpha * Hp;
  Eigen::MatrixXd rhs(M.rows(), L.cols() + 1);
  rhs.leftCols(L.cols()) = L;
  rhs.col(L.cols()) = Lp;
  const Eigen::MatrixXd sol = spd_solve(M, rhs, "stiffness_psh: H + alpha Hp");
  out.PiBeta = sol.leftCols(L.cols());
  out.beta_const = -alpha * sol.col(L.cols());
  Matrix12d K = L.transpose() * out.PiBeta;
  out.K = 0.5 * (K + K.transpose());
  out.f_penalty = -L.transpose() * out.beta_const;
  return out;
}

Matrix12d stabilization_KS(std::span<const Vec2, 6> pts, const ElementGeometry& geom,
                           double tau) {
  Eigen::Matrix<double, 12, 6> D;
  for (int i = 0; i < 6; ++i) {
    const auto m = eval_monomials(geom, pts[i]);
    D.row(i) = m.row(0);
    D.row(6 + i) = m.row(1);
  }
  const Matrix6d DtD = D.transpose() * D;
  Eigen::LDLT<Matrix6d> ldlt(DtD);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("stabilization_KS: degenerate nodal-value matrix");
  Matrix12d KS = tau * (Matrix12d::Identity() - D * ldlt.solve(D.transpose()));
  return 0.5 * (KS + KS.transpose());
}

Vector12d force_vector(const ElementGeometry& geom, const EdgeRule& edges,
                       const PolygonRule& rule, const Matrix6x12d& PiEps, const BodyForce& body,
                       std::span<const std::pair<int, Traction>> tractions) {
  Vector12d f = Vector12d::Zero();
  if (body) {
    for (const auto& qp : rule.points) {
      const auto M = eval_monomials(geom, qp.x);  // 2 x 6
      const Eigen::Matrix<double, 2, 12> U = M * PiEps;
      const Vec2 b = body(qp.x);
      f.noalias() += qp.w * U.transpose() * Eigen::Vector2d(b.x(), b.y());
    }
  }
  for (const auto& [edge, traction] : tractions) {
    const EdgeSegment& seg = edges.segments.at(edge);
    for (size_t g = 0; g < seg.t.size(); ++g) {
      const double t = seg.t[g];
      const Vec2 x = seg.a + t * (seg.b - seg.a);
      const Vec2 tr = traction(x);
      const double wa = seg.w[g] * (1.0 - t);
      const double wb = seg.w[g] * t;
      f(seg.local_a) += wa * tr.x();
      f(seg.local_b) += wb * tr.x();
      f(6 + seg.local_a) += wa * tr.y();
      f(6 + seg.local_b) += wb * tr.y();
    }
  }
  return f;
}

ElementOperators build_element(const Mesh& mesh, int element, const Formulation& form,
                               const MaterialLaw& law, const BodyForce& body,
                               std::span<const std::pair<int, Traction>> tractions) {
  const auto pts = mesh.element_points(element);
  const std::span<const Vec2, 6> poly(pts.data(), 6);

  ElementOperators op;
  op.geom = element_geometry(poly);
  op.basis = make_stress_basis(form.basis_kind());

  const PolygonRule rule = polygon_rule(poly, 8);
  const EdgeRule edges = edge_rule(poly, 5);

  const Matrix6d G = compute_G(poly, op.geom, law);
  const Matrix6x12d B = compute_B(poly, op.geom, law);
  op.PiEps = compute_PiEps(G, B);

  const Eigen::MatrixXd H = compute_H(op.basis, op.geom, law, rule);
  const Eigen::MatrixXd L = compute_L(op.basis, op.geom, edges, rule, op.PiEps);

  if (form.penalty()) {
    const Eigen::MatrixXd Hp = compute_Hp(op.basis, op.geom, rule);
    const Eigen::VectorXd Lp = compute_Lp(op.basis, op.geom, rule, body);
    const auto psh = stiffness_psh(H, Hp, L, Lp, form.alpha(law, op.geom));
    op.PiBeta = psh.PiBeta;
    op.beta_const = psh.beta_const;
    op.K = psh.K;
    op.f = psh.f_penalty;
  } else {
    const auto sh = stiffness_sh(H, L);
    op.PiBeta = sh.PiBeta;
    op.beta_const = Eigen::VectorXd::Zero(op.basis.size());
    op.K = sh.K;
    if (form.stabilized()) op.K += stabilization_KS(poly, op.geom, form.tau);
  }
  op.f += force_vector(op.geom, edges, rule, op.PiEps, body, tractions);
  return op;
}

}  // namespace vemh
