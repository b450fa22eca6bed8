#include "vemh/system.hpp"

#include <Eigen/SparseCholesky>
#include <stdexcept>

namespace vemh {

GlobalSystem assemble(const Mesh& mesh, const Formulation& form, const MaterialLaw& law,
                      const Loads& loads) {
  const int n = 2 * mesh.n_nodes();
  GlobalSystem sys;
  sys.f = Eigen::VectorXd::Zero(n);
  sys.elements.reserve(mesh.n_elements());

  // Tagged boundary segments per element.
  std::vector<std::vector<std::pair<int, Traction>>> tract(mesh.n_elements());
  for (const auto& be : mesh.boundary) {
    const auto it = loads.tractions.find(be.tag);
    if (it != loads.tractions.end()) tract[be.element].push_back({be.local_edge, it->second});
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.n_elements() * 144);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    ElementOperators op = build_element(mesh, e, form, law, loads.body, tract[e]);
    const auto& el = mesh.elements[e].nodes;
    std::array<int, 12> g;
    for (int i = 0; i < 6; ++i) {
      g[i] = dof_x(el[i]);
      g[6 + i] = dof_y(el[i]);
    }
    for (int i = 0; i < 12; ++i) {
      sys.f(g[i]) += op.f(i);
      for (int j = 0; j < 12; ++j) trip.emplace_back(g[i], g[j], op.K(i, j));
    }
    sys.elements.push_back(std::move(op));
  }
  sys.K.resize(n, n);
  sys.K.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

FieldSolution solve(const Mesh& mesh, const GlobalSystem& system, const DirichletBC& bc,
                    const Formulation& form) {
  const int n = static_cast<int>(system.f.size());
  if (static_cast<int>(bc.value.size()) < 3)
    throw std::runtime_error("solve: under-constrained system (fewer than 3 fixed DOFs)");

  std::vector<int> reduced(n, -1);
  std::vector<int> free_dofs;
  free_dofs.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (!bc.value.count(i)) {
      reduced[i] = static_cast<int>(free_dofs.size());
      free_dofs.push_back(i);
    }
  }

  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  for (const auto& [dof, v] : bc.value) {
    if (dof < 0 || dof >= n) throw std::runtime_error("solve: fixed DOF out of range");
    d(dof) = v;
  }

  const int nf = static_cast<int>(free_dofs.size());
  Eigen::VectorXd rhs(nf);
  for (int i = 0; i < nf; ++i) rhs(i) = system.f(free_dofs[i]);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(system.K.nonZeros());
  for (int col = 0; col < system.K.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.K, col); it; ++it) {
      const int ri = reduced[it.row()], ci = reduced[it.col()];
      if (ri >= 0 && ci >= 0) {
        trip.emplace_back(ri, ci, it.value());
      } else if (ri >= 0 && ci < 0) {
        rhs(ri) -= it.value() * d(it.col());
      }
    }
  }
  Eigen::SparseMatrix<double> Kff(nf, nf);
  Kff.setFromTriplets(trip.begin(), trip.end());

  FieldSolution sol;
  sol.formulation = form.kind;
  if (nf > 0) {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Kff);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("solve: factorization failed (under-constrained or unstable)");
    // A freed rigid or hourglass mode shows up as a collapsed pivot; the
    // backward-error gate below cannot see it (a singular system absorbs any
    // residual into an enormous solution), so reject it here.
    const auto& D = ldlt.vectorD();
    if (D.minCoeff() <= 1e-14 * D.maxCoeff())
      throw std::runtime_error("solve: factorization failed (under-constrained or unstable)");
    Eigen::VectorXd df = ldlt.solve(rhs);
    const double rhs_norm = rhs.norm() > 0 ? rhs.norm() : 1.0;
    Eigen::VectorXd resid = rhs - Kff * df;
    // One refinement pass recovers digits on stiff near-incompressible
    // systems before the backward error is judged.
    if (df.allFinite() && resid.norm() > 1e-13 * rhs_norm) {
      const Eigen::VectorXd corr = ldlt.solve(resid);
      const Eigen::VectorXd refined = df + corr;
      const Eigen::VectorXd r2 = rhs - Kff * refined;
      if (r2.norm() < resid.norm()) {
        df = refined;
        resid = r2;
      }
    }
    // Normwise backward error: small iff df exactly solves a system within
    // rounding distance of this one, the strongest property a direct solve
    // can promise regardless of conditioning.
    sol.residual = resid.norm() / (Kff.norm() * df.norm() + rhs_norm);
    if (!df.allFinite() || sol.residual > 1e-10)
      throw std::runtime_error("solve: residual check failed (relative residual " +
                               std::to_string(sol.residual) + ")");
    for (int i = 0; i < nf; ++i) d(free_dofs[i]) = df(i);
  }
  sol.d = d;

  sol.reactions = Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd r = system.K * d - system.f;
  for (const auto& [dof, v] : bc.value) sol.reactions(dof) = r(dof);

  sol.beta.reserve(system.elements.size());
  for (size_t e = 0; e < system.elements.size(); ++e) {
    const auto& op = system.elements[e];
    const auto& el = mesh.elements[e].nodes;
    Vector12d de;
    for (int i = 0; i < 6; ++i) {
      de(i) = d(dof_x(el[i]));
      de(6 + i) = d(dof_y(el[i]));
    }
    sol.beta.push_back(op.PiBeta * de + op.beta_const);
  }
  return sol;
}

Vec2 total_applied_load(const GlobalSystem& system, const DirichletBC&) {
  // Reactions balance the whole applied load, including any part assembled
  // into fixed DOFs: summing K d over a rigid translation gives zero, so
  // sum(reactions) = -sum(f).
  Vec2 t = Vec2::Zero();
  for (int i = 0; i < system.f.size(); ++i) t(i % 2) += system.f(i);
  return t;
}

Vec2 total_reaction(const FieldSolution& sol) {
  Vec2 t = Vec2::Zero();
  for (int i = 0; i < sol.reactions.size(); ++i) t(i % 2) += sol.reactions(i);
  return t;
}

}  // namespace vemh
