#include "vemh/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vemh {

std::array<Vec2, 6> scan_triangle(double g1, double g2) {
  const Vec2 v0(-1.0, 0.0), v1(1.0, 0.0), v2(g1, g2);
  return {v0, 0.5 * (v0 + v1), v1, 0.5 * (v1 + v2), v2, 0.5 * (v2 + v0)};
}

Eigen::VectorXd element_eigenvalues(std::span<const Vec2, 6> pts, const Formulation& form,
                                    const MaterialLaw& law) {
  Mesh mesh;
  mesh.nodes.assign(pts.begin(), pts.end());
  mesh.elements.push_back({{0, 1, 2, 3, 4, 5}});
  const ElementOperators op = build_element(mesh, 0, form, law);
  Eigen::SelfAdjointEigenSolver<Matrix12d> es(op.K);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("element_eigenvalues: eigensolve failed");
  return es.eigenvalues();
}

std::vector<EigenScanRow> eigen_scan(const Formulation& form, const MaterialLaw& law, int res) {
  if (res < 2) throw std::invalid_argument("eigen_scan: res >= 2");
  const double g1_min = -10.0, g1_max = 10.0, g2_min = 0.05, g2_max = 10.0;
  std::vector<EigenScanRow> rows;
  rows.reserve(res * res);
  for (int j = 0; j < res; ++j) {
    const double g2 = g2_min + (g2_max - g2_min) * j / (res - 1);
    for (int i = 0; i < res; ++i) {
      const double g1 = g1_min + (g1_max - g1_min) * i / (res - 1);
      const auto pts = scan_triangle(g1, g2);
      const auto eig = element_eigenvalues(std::span<const Vec2, 6>(pts.data(), 6), form, law);
      rows.push_back({g1, g2, eig(3)});
    }
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void write_eigen_scan_csv(const std::vector<EigenScanRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_eigen_scan_csv: cannot open " + path);
  out << "g1,g2,eig4\n";
  for (const auto& r : rows) out << fmt(r.g1) << "," << fmt(r.g2) << "," << fmt(r.eig4) << "\n";
}

ErrorRow error_norms(const Mesh& mesh, const GlobalSystem& system, const FieldSolution& sol,
                     const MaterialLaw& law, const ExactFields& exact, HydroMode hydro_mode) {
  if (!exact.u || !exact.sigma) throw std::invalid_argument("error_norms: exact fields required");
  ErrorRow row;
  row.n_dofs = static_cast<int>(sol.d.size());
  double e_disp = 0, n_disp = 0, e_energy = 0, n_energy = 0, e_hydro = 0, n_hydro = 0;

  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto& op = system.elements[e];
    row.h = std::max(row.h, op.geom.diameter);
    const auto pts = mesh.element_points(e);
    const std::span<const Vec2, 6> poly(pts.data(), 6);
    const PolygonRule rule = polygon_rule(poly, 8);

    const auto& el = mesh.elements[e].nodes;
    Vector12d de;
    for (int i = 0; i < 6; ++i) {
      de(i) = sol.d(dof_x(el[i]));
      de(6 + i) = sol.d(dof_y(el[i]));
    }
    const Eigen::Matrix<double, 6, 1> pi = op.PiEps * de;  // projected monomial coefficients
    const Eigen::VectorXd& beta = sol.beta[e];

    // Element-average recovered hydrostatic stress, if requested.
    double p_avg = 0;
    if (hydro_mode == HydroMode::ElementAverage) {
      for (const auto& qp : rule.points)
        p_avg += qp.w * hydrostatic_from_voigt(law, op.basis.eval(op.geom, qp.x) * beta);
      p_avg /= op.geom.area;
    }

    for (const auto& qp : rule.points) {
      const Vec2 uh = eval_monomials(op.geom, qp.x) * pi;
      const Vec2 uex = exact.u(qp.x);
      e_disp += qp.w * (uex - uh).squaredNorm();
      n_disp += qp.w * uex.squaredNorm();

      const Eigen::Vector3d sh = op.basis.eval(op.geom, qp.x) * beta;
      const Eigen::Vector3d sex = exact.sigma(qp.x);
      const Eigen::Vector3d ds = sex - sh;
      e_energy += qp.w * ds.dot(law.Cinv * ds);
      n_energy += qp.w * sex.dot(law.Cinv * sex);

      const double ph = hydro_mode == HydroMode::ElementAverage
                            ? p_avg
                            : hydrostatic_from_voigt(law, sh);
      const double pex = hydrostatic_from_voigt(law, sex);
      e_hydro += qp.w * (pex - ph) * (pex - ph);
      n_hydro += qp.w * pex * pex;
    }
  }
  row.l2_disp = std::sqrt(e_disp);
  row.energy = std::sqrt(e_energy);
  row.l2_hydro = std::sqrt(e_hydro);
  row.l2_disp_exact = std::sqrt(n_disp);
  row.energy_exact = std::sqrt(n_energy);
  row.l2_hydro_exact = std::sqrt(n_hydro);
  return row;
}

void write_error_csv(const std::vector<ErrorRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_error_csv: cannot open " + path);
  out << "mesh_id,h,n_dofs,l2_disp,energy,l2_hydro\n";
  for (const auto& r : rows) {
    out << r.mesh_id << "," << fmt(r.h) << "," << r.n_dofs << "," << fmt(r.l2_disp) << ","
        << fmt(r.energy) << "," << fmt(r.l2_hydro) << "\n";
  }
}

double fit_rate(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2)
    throw std::invalid_argument("fit_rate: need matching h/err with at least 2 levels");
  size_t first = h.size() >= 4 ? 1 : 0;  // drop the coarsest level when there is slack
  // h is expected coarse-to-fine; identify the coarsest by value instead of order.
  std::vector<size_t> idx(h.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return h[a] > h[b]; });
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t r = first; r < idx.size(); ++r) {
    const double hi = h[idx[r]], ei = err[idx[r]];
    if (!(hi > 0) || !(ei > 0)) throw std::invalid_argument("fit_rate: h and err must be positive");
    const double x = std::log(hi), y = std::log(ei);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) throw std::invalid_argument("fit_rate: degenerate h sequence");
  return (n * sxy - sx * sy) / denom;
}

std::vector<RecoveredElement> recover_fields(const Mesh& mesh, const GlobalSystem& system,
                                             const FieldSolution& sol, const MaterialLaw& law) {
  std::vector<RecoveredElement> out(mesh.n_elements());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto& op = system.elements[e];
    const auto pts = mesh.element_points(e);
    const std::span<const Vec2, 6> poly(pts.data(), 6);
    const PolygonRule rule = polygon_rule(poly, 8);
    RecoveredElement rec;
    rec.sigma_centroid = op.basis.eval(op.geom, op.geom.centroid) * sol.beta[e];
    for (const auto& qp : rule.points) {
      const Eigen::Vector3d s = op.basis.eval(op.geom, qp.x) * sol.beta[e];
      rec.p_tilde += qp.w * hydrostatic_from_voigt(law, s);
      const Eigen::Vector3d eps = law.Cinv * s;
      rec.trace_strain += qp.w * (eps(0) + eps(1));
    }
    rec.p_tilde /= op.geom.area;
    rec.trace_strain /= op.geom.area;
    out[e] = rec;
  }
  return out;
}

std::vector<Eigen::VectorXd> inject_exact_stress(const Mesh& mesh, const StressBasis& basis,
                                                 const MaterialLaw& law,
                                                 const StressVoigtField& sigma) {
  std::vector<Eigen::VectorXd> betas;
  betas.reserve(mesh.n_elements());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto pts = mesh.element_points(e);
    const std::span<const Vec2, 6> poly(pts.data(), 6);
    const ElementGeometry geom = element_geometry(poly);
    const PolygonRule rule = polygon_rule(poly, 8);
    const Eigen::MatrixXd H = compute_H(basis, geom, law, rule);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.size());
    for (const auto& qp : rule.points) {
      const Eigen::MatrixXd P = basis.eval(geom, qp.x);
      rhs.noalias() += qp.w * P.transpose() * (law.Cinv * sigma(qp.x));
    }
    betas.push_back(Eigen::LDLT<Eigen::MatrixXd>(H).solve(rhs));
  }
  return betas;
}

}  // namespace vemh
