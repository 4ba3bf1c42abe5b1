#include "dgp/space.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "dgp/errors.hpp"

namespace dgp {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

}  // namespace

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree) {
  if (degree < 1)
    throw DgError(ErrorCategory::unsupported_degree, "basis degree must be >= 1");
  n_loc_ = (degree + 1) * (degree + 2) / 2;

  for (int j = 0; j <= degree; ++j)
    for (int i = 0; i <= degree - j; ++i) {
      nodes_.push_back({static_cast<double>(i) / degree, static_cast<double>(j) / degree});
      monomials_.emplace_back(i, j);
    }

  Eigen::MatrixXd vand(n_loc_, n_loc_);
  for (int i = 0; i < n_loc_; ++i)
    for (int k = 0; k < n_loc_; ++k)
      vand(i, k) = ipow(nodes_[i].x, monomials_[k].first) * ipow(nodes_[i].y, monomials_[k].second);

  // phi_i = sum_k coeffs[i][k] xi^a eta^b with V C^T = I.
  const Eigen::MatrixXd ct = vand.partialPivLu().solve(Eigen::MatrixXd::Identity(n_loc_, n_loc_));
  coeffs_.resize(static_cast<size_t>(n_loc_) * n_loc_);
  for (int i = 0; i < n_loc_; ++i)
    for (int k = 0; k < n_loc_; ++k) coeffs_[static_cast<size_t>(i) * n_loc_ + k] = ct(k, i);
}

void ReferenceBasis::eval(double xi, double eta, double* out) const {
  std::vector<double> mono(n_loc_);
  for (int k = 0; k < n_loc_; ++k)
    mono[k] = ipow(xi, monomials_[k].first) * ipow(eta, monomials_[k].second);
  for (int i = 0; i < n_loc_; ++i) {
    double s = 0.0;
    for (int k = 0; k < n_loc_; ++k) s += coeffs_[static_cast<size_t>(i) * n_loc_ + k] * mono[k];
    out[i] = s;
  }
}

void ReferenceBasis::eval_grad(double xi, double eta, Point2* out) const {
  std::vector<Point2> dm(n_loc_);
  for (int k = 0; k < n_loc_; ++k) {
    const auto [a, b] = monomials_[k];
    dm[k].x = a == 0 ? 0.0 : a * ipow(xi, a - 1) * ipow(eta, b);
    dm[k].y = b == 0 ? 0.0 : b * ipow(xi, a) * ipow(eta, b - 1);
  }
  for (int i = 0; i < n_loc_; ++i) {
    Point2 g{0.0, 0.0};
    for (int k = 0; k < n_loc_; ++k) {
      const double c = coeffs_[static_cast<size_t>(i) * n_loc_ + k];
      g.x += c * dm[k].x;
      g.y += c * dm[k].y;
    }
    out[i] = g;
  }
}

std::vector<double> ReferenceBasis::eval(double xi, double eta) const {
  std::vector<double> out(n_loc_);
  eval(xi, eta, out.data());
  return out;
}

std::vector<Point2> ReferenceBasis::eval_grad(double xi, double eta) const {
  std::vector<Point2> out(n_loc_);
  eval_grad(xi, eta, out.data());
  return out;
}

ReferenceBasis make_basis(int r) { return ReferenceBasis(r); }

DgSpace make_space(const Mesh& m, int r) {
  ReferenceBasis basis(r);
  DofMap dofs{basis.n_loc(), m.n_triangles(), basis.n_loc() * m.n_triangles()};
  return {std::move(basis), dofs};
}

ElementMap element_map(const Mesh& m, int t) {
  const auto& v = m.triangles[t].v;
  const Point2 p0 = m.vertices[v[0]], p1 = m.vertices[v[1]], p2 = m.vertices[v[2]];
  ElementMap em;
  em.origin = p0;
  em.j[0][0] = p1.x - p0.x;
  em.j[0][1] = p2.x - p0.x;
  em.j[1][0] = p1.y - p0.y;
  em.j[1][1] = p2.y - p0.y;
  em.det = em.j[0][0] * em.j[1][1] - em.j[0][1] * em.j[1][0];
  if (em.det <= 0.0)
    throw DgError(ErrorCategory::degenerate_triangle, "non-invertible element map");
  // (J^{-1})^T
  em.inv_jt[0][0] = em.j[1][1] / em.det;
  em.inv_jt[0][1] = -em.j[1][0] / em.det;
  em.inv_jt[1][0] = -em.j[0][1] / em.det;
  em.inv_jt[1][1] = em.j[0][0] / em.det;
  return em;
}

Point2 ElementMap::to_reference(Point2 p) const {
  const double dx = p.x - origin.x, dy = p.y - origin.y;
  // J^{-1} rows are inv_jt columns.
  return {inv_jt[0][0] * dx + inv_jt[1][0] * dy, inv_jt[0][1] * dx + inv_jt[1][1] * dy};
}

namespace {

Point2 checked_reference_point(const Mesh& m, int t, Point2 p) {
  const ElementMap em = element_map(m, t);
  const Point2 r = em.to_reference(p);
  const double tol = 1e-12;
  if (r.x < -tol || r.y < -tol || r.x + r.y > 1.0 + tol)
    throw DgError(ErrorCategory::invalid_argument, "point outside element closure");
  return r;
}

}  // namespace

double eval_on_element(const Mesh& m, int t, const DgSpace& space,
                       const std::vector<double>& coeffs, Point2 p) {
  const Point2 r = checked_reference_point(m, t, p);
  const auto phi = space.basis.eval(r.x, r.y);
  double s = 0.0;
  for (int i = 0; i < space.dofs.n_loc; ++i) s += coeffs[space.dofs.global(t, i)] * phi[i];
  return s;
}

Point2 eval_grad_on_element(const Mesh& m, int t, const DgSpace& space,
                            const std::vector<double>& coeffs, Point2 p) {
  const Point2 r = checked_reference_point(m, t, p);
  const ElementMap em = element_map(m, t);
  const auto dphi = space.basis.eval_grad(r.x, r.y);
  Point2 g{0.0, 0.0};
  for (int i = 0; i < space.dofs.n_loc; ++i) {
    const double c = coeffs[space.dofs.global(t, i)];
    const Point2 pg = em.push_gradient(dphi[i]);
    g.x += c * pg.x;
    g.y += c * pg.y;
  }
  return g;
}

std::vector<double> interpolate(const Mesh& m, const DgSpace& space, const ScalarField& field) {
  std::vector<double> coeffs(space.dofs.total_dofs);
  for (int t = 0; t < m.n_triangles(); ++t) {
    const ElementMap em = element_map(m, t);
    for (int i = 0; i < space.dofs.n_loc; ++i) {
      const Point2 p = em.to_physical(space.basis.nodes()[i].x, space.basis.nodes()[i].y);
      coeffs[space.dofs.global(t, i)] = field.value(p.x, p.y);
    }
  }
  return coeffs;
}

}  // namespace dgp
