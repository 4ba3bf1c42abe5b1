#include "dgp/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "dgp/errors.hpp"

namespace dgp {

std::vector<double> SystemMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += vals[k] * x[col_idx[k]];
    y[i] = s;
  }
  return y;
}

double SystemMatrix::max_abs() const {
  double m = 0.0;
  for (double v : vals) m = std::max(m, std::abs(v));
  return m;
}

double SystemMatrix::symmetry_gap() const {
  double gap = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      const int j = col_idx[k];
      // Binary search for A_ji within row j.
      const int* begin = col_idx.data() + row_ptr[j];
      const int* end = col_idx.data() + row_ptr[j + 1];
      const int* pos = std::lower_bound(begin, end, i);
      const double aji = (pos != end && *pos == i) ? vals[pos - col_idx.data()] : 0.0;
      gap = std::max(gap, std::abs(vals[k] - aji));
    }
  return gap;
}

void write_triplets(const SystemMatrix& a, std::ostream& out) {
  char buf[96];
  for (int i = 0; i < a.n; ++i)
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, a.col_idx[k], a.vals[k]);
      out << buf;
    }
}

namespace {

// CSR skeleton from the element adjacency: each element couples with itself
// and its edge neighbors.
SystemMatrix make_skeleton(const Mesh& m, const DofMap& dofs) {
  const int n_loc = dofs.n_loc;
  std::vector<std::vector<int>> nbrs(m.n_triangles());
  for (int t = 0; t < m.n_triangles(); ++t) nbrs[t].push_back(t);
  for (const auto& e : m.edges)
    if (e.kind == EdgeKind::interior) {
      nbrs[e.elems[0]].push_back(e.elems[1]);
      nbrs[e.elems[1]].push_back(e.elems[0]);
    }
  for (auto& v : nbrs) std::sort(v.begin(), v.end());

  SystemMatrix a;
  a.n = dofs.total_dofs;
  a.row_ptr.assign(a.n + 1, 0);
  for (int t = 0; t < m.n_triangles(); ++t)
    for (int l = 0; l < n_loc; ++l)
      a.row_ptr[dofs.global(t, l) + 1] = static_cast<int>(nbrs[t].size()) * n_loc;
  for (int i = 0; i < a.n; ++i) a.row_ptr[i + 1] += a.row_ptr[i];

  a.col_idx.resize(a.row_ptr[a.n]);
  a.vals.assign(a.row_ptr[a.n], 0.0);
  for (int t = 0; t < m.n_triangles(); ++t)
    for (int l = 0; l < n_loc; ++l) {
      int k = a.row_ptr[dofs.global(t, l)];
      for (int nb : nbrs[t])
        for (int j = 0; j < n_loc; ++j) a.col_idx[k++] = dofs.global(nb, j);
    }
  return a;
}

void add_entry(SystemMatrix& a, int i, int j, double v) {
  const int* begin = a.col_idx.data() + a.row_ptr[i];
  const int* end = a.col_idx.data() + a.row_ptr[i + 1];
  const int* pos = std::lower_bound(begin, end, j);
  a.vals[pos - a.col_idx.data()] += v;
}

struct SideEval {
  int elem;
  std::vector<double> phi;    // [q * n_loc + i]
  std::vector<Point2> grad;   // physical gradients, same layout
};

// Basis traces of one element along an edge's quadrature points.
SideEval evaluate_side(const Mesh& m, const DgSpace& space, int elem,
                       const std::vector<Point2>& pts) {
  const int n_loc = space.dofs.n_loc;
  const ElementMap em = element_map(m, elem);
  SideEval s;
  s.elem = elem;
  s.phi.resize(pts.size() * n_loc);
  s.grad.resize(pts.size() * n_loc);
  std::vector<double> phi(n_loc);
  std::vector<Point2> dphi(n_loc);
  for (size_t q = 0; q < pts.size(); ++q) {
    const Point2 r = em.to_reference(pts[q]);
    space.basis.eval(r.x, r.y, phi.data());
    space.basis.eval_grad(r.x, r.y, dphi.data());
    for (int i = 0; i < n_loc; ++i) {
      s.phi[q * n_loc + i] = phi[i];
      s.grad[q * n_loc + i] = em.push_gradient(dphi[i]);
    }
  }
  return s;
}

std::vector<Point2> edge_points(const Mesh& m, const Edge& e, const QuadRuleEdge& rule) {
  const Point2 p0 = m.vertices[e.v[0]], p1 = m.vertices[e.v[1]];
  std::vector<Point2> pts(rule.points.size());
  for (size_t q = 0; q < rule.points.size(); ++q)
    pts[q] = p0 + rule.points[q].t * (p1 - p0);
  return pts;
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0))
    throw DgError(ErrorCategory::penalty_parameter, "penalty parameter sigma must be positive");
}

}  // namespace

SystemMatrix assemble_matrix(const Mesh& m, const DgSpace& space, double sigma) {
  check_sigma(sigma);
  const int r = space.basis.degree();
  const int n_loc = space.dofs.n_loc;
  SystemMatrix a = make_skeleton(m, space.dofs);

  // Volume term: grad u . grad v, elementwise.
  const QuadRuleTri tri_rule = make_quad_tri(2 * r);
  const size_t nq = tri_rule.points.size();
  std::vector<Point2> ref_grad(nq * n_loc);
  for (size_t q = 0; q < nq; ++q)
    space.basis.eval_grad(tri_rule.points[q].xi(), tri_rule.points[q].eta(),
                          ref_grad.data() + q * n_loc);

  std::vector<Point2> pg(n_loc);
  for (int t = 0; t < m.n_triangles(); ++t) {
    const ElementMap em = element_map(m, t);
    std::vector<double> local(static_cast<size_t>(n_loc) * n_loc, 0.0);
    for (size_t q = 0; q < nq; ++q) {
      const double w = tri_rule.points[q].w * em.det;
      for (int i = 0; i < n_loc; ++i) pg[i] = em.push_gradient(ref_grad[q * n_loc + i]);
      for (int i = 0; i < n_loc; ++i)
        for (int j = 0; j < n_loc; ++j)
          local[static_cast<size_t>(i) * n_loc + j] += w * dot(pg[i], pg[j]);
    }
    for (int i = 0; i < n_loc; ++i)
      for (int j = 0; j < n_loc; ++j)
        add_entry(a, space.dofs.global(t, i), space.dofs.global(t, j),
                  local[static_cast<size_t>(i) * n_loc + j]);
  }

  // Edge terms. For each edge build the scalar jump operator J and the
  // normal-mean operator G over the stacked local dofs, then write
  // -(B + B^T) + sigma/h_e P with B = G^T W J and P = J^T W J, which is
  // numerically symmetric term by term.
  const QuadRuleEdge edge_rule = make_quad_edge(2 * r + 2);
  const size_t nqe = edge_rule.points.size();
  for (const auto& e : m.edges) {
    const auto pts = edge_points(m, e, edge_rule);
    const bool interior = e.kind == EdgeKind::interior;
    const int n_sides = interior ? 2 : 1;
    const int dim = n_sides * n_loc;

    std::vector<SideEval> sides;
    sides.push_back(evaluate_side(m, space, e.elems[0], pts));
    if (interior) sides.push_back(evaluate_side(m, space, e.elems[1], pts));

    // J[q][a]: jump trace; G[q][a]: {grad}.n trace.
    std::vector<double> jop(nqe * dim), gop(nqe * dim);
    const double mean_factor = interior ? 0.5 : 1.0;
    for (size_t q = 0; q < nqe; ++q)
      for (int s = 0; s < n_sides; ++s) {
        const double jump_sign = s == 0 ? 1.0 : -1.0;
        for (int i = 0; i < n_loc; ++i) {
          const int aidx = s * n_loc + i;
          jop[q * dim + aidx] = jump_sign * sides[s].phi[q * n_loc + i];
          gop[q * dim + aidx] = mean_factor * dot(sides[s].grad[q * n_loc + i], e.normal);
        }
      }

    std::vector<double> bmat(static_cast<size_t>(dim) * dim, 0.0);
    std::vector<double> pmat(static_cast<size_t>(dim) * dim, 0.0);
    for (size_t q = 0; q < nqe; ++q) {
      const double w = edge_rule.points[q].w * e.length;
      for (int ai = 0; ai < dim; ++ai) {
        const double ga = gop[q * dim + ai];
        const double ja = jop[q * dim + ai];
        for (int bi = 0; bi < dim; ++bi) {
          const double jb = jop[q * dim + bi];
          bmat[static_cast<size_t>(ai) * dim + bi] += w * ga * jb;
          // w * (ja * jb): the product commutes, so the transposed entry
          // rounds identically.
          pmat[static_cast<size_t>(ai) * dim + bi] += w * (ja * jb);
        }
      }
    }

    auto global_of = [&](int aidx) {
      return space.dofs.global(sides[aidx / n_loc].elem, aidx % n_loc);
    };
    const double pen = sigma / e.h_e;
    for (int ai = 0; ai < dim; ++ai)
      for (int bi = 0; bi < dim; ++bi) {
        // Row = test index ai, column = trial index bi.
        const double v = -(bmat[static_cast<size_t>(ai) * dim + bi] +
                           bmat[static_cast<size_t>(bi) * dim + ai]) +
                         pen * pmat[static_cast<size_t>(ai) * dim + bi];
        add_entry(a, global_of(ai), global_of(bi), v);
      }
  }
  return a;
}

std::vector<double> assemble_rhs(const Mesh& m, const DgSpace& space, const ScalarField& f,
                                 const ScalarField& g, double sigma) {
  check_sigma(sigma);
  const int r = space.basis.degree();
  const int n_loc = space.dofs.n_loc;
  std::vector<double> b(space.dofs.total_dofs, 0.0);

  // Volume load with a rule a few degrees above the space, for
  // non-polynomial f.
  const QuadRuleTri tri_rule = make_quad_tri(std::min(2 * r + 4, 10));
  const size_t nq = tri_rule.points.size();
  std::vector<double> phi(nq * n_loc);
  for (size_t q = 0; q < nq; ++q)
    space.basis.eval(tri_rule.points[q].xi(), tri_rule.points[q].eta(), phi.data() + q * n_loc);

  for (int t = 0; t < m.n_triangles(); ++t) {
    const ElementMap em = element_map(m, t);
    for (size_t q = 0; q < nq; ++q) {
      const Point2 p = em.to_physical(tri_rule.points[q].xi(), tri_rule.points[q].eta());
      const double w = tri_rule.points[q].w * em.det * f.value(p.x, p.y);
      for (int i = 0; i < n_loc; ++i) b[space.dofs.global(t, i)] += w * phi[q * n_loc + i];
    }
  }

  // Nitsche boundary data: g (sigma/h_e v - grad v . n) on boundary edges.
  const QuadRuleEdge edge_rule = make_quad_edge(2 * r + 2);
  for (const auto& e : m.edges) {
    if (e.kind != EdgeKind::boundary) continue;
    const auto pts = edge_points(m, e, edge_rule);
    const SideEval side = evaluate_side(m, space, e.elems[0], pts);
    for (size_t q = 0; q < pts.size(); ++q) {
      const double w = edge_rule.points[q].w * e.length * g.value(pts[q].x, pts[q].y);
      for (int i = 0; i < n_loc; ++i) {
        const double v = sigma / e.h_e * side.phi[q * n_loc + i] -
                         dot(side.grad[q * n_loc + i], e.normal);
        b[space.dofs.global(e.elems[0], i)] += w * v;
      }
    }
  }
  return b;
}

EdgeTrace edge_traces(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                      int edge, const QuadRuleEdge& rule) {
  const Edge& e = m.edges[edge];
  const int n_loc = space.dofs.n_loc;
  EdgeTrace trace;
  trace.points = edge_points(m, e, rule);
  trace.weights.resize(rule.points.size());
  for (size_t q = 0; q < rule.points.size(); ++q)
    trace.weights[q] = rule.points[q].w * e.length;

  const int n_sides = e.kind == EdgeKind::interior ? 2 : 1;
  for (int s = 0; s < n_sides; ++s) {
    const SideEval side = evaluate_side(m, space, e.elems[s], trace.points);
    auto& vals = s == 0 ? trace.v1 : trace.v2;
    auto& grads = s == 0 ? trace.g1 : trace.g2;
    vals.assign(trace.points.size(), 0.0);
    grads.assign(trace.points.size(), Point2{0.0, 0.0});
    for (size_t q = 0; q < trace.points.size(); ++q)
      for (int i = 0; i < n_loc; ++i) {
        const double c = coeffs[space.dofs.global(e.elems[s], i)];
        vals[q] += c * side.phi[q * n_loc + i];
        grads[q].x += c * side.grad[q * n_loc + i].x;
        grads[q].y += c * side.grad[q * n_loc + i].y;
      }
  }
  return trace;
}

JumpMean jump_mean(const EdgeTrace& trace, const Edge& e) {
  const size_t nq = trace.v1.size();
  JumpMean jm;
  jm.jump.resize(nq);
  jm.mean.resize(nq);
  jm.grad_jump.resize(nq);
  jm.grad_mean.resize(nq);
  const bool interior = e.kind == EdgeKind::interior;
  for (size_t q = 0; q < nq; ++q) {
    if (interior) {
      // n1 is the stored normal, n2 = -n1.
      jm.jump[q] = (trace.v1[q] - trace.v2[q]) * e.normal;
      jm.mean[q] = 0.5 * (trace.v1[q] + trace.v2[q]);
      jm.grad_jump[q] = dot(trace.g1[q] - trace.g2[q], e.normal);
      jm.grad_mean[q] = 0.5 * (trace.g1[q] + trace.g2[q]);
    } else {
      jm.jump[q] = trace.v1[q] * e.normal;
      jm.mean[q] = trace.v1[q];
      jm.grad_jump[q] = dot(trace.g1[q], e.normal);
      jm.grad_mean[q] = trace.g1[q];
    }
  }
  return jm;
}

double residual_consistency_check(const Mesh& m, const DgSpace& space, const ScalarField& u_exact,
                                  const ScalarField& f, const ScalarField& g, double sigma) {
  const SystemMatrix a = assemble_matrix(m, space, sigma);
  const std::vector<double> b = assemble_rhs(m, space, f, g, sigma);
  const std::vector<double> coeffs = interpolate(m, space, u_exact);
  const std::vector<double> au = a.multiply(coeffs);
  double res = 0.0;
  for (int i = 0; i < a.n; ++i) res = std::max(res, std::abs(au[i] - b[i]));
  return res;
}

}  // namespace dgp
