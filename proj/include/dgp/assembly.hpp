#pragma once

#include <iosfwd>
#include <vector>

#include "dgp/field.hpp"
#include "dgp/mesh.hpp"
#include "dgp/quadrature.hpp"
#include "dgp/space.hpp"

namespace dgp {

// Sparse symmetric operator in compressed-row form with sorted column
// indices. Assembled entries are numerically symmetric by construction: both
// members of each symmetric term pair are written from the same intermediate
// products.
struct SystemMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> vals;

  std::vector<double> multiply(const std::vector<double>& x) const;
  double max_abs() const;
  double symmetry_gap() const;  // max_ij |A_ij - A_ji|
};

// Plain-text triplet export, one `i j value` line per stored entry.
void write_triplets(const SystemMatrix& a, std::ostream& out);

// SIPDG bilinear form: volume gradients, consistency terms -({grad u}.[[v]] +
// {grad v}.[[u]]) over all edges, and the sigma/h_e jump penalty. Boundary
// edges use the single-sided trace conventions.
SystemMatrix assemble_matrix(const Mesh& m, const DgSpace& space, double sigma);

// F(v) = (f,v) + sum over boundary edges of (g, sigma/h_e v - grad v . n).
std::vector<double> assemble_rhs(const Mesh& m, const DgSpace& space, const ScalarField& f,
                                 const ScalarField& g, double sigma);

// One-sided traces of a discrete function at edge quadrature points; side 2
// is empty on boundary edges.
struct EdgeTrace {
  std::vector<Point2> points;   // physical quadrature points
  std::vector<double> weights;  // arc-length weights (Gauss weight * |e|)
  std::vector<double> v1, v2;
  std::vector<Point2> g1, g2;
};

EdgeTrace edge_traces(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                      int edge, const QuadRuleEdge& rule);

// Jump/mean combinations at the trace points using the edge's stored normal.
struct JumpMean {
  std::vector<Point2> jump;       // [[v]] = v1 n1 + v2 n2; v n on the boundary
  std::vector<double> mean;       // {v}
  std::vector<double> grad_jump;  // [[grad v]]
  std::vector<Point2> grad_mean;  // {grad v}
};

JumpMean jump_mean(const EdgeTrace& trace, const Edge& e);

// max_i |a(I_r u, phi_i) - F(phi_i)| for the degree-r interpolant I_r u.
// Zero (to rounding) exactly when u is a global polynomial of degree <= r.
double residual_consistency_check(const Mesh& m, const DgSpace& space, const ScalarField& u_exact,
                                  const ScalarField& f, const ScalarField& g, double sigma);

}  // namespace dgp
