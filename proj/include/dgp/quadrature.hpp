#pragma once

#include <vector>

namespace dgp {

// Quadrature point on the reference triangle {(xi,eta): xi,eta >= 0, xi+eta <= 1},
// stored in barycentric form; (xi, eta) = (b1, b2).
struct TriQuadPoint {
  double b0, b1, b2;
  double w;
  double xi() const { return b1; }
  double eta() const { return b2; }
};

struct QuadRuleTri {
  int degree = 0;  // exactness degree
  std::vector<TriQuadPoint> points;
};

// 1D Gauss rule on [0,1]; weights sum to 1.
struct EdgeQuadPoint {
  double t, w;
};

struct QuadRuleEdge {
  int degree = 0;
  std::vector<EdgeQuadPoint> points;
};

// Gauss-Legendre nodes/weights on [0,1], m points (exact to degree 2m-1).
std::vector<EdgeQuadPoint> gauss_legendre_01(int m);

// Collapsed (Duffy) tensor Gauss rule on the reference triangle. All weights
// positive; exact for total degree <= d. Supported range d in [0, 10].
QuadRuleTri make_quad_tri(int d);

QuadRuleEdge make_quad_edge(int d);

}  // namespace dgp
