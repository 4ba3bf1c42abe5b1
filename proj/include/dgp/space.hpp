#pragma once

#include <vector>

#include "dgp/field.hpp"
#include "dgp/mesh.hpp"

namespace dgp {

// Nodal Lagrange basis of degree r on the reference triangle
// {(xi,eta): xi,eta >= 0, xi+eta <= 1}, nodes at the uniform degree-r lattice.
class ReferenceBasis {
public:
  explicit ReferenceBasis(int degree);

  int degree() const { return degree_; }
  int n_loc() const { return n_loc_; }
  const std::vector<Point2>& nodes() const { return nodes_; }

  // Basis values / reference gradients at (xi,eta); out has n_loc entries.
  void eval(double xi, double eta, double* out) const;
  void eval_grad(double xi, double eta, Point2* out) const;

  std::vector<double> eval(double xi, double eta) const;
  std::vector<Point2> eval_grad(double xi, double eta) const;

private:
  int degree_;
  int n_loc_;
  std::vector<Point2> nodes_;
  std::vector<std::pair<int, int>> monomials_;  // (a,b) exponents of xi^a eta^b
  std::vector<double> coeffs_;                  // row i: monomial coefficients of phi_i
};

// Global discontinuous DOF numbering: global = element * n_loc + local.
struct DofMap {
  int n_loc = 0;
  int n_elems = 0;
  int total_dofs = 0;

  int global(int elem, int local) const { return elem * n_loc + local; }
  std::pair<int, int> split(int g) const { return {g / n_loc, g % n_loc}; }
};

struct DgSpace {
  ReferenceBasis basis;
  DofMap dofs;
};

ReferenceBasis make_basis(int r);
DgSpace make_space(const Mesh& m, int r);

// Affine map between the reference triangle and element t.
struct ElementMap {
  Point2 origin;      // image of (0,0)
  double j[2][2];     // columns: images of the reference axes
  double inv_jt[2][2];
  double det;

  Point2 to_physical(double xi, double eta) const {
    return {origin.x + j[0][0] * xi + j[0][1] * eta, origin.y + j[1][0] * xi + j[1][1] * eta};
  }
  Point2 to_reference(Point2 p) const;
  // Maps a reference gradient to a physical one (inverse-transpose Jacobian).
  Point2 push_gradient(Point2 ref_grad) const {
    return {inv_jt[0][0] * ref_grad.x + inv_jt[0][1] * ref_grad.y,
            inv_jt[1][0] * ref_grad.x + inv_jt[1][1] * ref_grad.y};
  }
};

ElementMap element_map(const Mesh& m, int t);

// Point evaluation of a discrete function on element t. The point must lie in
// the closure of the element (barycentric tolerance 1e-12).
double eval_on_element(const Mesh& m, int t, const DgSpace& space,
                       const std::vector<double>& coeffs, Point2 p);
Point2 eval_grad_on_element(const Mesh& m, int t, const DgSpace& space,
                            const std::vector<double>& coeffs, Point2 p);

// Lagrange interpolant: coefficient = field value at each mapped nodal point.
std::vector<double> interpolate(const Mesh& m, const DgSpace& space, const ScalarField& field);

}  // namespace dgp
