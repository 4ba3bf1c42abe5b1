#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dgp/field.hpp"
#include "dgp/mesh.hpp"
#include "dgp/space.hpp"

namespace dgp {

// Closed axis-aligned rectangle; the only subdomain shape with exact
// element/edge clipping.
struct Rect {
  double x0, y0, x1, y1;
  bool contains(Point2 p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

// Elementwise function with one-sided values and gradients, the common
// currency of the norm routines. Points passed in always lie in the closure
// of the named element.
struct BrokenFunction {
  std::function<double(int elem, Point2 p)> value;
  std::function<Point2(int elem, Point2 p)> gradient;
};

// Views a DG coefficient vector as a BrokenFunction. The returned closures
// reference the arguments; keep them alive.
BrokenFunction discrete_function(const Mesh& m, const DgSpace& space,
                                 const std::vector<double>& coeffs);

// exact - u_h, for error norms.
BrokenFunction error_function(const Mesh& m, const DgSpace& space,
                              const std::vector<double>& coeffs, const ScalarField& exact);

// The V^p norm pieces: elementwise W^{1,p} part, h_e^{1-p}-scaled jump terms
// split by edge kind, and the h_e-scaled mean-gradient term. For finite p the
// fields hold p-th powers; for p = infinity they hold the three maxima.
struct VpParts {
  double volume = 0.0;
  double jump_interior = 0.0;
  double jump_boundary = 0.0;
  double grad_mean = 0.0;
};

constexpr double p_infinity = -1.0;  // sentinel accepted anywhere a p is taken

VpParts norm_vp_parts(const Mesh& m, const DgSpace& space, const BrokenFunction& fn, double p,
                      const Rect* subdomain = nullptr);

double norm_vp(const Mesh& m, const DgSpace& space, const BrokenFunction& fn, double p,
               const Rect* subdomain = nullptr);
double norm_vp(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs, double p,
               const Rect* subdomain = nullptr);

double error_l2(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                const ScalarField& exact);
// Broken H^1 seminorm of the error.
double error_broken_h1(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                       const ScalarField& exact);
double error_v2(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                const ScalarField& exact);

// Max of |u_h - exact| (|u_h| when exact is null) over the sampling set: a
// barycentric lattice of the given resolution per triangle plus all volume
// and edge quadrature points, one-sided from each adjacent element,
// restricted to the subdomain when given.
double error_linf(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                  const ScalarField* exact = nullptr, const Rect* subdomain = nullptr,
                  int lattice_res = 20);

struct Extrema {
  double min_value;
  double max_value;
};

Extrema global_extrema(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                       int lattice_res = 20);
// Extrema of the one-sided trace over boundary-edge sample points; the sample
// set is a subset of the global one, so agreement of the two is exact when
// the extremum sits on the boundary.
Extrema boundary_extrema(const Mesh& m, const DgSpace& space, const std::vector<double>& coeffs,
                         int lattice_res = 20);

struct ErrorReport {
  double l2 = 0.0;
  double broken_h1 = 0.0;
  double v2 = 0.0;
  double linf = 0.0;
  double linf_boundary = 0.0;
  std::optional<double> linf_subdomain;
  double h = 0.0;
  int dofs = 0;
};

ErrorReport compute_error_report(const Mesh& m, const DgSpace& space,
                                 const std::vector<double>& coeffs, const ScalarField& exact,
                                 const Rect* subdomain = nullptr, int lattice_res = 20);

}  // namespace dgp
