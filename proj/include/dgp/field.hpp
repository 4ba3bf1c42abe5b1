#pragma once

#include <functional>

#include "dgp/mesh.hpp"

namespace dgp {

// Exact-solution / data descriptor: pointwise value and gradient.
struct ScalarField {
  std::function<double(double, double)> value;
  std::function<Point2(double, double)> gradient;

  double operator()(double x, double y) const { return value(x, y); }
  Point2 grad(double x, double y) const { return gradient(x, y); }
};

namespace fields {

ScalarField constant(double c);
ScalarField coordinate_x();       // u = x
ScalarField linear_sum();         // u = x + y
ScalarField harmonic_quadratic(); // u = x^2 - y^2
ScalarField paraboloid();         // u = x^2 + y^2

ScalarField sine_product();       // u = sin(pi x) sin(pi y)
ScalarField sine_product_load();  // f = 2 pi^2 sin(pi x) sin(pi y) = -lap u
ScalarField cosine_product();     // g = cos(pi x) cos(pi y)

// rho^{2/3} sin(2 theta / 3) with theta in [0, 3pi/2) measured CCW from the
// positive x-axis; harmonic on the L-shape, singular gradient at the origin.
ScalarField corner_singular();

}  // namespace fields

}  // namespace dgp
