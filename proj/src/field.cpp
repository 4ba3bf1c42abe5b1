#include "dgp/field.hpp"

#include <cmath>

namespace dgp {
namespace fields {

ScalarField constant(double c) {
  return {[c](double, double) { return c; }, [](double, double) { return Point2{0.0, 0.0}; }};
}

ScalarField coordinate_x() {
  return {[](double x, double) { return x; }, [](double, double) { return Point2{1.0, 0.0}; }};
}

ScalarField linear_sum() {
  return {[](double x, double y) { return x + y; },
          [](double, double) { return Point2{1.0, 1.0}; }};
}

ScalarField harmonic_quadratic() {
  return {[](double x, double y) { return x * x - y * y; },
          [](double x, double y) { return Point2{2.0 * x, -2.0 * y}; }};
}

ScalarField paraboloid() {
  return {[](double x, double y) { return x * x + y * y; },
          [](double x, double y) { return Point2{2.0 * x, 2.0 * y}; }};
}

ScalarField sine_product() {
  return {[](double x, double y) { return std::sin(M_PI * x) * std::sin(M_PI * y); },
          [](double x, double y) {
            return Point2{M_PI * std::cos(M_PI * x) * std::sin(M_PI * y),
                          M_PI * std::sin(M_PI * x) * std::cos(M_PI * y)};
          }};
}

ScalarField sine_product_load() {
  const double c = 2.0 * M_PI * M_PI;
  return {[c](double x, double y) { return c * std::sin(M_PI * x) * std::sin(M_PI * y); },
          [c](double x, double y) {
            return Point2{c * M_PI * std::cos(M_PI * x) * std::sin(M_PI * y),
                          c * M_PI * std::sin(M_PI * x) * std::cos(M_PI * y)};
          }};
}

ScalarField cosine_product() {
  return {[](double x, double y) { return std::cos(M_PI * x) * std::cos(M_PI * y); },
          [](double x, double y) {
            return Point2{-M_PI * std::sin(M_PI * x) * std::cos(M_PI * y),
                          -M_PI * std::cos(M_PI * x) * std::sin(M_PI * y)};
          }};
}

namespace {

// Angle in [0, 2pi) measured CCW from the positive x-axis; the L-shape domain
// occupies [0, 3pi/2].
double wedge_angle(double x, double y) {
  double th = std::atan2(y, x);
  if (th < 0.0) th += 2.0 * M_PI;
  return th;
}

}  // namespace

ScalarField corner_singular() {
  const double k = 2.0 / 3.0;
  return {[k](double x, double y) {
            const double rho = std::hypot(x, y);
            if (rho == 0.0) return 0.0;
            return std::pow(rho, k) * std::sin(k * wedge_angle(x, y));
          },
          [k](double x, double y) {
            const double rho = std::hypot(x, y);
            if (rho == 0.0) return Point2{0.0, 0.0};  // singular point, never sampled
            const double th = wedge_angle(x, y);
            const double dr = k * std::pow(rho, k - 1.0) * std::sin(k * th);
            const double dt = k * std::pow(rho, k - 1.0) * std::cos(k * th);
            const double c = std::cos(th), s = std::sin(th);
            return Point2{c * dr - s * dt, s * dr + c * dt};
          }};
}

}  // namespace fields
}  // namespace dgp
