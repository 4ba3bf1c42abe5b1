#include "dgp/quadrature.hpp"

#include <cmath>

#include "dgp/errors.hpp"

namespace dgp {

std::vector<EdgeQuadPoint> gauss_legendre_01(int m) {
  if (m < 1) throw DgError(ErrorCategory::unsupported_degree, "Gauss rule needs >= 1 point");
  std::vector<EdgeQuadPoint> pts(m);
  for (int i = 0; i < m; ++i) {
    // Newton iteration on P_m from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1,1] -> [0,1]; nodes come out descending in x, reverse to ascending t.
    pts[m - 1 - i] = {0.5 * (x + 1.0), 0.5 * w};
  }
  return pts;
}

QuadRuleEdge make_quad_edge(int d) {
  if (d < 0 || d > 10)
    throw DgError(ErrorCategory::unsupported_degree, "edge quadrature degree outside [0,10]");
  const int m = (d + 2) / 2;  // 2m-1 >= d
  return {d, gauss_legendre_01(m)};
}

QuadRuleTri make_quad_tri(int d) {
  if (d < 0 || d > 10)
    throw DgError(ErrorCategory::unsupported_degree, "triangle quadrature degree outside [0,10]");
  // Collapsed map (a,b) -> (xi,eta) = (a, b(1-a)) with Jacobian (1-a).
  // A monomial of total degree <= d needs degree d+1 in a and d in b.
  const auto ga = gauss_legendre_01((d + 3) / 2);
  const auto gb = gauss_legendre_01((d + 2) / 2);
  QuadRuleTri rule;
  rule.degree = d;
  rule.points.reserve(ga.size() * gb.size());
  for (const auto& a : ga)
    for (const auto& b : gb) {
      const double xi = a.t;
      const double eta = b.t * (1.0 - a.t);
      rule.points.push_back({1.0 - xi - eta, xi, eta, a.w * b.w * (1.0 - a.t)});
    }
  return rule;
}

}  // namespace dgp
