#include <doctest.h>

#include <cmath>

#include "dgp/errors.hpp"
#include "dgp/quadrature.hpp"

using namespace dgp;

namespace {

// Independent oracle: integral of xi^a eta^b over the reference triangle is
// a! b! / (a+b+2)! (Dirichlet's formula).
double monomial_integral(int a, int b) {
  double v = 1.0;
  // a! b! / (a+b+2)! computed as a product of ratios to stay exact in double.
  for (int k = 1; k <= a; ++k) v *= static_cast<double>(k);
  for (int k = 1; k <= b; ++k) v *= static_cast<double>(k);
  for (int k = 1; k <= a + b + 2; ++k) v /= static_cast<double>(k);
  return v;
}

double apply_tri(const QuadRuleTri& rule, int a, int b) {
  double s = 0.0;
  for (const auto& p : rule.points) s += p.w * std::pow(p.xi(), a) * std::pow(p.eta(), b);
  return s;
}

double apply_edge(const QuadRuleEdge& rule, int a) {
  double s = 0.0;
  for (const auto& p : rule.points) s += p.w * std::pow(p.t, a);
  return s;
}

}  // namespace

TEST_CASE("triangle rules: positive weights, area, monomial exactness") {
  for (int d = 0; d <= 10; ++d) {
    const QuadRuleTri rule = make_quad_tri(d);
    double wsum = 0.0;
    for (const auto& p : rule.points) {
      CHECK(p.w > 0.0);
      CHECK(p.b0 >= 0.0);
      CHECK(p.b1 >= 0.0);
      CHECK(p.b2 >= 0.0);
      CHECK(p.b0 + p.b1 + p.b2 == doctest::Approx(1.0).epsilon(1e-14));
      wsum += p.w;
    }
    CHECK(wsum == doctest::Approx(0.5).epsilon(1e-14));
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b)
        CHECK(apply_tri(rule, a, b) == doctest::Approx(monomial_integral(a, b)).epsilon(1e-13));
  }
}

TEST_CASE("triangle rule spot values") {
  CHECK(apply_tri(make_quad_tri(2), 1, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
  // 3! 3! / 8! = 1/1120
  CHECK(apply_tri(make_quad_tri(6), 3, 3) == doctest::Approx(1.0 / 1120.0).epsilon(1e-13));
}

TEST_CASE("edge rules: weights and exactness") {
  for (int d = 0; d <= 10; ++d) {
    const QuadRuleEdge rule = make_quad_edge(d);
    double wsum = 0.0;
    for (const auto& p : rule.points) {
      CHECK(p.w > 0.0);
      CHECK(p.t > 0.0);
      CHECK(p.t < 1.0);
      wsum += p.w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int a = 0; a <= d; ++a)
      CHECK(apply_edge(rule, a) == doctest::Approx(1.0 / (a + 1)).epsilon(1e-14));
  }
  // 3-point Gauss integrates t^5 exactly.
  const QuadRuleEdge g3 = make_quad_edge(5);
  CHECK(g3.points.size() == 3);
  CHECK(apply_edge(g3, 5) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("unsupported quadrature degrees rejected") {
  CHECK_THROWS_AS(make_quad_tri(11), DgError);
  CHECK_THROWS_AS(make_quad_edge(11), DgError);
  CHECK_THROWS_AS(make_quad_tri(-1), DgError);
}
