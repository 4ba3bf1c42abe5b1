#include <doctest.h>

#include <cmath>
#include <random>

#include "dgp/errors.hpp"
#include "dgp/norms.hpp"
#include "dgp/space.hpp"

using namespace dgp;

namespace {

std::mt19937 rng(0x5eed);

Point2 random_ref_point() {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double xi = u(rng), eta = u(rng);
  if (xi + eta > 1.0) {
    xi = 1.0 - xi;
    eta = 1.0 - eta;
  }
  return {xi, eta};
}

}  // namespace

TEST_CASE("Lagrange property at the nodes") {
  for (int r : {1, 2, 3}) {
    const ReferenceBasis basis = make_basis(r);
    CHECK(basis.n_loc() == (r + 1) * (r + 2) / 2);
    for (int j = 0; j < basis.n_loc(); ++j) {
      const auto phi = basis.eval(basis.nodes()[j].x, basis.nodes()[j].y);
      for (int i = 0; i < basis.n_loc(); ++i)
        CHECK(std::abs(phi[i] - (i == j ? 1.0 : 0.0)) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(make_basis(0), DgError);
}

TEST_CASE("partition of unity and gradient sum at random points") {
  for (int r : {1, 2}) {
    const ReferenceBasis basis = make_basis(r);
    for (int k = 0; k < 50; ++k) {
      const Point2 p = random_ref_point();
      const auto phi = basis.eval(p.x, p.y);
      const auto dphi = basis.eval_grad(p.x, p.y);
      double s = 0.0, gx = 0.0, gy = 0.0;
      for (int i = 0; i < basis.n_loc(); ++i) {
        s += phi[i];
        gx += dphi[i].x;
        gy += dphi[i].y;
      }
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(gx) <= 1e-12);
      CHECK(std::abs(gy) <= 1e-12);
    }
    const auto phi_c = basis.eval(1.0 / 3.0, 1.0 / 3.0);
    double s = 0.0;
    for (double v : phi_c) s += v;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("degree 1 basis is the barycentric triple") {
  const ReferenceBasis basis = make_basis(1);
  const auto phi0 = basis.eval(0.0, 0.0);
  CHECK(phi0[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 0; k < 20; ++k) {
    const Point2 p = random_ref_point();
    const auto phi = basis.eval(p.x, p.y);
    CHECK(phi[0] == doctest::Approx(1.0 - p.x - p.y).epsilon(1e-13));
    CHECK(phi[1] == doctest::Approx(p.x).epsilon(1e-13));
    CHECK(phi[2] == doctest::Approx(p.y).epsilon(1e-13));
  }
}

TEST_CASE("degree 2 edge-midpoint basis function is 4 lambda_a lambda_b") {
  const ReferenceBasis basis = make_basis(2);
  // Find the node at (1/2, 0): midpoint of the vertices with barycentric
  // coordinates lambda_0 = 1 - xi - eta and lambda_1 = xi.
  int mid = -1;
  for (int i = 0; i < basis.n_loc(); ++i)
    if (basis.nodes()[i].x == 0.5 && basis.nodes()[i].y == 0.0) mid = i;
  REQUIRE(mid >= 0);
  for (int k = 0; k < 20; ++k) {
    const Point2 p = random_ref_point();
    const auto phi = basis.eval(p.x, p.y);
    const double l0 = 1.0 - p.x - p.y, l1 = p.x;
    CHECK(phi[mid] == doctest::Approx(4.0 * l0 * l1).epsilon(1e-12));
  }
}

TEST_CASE("dof map is a bijection") {
  const Mesh m = build_square_mesh(3);
  const DgSpace space = make_space(m, 2);
  CHECK(space.dofs.total_dofs == m.n_triangles() * 6);
  std::vector<char> seen(space.dofs.total_dofs, 0);
  for (int t = 0; t < m.n_triangles(); ++t)
    for (int l = 0; l < space.dofs.n_loc; ++l) {
      const int g = space.dofs.global(t, l);
      REQUIRE(g >= 0);
      REQUIRE(g < space.dofs.total_dofs);
      CHECK(!seen[g]);
      seen[g] = 1;
      const auto [tt, ll] = space.dofs.split(g);
      CHECK(tt == t);
      CHECK(ll == l);
    }
}

TEST_CASE("eval reproduces interpolated linears and their gradients") {
  const Mesh m = build_lshape_mesh(2);
  const DgSpace space = make_space(m, 1);
  const auto coeffs = interpolate(m, space, fields::coordinate_x());
  for (int t = 0; t < m.n_triangles(); ++t) {
    const ElementMap em = element_map(m, t);
    const Point2 ref = random_ref_point();
    const Point2 p = em.to_physical(ref.x, ref.y);
    CHECK(eval_on_element(m, t, space, coeffs, p) == doctest::Approx(p.x).epsilon(1e-13));
    const Point2 g = eval_grad_on_element(m, t, space, coeffs, p);
    CHECK(g.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(g.y) <= 1e-12);
  }
}

TEST_CASE("degree 2 space reproduces x^2 pointwise") {
  const Mesh m = build_square_mesh(1);
  const DgSpace space = make_space(m, 2);
  ScalarField xsq{[](double x, double) { return x * x; },
                  [](double x, double) { return Point2{2.0 * x, 0.0}; }};
  const auto coeffs = interpolate(m, space, xsq);
  for (int k = 0; k < 10; ++k) {
    const int t = k % 2;
    const ElementMap em = element_map(m, t);
    const Point2 ref = random_ref_point();
    const Point2 p = em.to_physical(ref.x, ref.y);
    CHECK(eval_on_element(m, t, space, coeffs, p) == doctest::Approx(p.x * p.x).epsilon(1e-12));
  }
}

TEST_CASE("points outside the element closure are rejected") {
  const Mesh m = build_square_mesh(1);
  const DgSpace space = make_space(m, 1);
  const std::vector<double> coeffs(space.dofs.total_dofs, 0.0);
  CHECK_THROWS_AS(eval_on_element(m, 0, space, coeffs, Point2{2.0, 2.0}), DgError);
  CHECK_THROWS_AS(eval_on_element(m, 0, space, coeffs, Point2{-0.1, 0.5}), DgError);
}

TEST_CASE("interpolation basics") {
  const Mesh m = build_square_mesh(2);
  for (int r : {1, 2}) {
    const DgSpace space = make_space(m, r);
    const auto ones = interpolate(m, space, fields::constant(1.0));
    for (double c : ones) CHECK(c == doctest::Approx(1.0).epsilon(1e-14));

    const auto lin = interpolate(m, space, fields::linear_sum());
    for (int t = 0; t < m.n_triangles(); ++t) {
      const auto& v = m.triangles[t].v;
      const Point2 bary = (1.0 / 3.0) * (m.vertices[v[0]] + m.vertices[v[1]] + m.vertices[v[2]]);
      CHECK(eval_on_element(m, t, space, lin, bary) ==
            doctest::Approx(bary.x + bary.y).epsilon(1e-13));
    }
  }
}

TEST_CASE("interpolating a discrete function reproduces its coefficients") {
  const Mesh m = build_square_mesh(2);
  const DgSpace space = make_space(m, 2);
  // Continuous discrete start so pointwise evaluation is single-valued.
  const auto coeffs = interpolate(m, space, fields::sine_product());

  // Locate-and-evaluate wrapper; lowest element index wins on shared nodes.
  auto locate_eval = [&](double x, double y) {
    for (int t = 0; t < m.n_triangles(); ++t) {
      const Point2 r = element_map(m, t).to_reference({x, y});
      if (r.x >= -1e-12 && r.y >= -1e-12 && r.x + r.y <= 1.0 + 1e-12)
        return eval_on_element(m, t, space, coeffs, {x, y});
    }
    throw DgError(ErrorCategory::invalid_argument, "point not in mesh");
  };
  ScalarField wrapped{locate_eval, nullptr};
  const auto back = interpolate(m, space, wrapped);
  for (size_t i = 0; i < coeffs.size(); ++i)
    CHECK(back[i] == doctest::Approx(coeffs[i]).epsilon(1e-12));

  // Per-element nodal reproduction for arbitrary (discontinuous) coefficients.
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> rnd(space.dofs.total_dofs);
  for (double& c : rnd) c = u(rng);
  for (int t = 0; t < m.n_triangles(); ++t) {
    const ElementMap em = element_map(m, t);
    for (int l = 0; l < space.dofs.n_loc; ++l) {
      const Point2 node = em.to_physical(space.basis.nodes()[l].x, space.basis.nodes()[l].y);
      CHECK(eval_on_element(m, t, space, rnd, node) ==
            doctest::Approx(rnd[space.dofs.global(t, l)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("interpolation broken-H1 error quarters per refinement for degree 2") {
  const ScalarField u = fields::sine_product();
  const Mesh m8 = build_square_mesh(8);
  const Mesh m16 = refine_uniform(m8);
  const DgSpace s8 = make_space(m8, 2), s16 = make_space(m16, 2);
  const double e8 = error_broken_h1(m8, s8, interpolate(m8, s8, u), u);
  const double e16 = error_broken_h1(m16, s16, interpolate(m16, s16, u), u);
  CHECK(e8 / e16 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("field gradients are consistent with values under finite differences") {
  struct Sample {
    ScalarField field;
    std::vector<Point2> points;
  };
  const std::vector<Point2> box = {{0.3, 0.4}, {0.7, 0.2}, {0.1, 0.8}, {0.55, 0.65}};
  // Keep corner-singular samples away from the slit and the origin.
  const std::vector<Point2> wedge = {{0.3, 0.4}, {-0.5, 0.2}, {-0.4, -0.5}, {0.1, 0.7}};
  const Sample cases[] = {
      {fields::constant(2.5), box},        {fields::coordinate_x(), box},
      {fields::linear_sum(), box},         {fields::harmonic_quadratic(), box},
      {fields::paraboloid(), box},         {fields::sine_product(), box},
      {fields::sine_product_load(), box},  {fields::cosine_product(), box},
      {fields::corner_singular(), wedge},
  };
  const double step = 1e-6;
  for (const auto& c : cases)
    for (const Point2& p : c.points) {
      const Point2 g = c.field.gradient(p.x, p.y);
      const double fdx =
          (c.field.value(p.x + step, p.y) - c.field.value(p.x - step, p.y)) / (2.0 * step);
      const double fdy =
          (c.field.value(p.x, p.y + step) - c.field.value(p.x, p.y - step)) / (2.0 * step);
      const double scale = std::max(1.0, std::hypot(g.x, g.y));
      CHECK(std::abs(g.x - fdx) / scale <= 1e-5);
      CHECK(std::abs(g.y - fdy) / scale <= 1e-5);
    }
}
