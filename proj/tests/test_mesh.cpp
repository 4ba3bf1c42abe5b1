#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dgp/errors.hpp"
#include "dgp/mesh.hpp"
#include "dgp/mesh_io.hpp"

using namespace dgp;

namespace {

int count_edges(const Mesh& m, EdgeKind kind) {
  int c = 0;
  for (const auto& e : m.edges) c += e.kind == kind ? 1 : 0;
  return c;
}

double total_area(const Mesh& m) {
  double a = 0.0;
  for (int t = 0; t < m.n_triangles(); ++t) a += signed_area(m, t);
  return a;
}

}  // namespace

TEST_CASE("square mesh counts") {
  const Mesh m1 = build_square_mesh(1);
  CHECK(m1.n_vertices() == 4);
  CHECK(m1.n_triangles() == 2);
  CHECK(m1.n_edges() == 5);
  CHECK(count_edges(m1, EdgeKind::interior) == 1);

  // 2x2 grid, counted by hand: 9 vertices, 8 triangles, 16 edges of which 8
  // interior (4 cell diagonals + 4 internal grid segments).
  const Mesh m2 = build_square_mesh(2);
  CHECK(m2.n_vertices() == 9);
  CHECK(m2.n_triangles() == 8);
  CHECK(m2.n_edges() == 16);
  CHECK(count_edges(m2, EdgeKind::interior) == 8);

  CHECK_THROWS_AS(build_square_mesh(0), DgError);
}

TEST_CASE("square mesh metrics") {
  const Mesh m = build_square_mesh(8);
  const MeshMetrics mm = mesh_metrics(m);
  CHECK(mm.h == doctest::Approx(std::sqrt(2.0) / 8.0).epsilon(1e-13));
  // Right isoceles triangle: circumdiameter sqrt(2) l, indiameter (2-sqrt(2)) l,
  // ratio sqrt(2)/(2-sqrt(2)) = 1 + sqrt(2).
  CHECK(mm.max_shape_ratio == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-13));
  CHECK(mm.quasi_uniformity == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("single triangle metrics") {
  // Unit right isoceles triangle, legs 1.
  Mesh m = make_mesh({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}});
  CHECK(circumdiameter(m, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(indiameter(m, 0) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(circumdiameter(m, 0) / indiameter(m, 0) ==
        doctest::Approx(std::sqrt(2.0) / (2.0 - std::sqrt(2.0))).epsilon(1e-13));

  // Equilateral, side 1: circumdiameter 2/sqrt(3), indiameter 1/sqrt(3).
  Mesh eq = make_mesh({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}}, {{{0, 1, 2}}});
  CHECK(circumdiameter(eq, 0) / indiameter(eq, 0) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("L-shape mesh counts") {
  const Mesh m1 = build_lshape_mesh(1);
  CHECK(m1.n_vertices() == 8);
  CHECK(m1.n_triangles() == 6);

  const Mesh m2 = build_lshape_mesh(2);
  CHECK(m2.n_triangles() == 24);
  CHECK(count_edges(m2, EdgeKind::boundary) == 16);

  // The re-entrant corner is always a mesh vertex.
  for (int n : {1, 2, 3, 5}) {
    const Mesh m = build_lshape_mesh(n);
    bool corner_found = false;
    for (const auto& v : m.vertices)
      corner_found = corner_found || (v.x == 0.0 && v.y == 0.0);
    CHECK(corner_found);
  }

  CHECK_THROWS_AS(build_lshape_mesh(0), DgError);
}

TEST_CASE("L-shape boundary edges lie on the six boundary segments") {
  const Mesh m = build_lshape_mesh(2);
  for (const auto& e : m.edges) {
    if (e.kind != EdgeKind::boundary) continue;
    const Point2 a = m.vertices[e.v[0]], b = m.vertices[e.v[1]];
    const bool on_seg = (a.y == -1.0 && b.y == -1.0) || (a.x == 0.0 && b.x == 0.0) ||
                        (a.y == 0.0 && b.y == 0.0) || (a.x == 1.0 && b.x == 1.0) ||
                        (a.y == 1.0 && b.y == 1.0) || (a.x == -1.0 && b.x == -1.0);
    CHECK(on_seg);
  }
}

TEST_CASE("mesh areas and conformity invariants") {
  const Mesh sq = build_square_mesh(3);
  CHECK(total_area(sq) == doctest::Approx(1.0).epsilon(1e-12));
  const Mesh ls = build_lshape_mesh(2);
  CHECK(total_area(ls) == doctest::Approx(3.0).epsilon(1e-12));
  for (const Mesh* m : {&sq, &ls}) {
    CHECK_NOTHROW(validate(*m));
    for (int t = 0; t < m->n_triangles(); ++t) CHECK(signed_area(*m, t) > 0.0);
  }
}

TEST_CASE("interior edge normals are opposite outward normals") {
  const Mesh m = build_lshape_mesh(2);
  for (const auto& e : m.edges) {
    CHECK(std::abs(std::hypot(e.normal.x, e.normal.y) - 1.0) <= 1e-14);
    if (e.kind != EdgeKind::interior) continue;
    // Recompute the outward normal of each side directly from the directed
    // edge in that triangle; they must be exact negatives.
    Point2 n[2];
    for (int s = 0; s < 2; ++s) {
      const auto& v = m.triangles[e.elems[s]].v;
      for (int l = 0; l < 3; ++l) {
        const int p = v[l], q = v[(l + 1) % 3];
        if ((p == e.v[0] && q == e.v[1]) || (p == e.v[1] && q == e.v[0])) {
          const Point2 d = m.vertices[q] - m.vertices[p];
          n[s] = {d.y / e.length, -d.x / e.length};
        }
      }
    }
    CHECK(std::abs(n[0].x + n[1].x) <= 1e-14);
    CHECK(std::abs(n[0].y + n[1].y) <= 1e-14);
    CHECK(n[0].x == e.normal.x);
    CHECK(n[0].y == e.normal.y);
  }
}

TEST_CASE("extract_edges on the 2-triangle square") {
  const Mesh m = build_square_mesh(1);
  CHECK(count_edges(m, EdgeKind::interior) == 1);
  CHECK(count_edges(m, EdgeKind::boundary) == 4);
  // Deterministic lexicographic ordering by sorted endpoints.
  for (int e = 0; e + 1 < m.n_edges(); ++e)
    CHECK(m.edges[e].v < m.edges[e + 1].v);
}

TEST_CASE("extract_edges rejects nonconforming input") {
  // Three triangles sharing the edge (0,1).
  std::vector<Point2> pts = {{0, 0}, {1, 0}, {0, 1}, {0.5, -1}, {2, 0.5}};
  std::vector<Triangle> tris = {{{0, 1, 2}}, {{1, 0, 3}}, {{0, 1, 4}}};
  CHECK_THROWS_AS(extract_edges(tris, pts), DgError);
}

TEST_CASE("degenerate triangles rejected") {
  CHECK_THROWS_AS(make_mesh({{0, 0}, {1, 0}, {2, 0}}, {{{0, 1, 2}}}), DgError);
  CHECK_THROWS_AS(make_mesh({{0, 0}, {1, 0}, {0, 1}}, {{{0, 2, 1}}}), DgError);  // CW
  CHECK_THROWS_AS(make_mesh({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 1}}}), DgError);
}

TEST_CASE("uniform refinement") {
  const Mesh m1 = build_square_mesh(1);
  const Mesh r1 = refine_uniform(m1);
  CHECK(r1.n_triangles() == 8);
  CHECK(mesh_metrics(r1).h == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-13));

  const Mesh m = build_lshape_mesh(2);
  const Mesh r = refine_uniform(m);
  CHECK(r.n_triangles() == 4 * m.n_triangles());
  CHECK(mesh_metrics(r).h == doctest::Approx(0.5 * mesh_metrics(m).h).epsilon(1e-12));
  CHECK(mesh_metrics(r).max_shape_ratio ==
        doctest::Approx(mesh_metrics(m).max_shape_ratio).epsilon(1e-12));
  CHECK(total_area(r) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("refining square(2) gives the square(4) vertex set") {
  const Mesh refined = refine_uniform(build_square_mesh(2));
  const Mesh direct = build_square_mesh(4);
  REQUIRE(refined.n_vertices() == direct.n_vertices());
  auto sorted_points = [](const Mesh& m) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& v : m.vertices) pts.emplace_back(v.x, v.y);
    std::sort(pts.begin(), pts.end());
    return pts;
  };
  const auto a = sorted_points(refined), b = sorted_points(direct);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first == doctest::Approx(b[i].first).epsilon(1e-15));
    CHECK(a[i].second == doctest::Approx(b[i].second).epsilon(1e-15));
  }
}

TEST_CASE("mesh text format round trip") {
  const Mesh m = build_lshape_mesh(2);
  std::stringstream ss;
  write_mesh(m, ss);
  const Mesh back = read_mesh(ss);
  REQUIRE(back.n_vertices() == m.n_vertices());
  REQUIRE(back.n_triangles() == m.n_triangles());
  CHECK(back.n_edges() == m.n_edges());
  for (int v = 0; v < m.n_vertices(); ++v) {
    CHECK(back.vertices[v].x == m.vertices[v].x);
    CHECK(back.vertices[v].y == m.vertices[v].y);
  }
  // Re-serialization is byte-identical.
  std::stringstream ss2;
  write_mesh(back, ss2);
  std::stringstream ss3;
  write_mesh(m, ss3);
  CHECK(ss2.str() == ss3.str());

  std::stringstream bad("$nodes 2\n0 0\n1 1\n$triangles 1\n0 1 5\n");
  CHECK_THROWS_AS(read_mesh(bad), DgError);
}
