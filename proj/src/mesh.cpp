#include "dgp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "dgp/errors.hpp"

namespace dgp {

namespace {

double norm2(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }

std::array<Point2, 3> corners(const Mesh& m, int t) {
  const auto& tri = m.triangles[t];
  return {m.vertices[tri.v[0]], m.vertices[tri.v[1]], m.vertices[tri.v[2]]};
}

void check_triangle(const std::vector<Point2>& vertices, const Triangle& tri) {
  if (tri.v[0] == tri.v[1] || tri.v[1] == tri.v[2] || tri.v[0] == tri.v[2])
    throw DgError(ErrorCategory::degenerate_triangle, "triangle with repeated vertex");
  const Point2 a = vertices[tri.v[0]], b = vertices[tri.v[1]], c = vertices[tri.v[2]];
  const double area2 = cross(b - a, c - a);
  const double lmax = std::max({norm2(b - a), norm2(c - b), norm2(a - c)});
  if (area2 <= 0.0)
    throw DgError(ErrorCategory::degenerate_triangle, "triangle not counterclockwise");
  if (0.5 * area2 < 1e-14 * lmax * lmax)
    throw DgError(ErrorCategory::degenerate_triangle, "triangle area below degeneracy threshold");
}

}  // namespace

double signed_area(const Mesh& m, int t) {
  const auto c = corners(m, t);
  return 0.5 * cross(c[1] - c[0], c[2] - c[0]);
}

double circumdiameter(const Mesh& m, int t) {
  const auto c = corners(m, t);
  const double a = norm2(c[1] - c[0]);
  const double b = norm2(c[2] - c[1]);
  const double d = norm2(c[0] - c[2]);
  const double area = 0.5 * std::abs(cross(c[1] - c[0], c[2] - c[0]));
  if (area <= 0.0)
    throw DgError(ErrorCategory::degenerate_triangle, "zero-area triangle in circumdiameter");
  return a * b * d / (2.0 * area);
}

double indiameter(const Mesh& m, int t) {
  const auto c = corners(m, t);
  const double a = norm2(c[1] - c[0]);
  const double b = norm2(c[2] - c[1]);
  const double d = norm2(c[0] - c[2]);
  const double area = 0.5 * std::abs(cross(c[1] - c[0], c[2] - c[0]));
  return 4.0 * area / (a + b + d);
}

std::vector<Edge> extract_edges(const std::vector<Triangle>& triangles,
                                const std::vector<Point2>& vertices) {
  // Circumdiameters first; h_e needs them.
  std::vector<double> hk(triangles.size());
  for (size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    const Point2 a = vertices[tri.v[0]], b = vertices[tri.v[1]], c = vertices[tri.v[2]];
    const double la = norm2(b - a), lb = norm2(c - b), lc = norm2(a - c);
    const double area = 0.5 * std::abs(cross(b - a, c - a));
    if (area <= 0.0)
      throw DgError(ErrorCategory::degenerate_triangle, "zero-area triangle");
    hk[t] = la * lb * lc / (2.0 * area);
  }

  // std::map keys are sorted endpoint pairs, so the resulting edge list is
  // automatically in lexicographic order.
  std::map<std::array<int, 2>, std::vector<int>> incident;
  for (size_t t = 0; t < triangles.size(); ++t) {
    const auto& v = triangles[t].v;
    for (int l = 0; l < 3; ++l) {
      int p = v[l], q = v[(l + 1) % 3];
      if (p > q) std::swap(p, q);
      incident[{p, q}].push_back(static_cast<int>(t));
    }
  }

  std::vector<Edge> edges;
  edges.reserve(incident.size());
  for (const auto& [key, tris] : incident) {
    if (tris.size() > 2)
      throw DgError(ErrorCategory::nonconforming_mesh,
                    "edge (" + std::to_string(key[0]) + "," + std::to_string(key[1]) +
                        ") shared by " + std::to_string(tris.size()) + " triangles");
    Edge e;
    e.v = key;
    e.elems = {tris[0], tris.size() == 2 ? tris[1] : -1};
    e.kind = tris.size() == 2 ? EdgeKind::interior : EdgeKind::boundary;
    const Point2 p0 = vertices[key[0]], p1 = vertices[key[1]];
    e.length = norm2(p1 - p0);

    // Outward normal of elems[0]: find this edge as directed in the CCW
    // triangle; the outward side of a CCW-directed edge (p,q) is (dy,-dx).
    const auto& v = triangles[e.elems[0]].v;
    Point2 d{};
    for (int l = 0; l < 3; ++l) {
      const int p = v[l], q = v[(l + 1) % 3];
      if ((p == key[0] && q == key[1]) || (p == key[1] && q == key[0])) {
        d = vertices[q] - vertices[p];
        break;
      }
    }
    e.normal = {d.y / e.length, -d.x / e.length};

    e.h_e = e.kind == EdgeKind::interior ? 0.5 * (hk[tris[0]] + hk[tris[1]]) : hk[tris[0]];
    edges.push_back(e);
  }
  return edges;
}

Mesh make_mesh(std::vector<Point2> vertices, std::vector<Triangle> triangles) {
  for (const auto& tri : triangles) check_triangle(vertices, tri);

  Mesh m;
  m.vertices = std::move(vertices);
  m.triangles = std::move(triangles);
  m.edges = extract_edges(m.triangles, m.vertices);

  std::map<std::array<int, 2>, int> edge_index;
  for (int e = 0; e < m.n_edges(); ++e) edge_index[m.edges[e].v] = e;

  m.triangle_edges.resize(m.triangles.size());
  for (int t = 0; t < m.n_triangles(); ++t) {
    const auto& v = m.triangles[t].v;
    for (int l = 0; l < 3; ++l) {
      int p = v[(l + 1) % 3], q = v[(l + 2) % 3];
      if (p > q) std::swap(p, q);
      m.triangle_edges[t][l] = edge_index.at({p, q});
    }
  }

  m.boundary_vertex.assign(m.vertices.size(), 0);
  for (const auto& e : m.edges)
    if (e.kind == EdgeKind::boundary) {
      m.boundary_vertex[e.v[0]] = 1;
      m.boundary_vertex[e.v[1]] = 1;
    }

  validate(m);
  return m;
}

void validate(const Mesh& m) {
  for (const auto& p : m.vertices)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw DgError(ErrorCategory::invalid_argument, "non-finite vertex coordinate");

  for (const auto& tri : m.triangles) check_triangle(m.vertices, tri);

  std::vector<int> boundary_degree(m.vertices.size(), 0);
  int n_boundary_edges = 0;
  for (const auto& e : m.edges) {
    if (e.kind == EdgeKind::interior) {
      if (e.elems[1] < 0 || e.elems[0] == e.elems[1])
        throw DgError(ErrorCategory::nonconforming_mesh, "interior edge without two distinct elements");
    } else {
      if (e.elems[1] != -1)
        throw DgError(ErrorCategory::nonconforming_mesh, "boundary edge with two elements");
      boundary_degree[e.v[0]]++;
      boundary_degree[e.v[1]]++;
      n_boundary_edges++;
    }
    const double nn = std::sqrt(e.normal.x * e.normal.x + e.normal.y * e.normal.y);
    if (std::abs(nn - 1.0) > 1e-14)
      throw DgError(ErrorCategory::nonconforming_mesh, "edge normal not unit length");

    // The stored normal must point out of elems[0] (and into elems[1]).
    const Point2 mid = 0.5 * (m.vertices[e.v[0]] + m.vertices[e.v[1]]);
    for (int side = 0; side < (e.kind == EdgeKind::interior ? 2 : 1); ++side) {
      const auto c = corners(m, e.elems[side]);
      const Point2 bary = (1.0 / 3.0) * (c[0] + c[1] + c[2]);
      const double s = dot(e.normal, bary - mid);
      if ((side == 0 && s >= 0.0) || (side == 1 && s <= 0.0))
        throw DgError(ErrorCategory::nonconforming_mesh, "edge normal orientation inconsistent");
    }
  }

  // Euler characteristic of a simply connected triangulated surface.
  const long euler = static_cast<long>(m.n_vertices()) - m.n_edges() + m.n_triangles();
  if (euler != 1)
    throw DgError(ErrorCategory::nonconforming_mesh,
                  "Euler check failed: V - E + T = " + std::to_string(euler));

  // Closed boundary loops: every boundary vertex has exactly two incident
  // boundary edges, and loop edge count equals boundary vertex count.
  int n_boundary_vertices = 0;
  for (size_t v = 0; v < m.vertices.size(); ++v) {
    if (boundary_degree[v] == 0) continue;
    if (boundary_degree[v] != 2)
      throw DgError(ErrorCategory::nonconforming_mesh, "open boundary loop at a vertex");
    n_boundary_vertices++;
  }
  if (n_boundary_vertices != n_boundary_edges)
    throw DgError(ErrorCategory::nonconforming_mesh, "boundary loops do not close");

  if (m.triangle_edges.size() != m.triangles.size())
    throw DgError(ErrorCategory::nonconforming_mesh, "triangle edge map size mismatch");
  for (int t = 0; t < m.n_triangles(); ++t)
    for (int l = 0; l < 3; ++l) {
      const Edge& e = m.edges[m.triangle_edges[t][l]];
      if (e.elems[0] != t && e.elems[1] != t)
        throw DgError(ErrorCategory::nonconforming_mesh, "triangle edge map inconsistent");
    }
}

Mesh build_square_mesh(int n) {
  if (n < 1) throw DgError(ErrorCategory::invalid_argument, "square mesh requires n >= 1");
  std::vector<Point2> vertices;
  vertices.reserve(static_cast<size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<Triangle> triangles;
  triangles.reserve(2u * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      triangles.push_back({{a, b, c}});
      triangles.push_back({{a, c, d}});
    }
  return make_mesh(std::move(vertices), std::move(triangles));
}

Mesh build_lshape_mesh(int n) {
  if (n < 1) throw DgError(ErrorCategory::invalid_argument, "L-shape mesh requires n >= 1");
  // Grid over (-1,1)^2 at resolution 1/n, dropping points strictly inside the
  // removed quadrant [0,1]x[-1,0].
  const int w = 2 * n + 1;
  std::vector<int> vid(static_cast<size_t>(w) * w, -1);
  std::vector<Point2> vertices;
  for (int j = 0; j < w; ++j)
    for (int i = 0; i < w; ++i) {
      const bool removed_interior = i > n && j < n;
      if (removed_interior) continue;
      vid[static_cast<size_t>(j) * w + i] = static_cast<int>(vertices.size());
      vertices.push_back({static_cast<double>(i - n) / n, static_cast<double>(j - n) / n});
    }

  auto id = [&](int i, int j) { return vid[static_cast<size_t>(j) * w + i]; };
  std::vector<Triangle> triangles;
  triangles.reserve(6u * n * n);
  for (int j = 0; j < 2 * n; ++j)
    for (int i = 0; i < 2 * n; ++i) {
      const bool removed_cell = i >= n && j < n;
      if (removed_cell) continue;
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      triangles.push_back({{a, b, c}});
      triangles.push_back({{a, c, d}});
    }
  return make_mesh(std::move(vertices), std::move(triangles));
}

Mesh refine_uniform(const Mesh& m) {
  validate(m);
  std::vector<Point2> vertices = m.vertices;
  vertices.reserve(m.vertices.size() + m.edges.size());
  // Midpoint vertices appended in edge-list order keeps refinement
  // deterministic.
  for (const auto& e : m.edges)
    vertices.push_back(0.5 * (m.vertices[e.v[0]] + m.vertices[e.v[1]]));

  const int base = m.n_vertices();
  std::vector<Triangle> triangles;
  triangles.reserve(4u * m.triangles.size());
  for (int t = 0; t < m.n_triangles(); ++t) {
    const auto& v = m.triangles[t].v;
    // Midpoint opposite local vertex l is the midpoint of edge (v[l+1], v[l+2]).
    const int m0 = base + m.triangle_edges[t][0];
    const int m1 = base + m.triangle_edges[t][1];
    const int m2 = base + m.triangle_edges[t][2];
    triangles.push_back({{v[0], m2, m1}});
    triangles.push_back({{v[1], m0, m2}});
    triangles.push_back({{v[2], m1, m0}});
    triangles.push_back({{m2, m0, m1}});
  }
  return make_mesh(std::move(vertices), std::move(triangles));
}

MeshMetrics mesh_metrics(const Mesh& m) {
  if (m.triangles.empty())
    throw DgError(ErrorCategory::invalid_argument, "metrics of an empty mesh");
  double h = 0.0, hmin = std::numeric_limits<double>::max(), ratio = 0.0;
  for (int t = 0; t < m.n_triangles(); ++t) {
    const double hk = circumdiameter(m, t);
    const double rk = indiameter(m, t);
    if (!(rk > 0.0))
      throw DgError(ErrorCategory::degenerate_triangle, "degenerate triangle in metrics");
    h = std::max(h, hk);
    hmin = std::min(hmin, hk);
    ratio = std::max(ratio, hk / rk);
  }
  return {h, ratio, h / hmin};
}

}  // namespace dgp
