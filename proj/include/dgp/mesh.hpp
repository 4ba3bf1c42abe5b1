#pragma once

#include <array>
#include <vector>

namespace dgp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

// Triangle as CCW vertex indices into Mesh::vertices.
struct Triangle {
  std::array<int, 3> v;
};

enum class EdgeKind { interior, boundary };

struct Edge {
  std::array<int, 2> v;      // endpoint vertex indices, v[0] < v[1]
  std::array<int, 2> elems;  // adjacent triangles; elems[1] == -1 on the boundary
  EdgeKind kind = EdgeKind::boundary;
  Point2 normal;             // unit normal, outward from elems[0]
  double length = 0.0;
  double h_e = 0.0;          // (h_K1 + h_K2)/2 interior, h_K boundary
};

// Conforming triangulation with derived edge topology. Immutable once built;
// safe for concurrent reads.
struct Mesh {
  std::vector<Point2> vertices;
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;
  // Per triangle, the edge index opposite each local vertex.
  std::vector<std::array<int, 3>> triangle_edges;
  std::vector<char> boundary_vertex;  // 1 if the vertex lies on a boundary edge

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
};

double signed_area(const Mesh& m, int t);
double circumdiameter(const Mesh& m, int t);  // h_K
double indiameter(const Mesh& m, int t);      // rho_K

struct MeshMetrics {
  double h;                 // max_K h_K
  double max_shape_ratio;   // max_K h_K / rho_K
  double quasi_uniformity;  // max_K h / h_K
};

// Uniform mesh of the unit square (0,1)^2: (n+1)^2 vertices, 2n^2 triangles,
// every cell split along the same diagonal.
Mesh build_square_mesh(int n);

// Uniform mesh of (-1,1)^2 minus the closed quadrant [0,1]x[-1,0]; the
// re-entrant corner sits at the origin. 6n^2 triangles.
Mesh build_lshape_mesh(int n);

// Splits every triangle into 4 congruent children via edge midpoints.
Mesh refine_uniform(const Mesh& m);

MeshMetrics mesh_metrics(const Mesh& m);

// Derives the edge list from a conforming triangle list. Edges are ordered
// lexicographically by their sorted endpoint indices; for interior edges
// elems[0] is the lower-indexed adjacent triangle and the stored normal
// points out of it. Throws on nonconformity (an edge in >= 3 triangles).
std::vector<Edge> extract_edges(const std::vector<Triangle>& triangles,
                                const std::vector<Point2>& vertices);

// Assembles a Mesh from raw vertices + triangles: derives edges, per-triangle
// edge maps, and boundary flags, then validates all mesh invariants.
Mesh make_mesh(std::vector<Point2> vertices, std::vector<Triangle> triangles);

// Checks conformity, orientation, Euler characteristic, boundary loop
// closure, and normal normalization. Throws DgError on violation.
void validate(const Mesh& m);

}  // namespace dgp
