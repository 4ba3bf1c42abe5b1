#include "dgp/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dgp/errors.hpp"

namespace dgp {

void write_mesh(const Mesh& m, std::ostream& out) {
  char buf[64];
  out << "$nodes " << m.n_vertices() << "\n";
  for (const auto& p : m.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
  out << "$triangles " << m.n_triangles() << "\n";
  for (const auto& t : m.triangles) out << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
  if (!out) throw DgError(ErrorCategory::io_error, "mesh write failed");
}

void write_mesh(const Mesh& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DgError(ErrorCategory::io_error, "cannot open " + path + " for writing");
  write_mesh(m, f);
}

Mesh read_mesh(std::istream& in) {
  std::string tag;
  int n = 0;
  if (!(in >> tag >> n) || tag != "$nodes" || n < 0)
    throw DgError(ErrorCategory::io_error, "expected '$nodes N' header");
  std::vector<Point2> vertices(n);
  for (auto& p : vertices)
    if (!(in >> p.x >> p.y)) throw DgError(ErrorCategory::io_error, "truncated node list");

  int mcount = 0;
  if (!(in >> tag >> mcount) || tag != "$triangles" || mcount < 0)
    throw DgError(ErrorCategory::io_error, "expected '$triangles M' header");
  std::vector<Triangle> triangles(mcount);
  for (auto& t : triangles) {
    if (!(in >> t.v[0] >> t.v[1] >> t.v[2]))
      throw DgError(ErrorCategory::io_error, "truncated triangle list");
    for (int k = 0; k < 3; ++k)
      if (t.v[k] < 0 || t.v[k] >= n)
        throw DgError(ErrorCategory::io_error, "triangle vertex index out of range");
  }
  return make_mesh(std::move(vertices), std::move(triangles));
}

Mesh read_mesh(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DgError(ErrorCategory::io_error, "cannot open " + path);
  return read_mesh(f);
}

}  // namespace dgp
