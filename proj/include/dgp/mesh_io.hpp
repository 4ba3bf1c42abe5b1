#pragma once

#include <iosfwd>
#include <string>

#include "dgp/mesh.hpp"

namespace dgp {

// Text mesh format:
//   $nodes N
//   x y            (N lines, full precision)
//   $triangles M
//   i j k          (M lines, 0-based CCW vertex indices)
// Edges are always re-derived on load, never serialized.
void write_mesh(const Mesh& m, std::ostream& out);
void write_mesh(const Mesh& m, const std::string& path);

Mesh read_mesh(std::istream& in);
Mesh read_mesh(const std::string& path);

}  // namespace dgp
