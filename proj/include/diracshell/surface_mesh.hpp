#pragma once

// Triangulated surfaces carrying the quadrature data used to discretize the
// surface measure: one centroid node, area weight, and outward unit normal
// per panel. Closed meshes are oriented to have positive signed volume.

#include <array>
#include <cstddef>
#include <vector>

#include "diracshell/types.hpp"

namespace diracshell {

struct Panel {
  std::array<Vec3, 3> vertices;
  Vec3 centroid;
  double area = 0.0;
  Vec3 normal;  // unit

  // Longest edge.
  double diameter() const;
};

struct SurfaceMesh {
  std::vector<Panel> panels;
  bool closed = false;
  std::string label;

  // Counts of the underlying indexed mesh, for Euler characteristic checks.
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;

  std::size_t panel_count() const { return panels.size(); }
  double total_area() const;
  // (1/3) sum (centroid . normal) area; positive for outward closed meshes.
  double signed_volume() const;
  long euler_characteristic() const {
    return static_cast<long>(vertex_count) - static_cast<long>(edge_count) +
           static_cast<long>(panels.size());
  }
  double mean_panel_diameter() const;
  // Bounding-box diagonal.
  double diameter() const;
};

// Build a mesh from an indexed triangle list. Rejects degenerate triangles,
// detects watertightness (every edge shared by exactly two faces, once per
// orientation), and flips all faces of a closed mesh whose signed volume is
// negative.
SurfaceMesh build_mesh(const std::vector<Vec3>& vertices,
                       const std::vector<std::array<int, 3>>& faces,
                       std::string label);

// ASCII OFF file, triangles only. Parse errors carry a line number.
SurfaceMesh load_off(const std::string& path);

// Icosahedron subdivided `level` times with vertices projected to the sphere
// of the given radius: 20 * 4^level panels. level <= 7.
SurfaceMesh make_sphere(int subdivision_level, double radius);

// 2 n^2 triangles tiling [-w, w]^2 x {0} with all normals (0, 0, -1);
// not closed.
SurfaceMesh make_flat_patch(double half_width, int n_per_side);

// Resolve a mesh spec string: a path to an OFF file, "sphere:L", or
// "patch:W,N".
SurfaceMesh parse_mesh_spec(const std::string& spec);

}  // namespace diracshell
