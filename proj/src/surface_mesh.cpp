#include "diracshell/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace diracshell {

namespace {

Panel make_panel(const Vec3& a, const Vec3& b, const Vec3& c) {
  Panel p;
  p.vertices = {a, b, c};
  const Vec3 cross = (b - a).cross(c - a);
  const double cn = cross.norm();
  p.area = 0.5 * cn;
  p.normal = cross / cn;
  p.centroid = (a + b + c) / 3.0;
  return p;
}

void flip_panel(Panel& p) {
  std::swap(p.vertices[1], p.vertices[2]);
  p.normal = -p.normal;
}

}  // namespace

double Panel::diameter() const {
  return std::max({(vertices[1] - vertices[0]).norm(),
                   (vertices[2] - vertices[1]).norm(),
                   (vertices[0] - vertices[2]).norm()});
}

double SurfaceMesh::total_area() const {
  double s = 0.0;
  for (const Panel& p : panels) s += p.area;
  return s;
}

double SurfaceMesh::signed_volume() const {
  double v = 0.0;
  for (const Panel& p : panels) v += p.centroid.dot(p.normal) * p.area;
  return v / 3.0;
}

double SurfaceMesh::mean_panel_diameter() const {
  if (panels.empty()) return 0.0;
  double s = 0.0;
  for (const Panel& p : panels) s += p.diameter();
  return s / static_cast<double>(panels.size());
}

double SurfaceMesh::diameter() const {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const Panel& p : panels) {
    for (const Vec3& v : p.vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  }
  return (hi - lo).norm();
}

SurfaceMesh build_mesh(const std::vector<Vec3>& vertices,
                       const std::vector<std::array<int, 3>>& faces,
                       std::string label) {
  SurfaceMesh mesh;
  mesh.label = std::move(label);
  mesh.vertex_count = vertices.size();
  mesh.panels.reserve(faces.size());

  double scale = 0.0;
  for (const Vec3& v : vertices) scale = std::max(scale, v.norm());
  const double area_floor = 1e-14 * std::max(scale * scale, 1e-300);

  // Undirected edge -> (count, directed balance). A watertight oriented mesh
  // has count == 2 and balance == 0 on every edge.
  std::map<std::pair<int, int>, std::pair<int, int>> edges;
  for (const auto& f : faces) {
    for (int k = 0; k < 3; ++k) {
      if (f[k] < 0 || f[k] >= static_cast<int>(vertices.size()))
        throw MeshError("build_mesh: vertex index out of range");
    }
    Panel p = make_panel(vertices[f[0]], vertices[f[1]], vertices[f[2]]);
    if (!(p.area > area_floor))
      throw MeshError("build_mesh: degenerate (zero-area) triangle");
    mesh.panels.push_back(p);
    for (int k = 0; k < 3; ++k) {
      const int i = f[k];
      const int j = f[(k + 1) % 3];
      auto& e = edges[{std::min(i, j), std::max(i, j)}];
      e.first += 1;
      e.second += (i < j) ? 1 : -1;
    }
  }
  mesh.edge_count = edges.size();

  mesh.closed = !faces.empty();
  for (const auto& [key, e] : edges) {
    if (e.first != 2 || e.second != 0) {
      mesh.closed = false;
      break;
    }
  }

  if (mesh.closed && mesh.signed_volume() < 0.0) {
    for (Panel& p : mesh.panels) flip_panel(p);
  }
  return mesh;
}

SurfaceMesh load_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("load_off: cannot open '" + path + "'");

  std::size_t line_no = 0;
  auto next_line = [&](std::string& out) -> bool {
    while (std::getline(in, out)) {
      ++line_no;
      const auto pos = out.find('#');
      if (pos != std::string::npos) out.erase(pos);
      if (out.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) -> MeshError {
    return MeshError("load_off: " + what + " at line " +
                     std::to_string(line_no));
  };

  std::string line;
  if (!next_line(line)) throw fail("empty file");
  {
    std::istringstream ss(line);
    std::string magic;
    ss >> magic;
    if (magic != "OFF") throw fail("missing OFF header");
  }

  std::size_t nv = 0, nf = 0, ne = 0;
  if (!next_line(line)) throw fail("missing counts line");
  {
    std::istringstream ss(line);
    if (!(ss >> nv >> nf >> ne)) throw fail("bad counts line");
  }

  std::vector<Vec3> vertices(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!next_line(line)) throw fail("unexpected end of vertex list");
    std::istringstream ss(line);
    if (!(ss >> vertices[i].x() >> vertices[i].y() >> vertices[i].z()))
      throw fail("bad vertex");
  }

  std::vector<std::array<int, 3>> faces(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    if (!next_line(line)) throw fail("unexpected end of face list");
    std::istringstream ss(line);
    int k = 0;
    if (!(ss >> k)) throw fail("bad face");
    if (k != 3) throw fail("non-triangular face");
    if (!(ss >> faces[i][0] >> faces[i][1] >> faces[i][2]))
      throw fail("bad face indices");
  }

  try {
    return build_mesh(vertices, faces, path);
  } catch (const MeshError& e) {
    throw MeshError(std::string(e.what()) + " (file '" + path + "')");
  }
}

SurfaceMesh make_sphere(int subdivision_level, double radius) {
  if (subdivision_level < 0 || subdivision_level > 7)
    throw GuardError("make_sphere: subdivision level must be in [0, 7]");
  if (!(radius > 0.0))
    throw std::invalid_argument("make_sphere: radius must be > 0");

  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (Vec3& v : verts) v *= radius / v.norm();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int level = 0; level < subdivision_level; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int i, int j) -> int {
      const auto key = std::make_pair(std::min(i, j), std::max(i, j));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec3 v = 0.5 * (verts[i] + verts[j]);
      v *= radius / v.norm();
      verts.push_back(v);
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> refined;
    refined.reserve(4 * faces.size());
    for (const auto& f : faces) {
      const int a = mid(f[0], f[1]);
      const int b = mid(f[1], f[2]);
      const int c = mid(f[2], f[0]);
      refined.push_back({f[0], a, c});
      refined.push_back({f[1], b, a});
      refined.push_back({f[2], c, b});
      refined.push_back({a, b, c});
    }
    faces.swap(refined);
  }

  return build_mesh(verts, faces,
                    "sphere:" + std::to_string(subdivision_level));
}

SurfaceMesh make_flat_patch(double half_width, int n_per_side) {
  if (!(half_width > 0.0))
    throw std::invalid_argument("make_flat_patch: half_width must be > 0");
  if (n_per_side < 1)
    throw std::invalid_argument("make_flat_patch: n_per_side must be >= 1");

  const int n = n_per_side;
  std::vector<Vec3> verts;
  verts.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int iy = 0; iy <= n; ++iy) {
    for (int ix = 0; ix <= n; ++ix) {
      const double x = -half_width + 2.0 * half_width * ix / n;
      const double y = -half_width + 2.0 * half_width * iy / n;
      verts.emplace_back(x, y, 0.0);
    }
  }
  auto vid = [n](int ix, int iy) { return iy * (n + 1) + ix; };

  // Winding chosen so the geometric normal is (0, 0, -1).
  std::vector<std::array<int, 3>> faces;
  faces.reserve(2u * n * n);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const int v00 = vid(ix, iy), v10 = vid(ix + 1, iy);
      const int v01 = vid(ix, iy + 1), v11 = vid(ix + 1, iy + 1);
      faces.push_back({v00, v01, v10});
      faces.push_back({v01, v11, v10});
    }
  }

  std::ostringstream label;
  label << "patch:" << half_width << "," << n;
  return build_mesh(verts, faces, label.str());
}

SurfaceMesh parse_mesh_spec(const std::string& spec) {
  if (spec.rfind("sphere:", 0) == 0) {
    int level = 0;
    try {
      level = std::stoi(spec.substr(7));
    } catch (const std::exception&) {
      throw MeshError("bad mesh spec '" + spec + "' (want sphere:L)");
    }
    return make_sphere(level, 1.0);
  }
  if (spec.rfind("patch:", 0) == 0) {
    const std::string args = spec.substr(6);
    const auto comma = args.find(',');
    if (comma == std::string::npos)
      throw MeshError("bad mesh spec '" + spec + "' (want patch:W,N)");
    double w = 0.0;
    int n = 0;
    try {
      w = std::stod(args.substr(0, comma));
      n = std::stoi(args.substr(comma + 1));
    } catch (const std::exception&) {
      throw MeshError("bad mesh spec '" + spec + "' (want patch:W,N)");
    }
    return make_flat_patch(w, n);
  }
  return load_off(spec);
}

}  // namespace diracshell
