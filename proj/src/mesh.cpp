#include "cdg/mesh.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace cdg {

double Mesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  const Vec2 a = vertices[tri[0]];
  const Vec2 b = vertices[tri[1]];
  const Vec2 c = vertices[tri[2]];
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}

namespace {

// Classify a boundary edge from the grid indices of its endpoints.
EdgeClass classify_boundary(int i0, int j0, int i1, int j1, int n) {
  if (j0 == n && j1 == n) return EdgeClass::gamma1;
  if (j0 == 0 && j1 == 0) return EdgeClass::gamma3;
  if ((i0 == 0 && i1 == 0) || (i0 == n && i1 == n)) return EdgeClass::gamma2;
  throw std::logic_error("boundary edge not on any side of the square");
}

}  // namespace

Mesh build_uniform_mesh(int cells_per_side) {
  if (cells_per_side < 1) {
    throw std::invalid_argument("build_uniform_mesh: cells_per_side must be >= 1");
  }
  const int n = cells_per_side;
  const int np = n + 1;

  Mesh mesh;
  mesh.cells_per_side = n;
  mesh.h = 2.0 / n;

  mesh.vertices.reserve(static_cast<size_t>(np) * np);
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < np; ++i) {
      // i/n and j/n hit 0 and 1 exactly, so boundary coordinates are exact.
      mesh.vertices.emplace_back(-1.0 + 2.0 * (static_cast<double>(i) / n),
                                 -1.0 + 2.0 * (static_cast<double>(j) / n));
    }
  }

  const auto vid = [np](int i, int j) { return j * np + i; };
  mesh.triangles.reserve(static_cast<size_t>(2) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int bl = vid(i, j);
      const int br = vid(i + 1, j);
      const int tr = vid(i + 1, j + 1);
      const int tl = vid(i, j + 1);
      mesh.triangles.push_back({bl, br, tr});  // below the diagonal
      mesh.triangles.push_back({bl, tr, tl});  // above the diagonal
    }
  }

  // Edge discovery in triangle order; the first traversal owns the edge.
  std::map<std::pair<int, int>, int> index_of;
  mesh.triangle_edges.assign(mesh.triangles.size(), {-1, -1, -1});
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int le = 0; le < 3; ++le) {
      const int a = tri[le];
      const int b = tri[(le + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = index_of.find(key);
      if (it == index_of.end()) {
        Edge edge;
        edge.v0 = a;
        edge.v1 = b;
        edge.k_plus = t;
        const Vec2 d = mesh.vertices[b] - mesh.vertices[a];
        edge.length = d.norm();
        edge.normal = Vec2(d.y(), -d.x()) / edge.length;  // outward for CCW traversal
        index_of.emplace(key, mesh.edge_count());
        mesh.triangle_edges[t][le] = mesh.edge_count();
        mesh.edges.push_back(edge);
      } else {
        Edge& edge = mesh.edges[it->second];
        if (edge.k_minus >= 0 || edge.v0 != b || edge.v1 != a) {
          throw std::logic_error("non-manifold or mis-oriented edge");
        }
        edge.k_minus = t;
        mesh.triangle_edges[t][le] = it->second;
      }
    }
  }

  for (int e = 0; e < mesh.edge_count(); ++e) {
    Edge& edge = mesh.edges[e];
    if (edge.is_boundary()) {
      const int i0 = edge.v0 % np, j0 = edge.v0 / np;
      const int i1 = edge.v1 % np, j1 = edge.v1 / np;
      edge.cls = classify_boundary(i0, j0, i1, j1, n);
      mesh.boundary_edges.push_back(e);
    } else {
      edge.cls = EdgeClass::interior;
      mesh.interior_edges.push_back(e);
    }
    if (mesh.in_e0(e)) mesh.e0_edges.push_back(e);
  }

  return mesh;
}

EdgeSets edge_sets(const Mesh& mesh) {
  return {mesh.interior_edges, mesh.boundary_edges, mesh.e0_edges};
}

}  // namespace cdg
