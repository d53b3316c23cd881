#pragma once

#include <array>
#include <vector>

#include "cdg/tensor.hpp"

namespace cdg {

/// Boundary partition of the square plate (-1,1)^2: the plate is clamped on
/// the top side (gamma1), free on the two vertical sides (gamma2) and in
/// frictional contact along the bottom side (gamma3).
enum class EdgeClass { interior, gamma1, gamma2, gamma3 };

struct Edge {
  int v0 = -1;       ///< endpoints, ordered as traversed by k_plus (CCW)
  int v1 = -1;
  int k_plus = -1;   ///< owning triangle; defines the normal orientation
  int k_minus = -1;  ///< second triangle, -1 on the boundary
  Vec2 normal;       ///< unit, outward from k_plus
  double length = 0.0;
  EdgeClass cls = EdgeClass::interior;

  bool is_boundary() const { return k_minus < 0; }
};

/// Uniform triangulation of [-1,1]^2. Immutable after construction.
struct Mesh {
  int cells_per_side = 0;
  double h = 0.0;  ///< square-cell size, 2/n

  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;       ///< CCW vertex triples
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> triangle_edges;  ///< local edge i = (v_i, v_{i+1})

  // Edge index lists, ascending. e0 = interior + clamped-boundary edges,
  // i.e. every edge not lying on the free or contact boundary.
  std::vector<int> interior_edges;
  std::vector<int> boundary_edges;
  std::vector<int> e0_edges;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  bool in_e0(int edge) const {
    const EdgeClass c = edges[edge].cls;
    return c == EdgeClass::interior || c == EdgeClass::gamma1;
  }

  double triangle_area(int t) const;
};

/// Builds the n x n uniform mesh, each cell split by its bottom-left to
/// top-right diagonal. Throws std::invalid_argument for n < 1.
Mesh build_uniform_mesh(int cells_per_side);

struct EdgeSets {
  std::vector<int> interior;  ///< shared by two triangles
  std::vector<int> boundary;  ///< on the domain boundary
  std::vector<int> e0;        ///< interior plus clamped-boundary edges
};

EdgeSets edge_sets(const Mesh& mesh);

}  // namespace cdg
