#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "cdg/mesh.hpp"
#include "cdg/tensor.hpp"

namespace cdg {

/// Values, gradients and Hessians of the six quadratic Lagrange basis
/// functions at a reference point. Hessians do not depend on the point.
struct P2Basis {
  std::array<double, 6> value;
  std::array<Vec2, 6> grad;
  std::array<SymTensor2, 6> hess;
};

/// Basis evaluation on the reference triangle (nodes: three vertices, then
/// the midpoints of edges 01, 12, 20).
P2Basis ref_basis_eval(const Vec2& ref_point);

/// Continuous piecewise-quadratic space on a mesh. Global nodes are the
/// mesh vertices followed by the edge midpoints; dofs whose node lies on
/// the clamped boundary are eliminated from the reduced numbering.
struct FeSpaceP2 {
  const Mesh* mesh = nullptr;

  std::vector<Vec2> nodes;                          ///< size V + E
  std::vector<std::array<int, 6>> element_dofs;     ///< [v0 v1 v2 m01 m12 m20]
  std::vector<bool> clamped;                        ///< node lies on the closed clamped side
  std::vector<int> reduced_index;                   ///< node -> reduced dof, -1 if clamped
  std::vector<int> free_nodes;                      ///< reduced dof -> node
  int clamped_count = 0;

  struct ElementGeometry {
    Vec2 origin;               ///< physical image of the reference origin
    Eigen::Matrix2d jac;       ///< affine map Jacobian
    Eigen::Matrix2d inv_jac_t; ///< transpose inverse, maps reference gradients
    double area = 0.0;
  };
  std::vector<ElementGeometry> geometry;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int free_count() const { return static_cast<int>(free_nodes.size()); }

  Vec2 to_physical(int element, const Vec2& ref_point) const {
    const auto& g = geometry[element];
    return g.origin + g.jac * ref_point;
  }

  /// Physical-frame basis data at a reference point of an element.
  P2Basis basis_at(int element, const Vec2& ref_point) const;

  /// Gradient of the field v (full dof vector) on `element` at a reference
  /// point; the restriction to the element is used, traces included.
  Vec2 field_gradient(int element, const Eigen::VectorXd& v, const Vec2& ref_point) const;

  /// Elementwise (constant) Hessian of the field v on `element`.
  SymTensor2 field_hessian(int element, const Eigen::VectorXd& v) const;

  double field_value(int element, const Eigen::VectorXd& v, const Vec2& ref_point) const;

  /// Zero-padded expansion of a reduced vector / restriction of a full one.
  Eigen::VectorXd expand(const Eigen::VectorXd& reduced) const;
  Eigen::VectorXd restrict_to_free(const Eigen::VectorXd& full) const;
};

FeSpaceP2 make_p2_space(const Mesh& mesh);

/// Nodal interpolant: (u_I)_i = u(x_i). Clamped dofs are not zeroed here.
Eigen::VectorXd interpolate(const FeSpaceP2& space,
                            const std::function<double(const Vec2&)>& u);

}  // namespace cdg
