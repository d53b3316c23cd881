#include "cdg/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "cdg/lifting.hpp"
#include "cdg/quadrature.hpp"

namespace cdg {

EnergyNormParts energy_norm_parts(const FeSpaceP2& space, const Eigen::VectorXd& v_full) {
  EnergyNormParts parts;
  for (int t = 0; t < space.mesh->triangle_count(); ++t) {
    parts.broken_h2_sq += space.geometry[t].area * space.field_hessian(t, v_full).norm2();
  }
  const EdgeRule rule = edge_rule();
  for (int edge : space.mesh->e0_edges) {
    const EdgeJump jump = gradient_jump(space, v_full, edge);
    // The edge measure cancels against the 1/h_e weight.
    for (size_t q = 0; q < rule.points.size(); ++q) {
      parts.jump_sq += rule.weights[q] * jump.at(rule.points[q]).norm2();
    }
  }
  // Third derivatives of piecewise quadratics vanish identically.
  parts.h3_sq = 0.0;
  return parts;
}

double energy_norm(const FeSpaceP2& space, const Eigen::VectorXd& v_full) {
  return energy_norm_parts(space, v_full).total();
}

double h1_seminorm(const FeSpaceP2& space, const Eigen::VectorXd& v_full) {
  const QuadratureRule rule = triangle_rule();
  double sum = 0.0;
  for (int t = 0; t < space.mesh->triangle_count(); ++t) {
    const double det = 2.0 * space.geometry[t].area;
    for (size_t q = 0; q < rule.points.size(); ++q) {
      sum += rule.weights[q] * det *
             space.field_gradient(t, v_full, rule.points[q]).squaredNorm();
    }
  }
  return std::sqrt(sum);
}

double l2_norm(const FeSpaceP2& space, const Eigen::VectorXd& v_full) {
  const QuadratureRule rule = triangle_rule();
  double sum = 0.0;
  for (int t = 0; t < space.mesh->triangle_count(); ++t) {
    const double det = 2.0 * space.geometry[t].area;
    for (size_t q = 0; q < rule.points.size(); ++q) {
      const double value = space.field_value(t, v_full, rule.points[q]);
      sum += rule.weights[q] * det * value * value;
    }
  }
  return std::sqrt(sum);
}

double evaluate_field(const FeSpaceP2& space, const Eigen::VectorXd& v_full, const Vec2& p) {
  const Mesh& mesh = *space.mesh;
  const int n = mesh.cells_per_side;
  const double h = mesh.h;

  const int ci = std::clamp(static_cast<int>((p.x() + 1.0) / h), 0, n - 1);
  const int cj = std::clamp(static_cast<int>((p.y() + 1.0) / h), 0, n - 1);
  const double lx = std::clamp((p.x() + 1.0) / h - ci, 0.0, 1.0);
  const double ly = std::clamp((p.y() + 1.0) / h - cj, 0.0, 1.0);

  const int cell = cj * n + ci;
  if (ly <= lx) {
    return space.field_value(2 * cell, v_full, Vec2(lx - ly, ly));
  }
  return space.field_value(2 * cell + 1, v_full, Vec2(lx, ly - lx));
}

Eigen::VectorXd prolong(const FeSpaceP2& coarse, const Eigen::VectorXd& v_coarse_full,
                        const FeSpaceP2& fine) {
  const int nc = coarse.mesh->cells_per_side;
  const int nf = fine.mesh->cells_per_side;
  int ratio = nf / std::max(nc, 1);
  if (nf <= nc || nc * ratio != nf || (ratio & (ratio - 1)) != 0) {
    throw std::invalid_argument("prolong: target level is not a nested refinement");
  }
  if (v_coarse_full.size() != coarse.node_count()) {
    throw std::invalid_argument("prolong: dof vector size mismatch");
  }

  Eigen::VectorXd out(fine.node_count());
  for (int i = 0; i < fine.node_count(); ++i) {
    out[i] = evaluate_field(coarse, v_coarse_full, fine.nodes[i]);
  }
  return out;
}

}  // namespace cdg
