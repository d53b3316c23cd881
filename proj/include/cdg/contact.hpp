#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cdg/fe_space.hpp"
#include "cdg/lifting.hpp"

namespace cdg {

/// Composite Simpson weights over the nodes of the closed contact boundary:
/// per contact edge, h_e/6 at the endpoints and 4 h_e/6 at the midpoint,
/// accumulated over shared endpoints. Returned (node, weight) pairs are
/// ordered by node index; midpoint nodes follow the vertex-then-edge
/// numbering of the quadratic space.
std::vector<std::pair<int, double>> simpson_weights(const Mesh& mesh);

/// Diagonal-selection friction matrix: one row per contact node with the
/// entry w_i g(x_i) in that node's (reduced) column.
struct FrictionOperator {
  struct Entry {
    int node = -1;
    int column = -1;  ///< reduced dof index
    double weight = 0.0;
    double bound = 0.0;  ///< g at the node
    double coeff() const { return weight * bound; }
  };

  std::vector<Entry> entries;  ///< ordered by node index
  int columns = 0;

  int rows() const { return static_cast<int>(entries.size()); }

  double total_weight() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.weight;
    return s;
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& u_reduced) const {
    Eigen::VectorXd out(rows());
    for (int r = 0; r < rows(); ++r) out[r] = entries[r].coeff() * u_reduced[entries[r].column];
    return out;
  }

  void add_scaled_transpose(const Eigen::VectorXd& v, double scale,
                            Eigen::VectorXd& out) const {
    for (int r = 0; r < rows(); ++r) out[entries[r].column] += scale * entries[r].coeff() * v[r];
  }

  double lambda_max_bbt() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.coeff() * e.coeff());
    return m;
  }

  /// Friction functional sum_i |w_i g(x_i) v_i| over the contact nodes.
  double j_h(const Eigen::VectorXd& u_reduced) const {
    double s = 0.0;
    for (const auto& e : entries) s += std::abs(e.coeff() * u_reduced[e.column]);
    return s;
  }

  SpMat matrix() const;
};

FrictionOperator build_friction(const FeSpaceP2& space,
                                const std::function<double(const Vec2&)>& bound);

}  // namespace cdg
