#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cdg/fe_space.hpp"

namespace cdg {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Symmetric-tensor-valued function varying linearly along an edge, stored
/// by its values at the edge endpoints (parameter s in [0,1], v0 -> v1).
struct EdgeJump {
  SymTensor2 j0;
  SymTensor2 j1;

  SymTensor2 at(double s) const { return (1.0 - s) * j0 + s * j1; }
};

/// Jump of grad(v) across edge `e`: the symmetrized outer product with the
/// edge normal, two-sided on interior edges and one-sided on clamped
/// boundary edges. Throws for edges on the free or contact boundary.
EdgeJump gradient_jump(const FeSpaceP2& space, const Eigen::VectorXd& v_full, int edge);

/// Discontinuous P1 symmetric-tensor fields are stored as 9 coefficients per
/// element: component-major, vertex-minor. Components are (11, 12, 22).
inline int sigma_index(int element, int comp, int vertex) {
  return 9 * element + 3 * comp + vertex;
}

SymTensor2 sigma_at(const FeSpaceP2& space, const Eigen::VectorXd& coeffs, int element,
                    const Vec2& ref_point);

/// 9x9 Gram matrix of the element's tensor basis under the pairing
/// (1-k) s:t + k tr(s) tr(t); kappa = 0 gives the plain L2 pairing.
Eigen::MatrixXd sigma_element_mass(const FeSpaceP2& space, int element, double kappa);

/// Integral of the pairing of two coefficient fields over the domain.
double sigma_pairing(const FeSpaceP2& space, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& b, double kappa);

/// Result of lifting one edge datum: coefficients on the supporting
/// elements (one or two); zero elsewhere.
struct LocalLift {
  std::vector<int> elements;
  Eigen::VectorXd coeffs;  ///< 9 per element, same order as `elements`

  void add_to(Eigen::VectorXd& field) const {
    for (size_t k = 0; k < elements.size(); ++k) {
      field.segment(9 * elements[k], 9) += coeffs.segment(9 * k, 9);
    }
  }
};

/// Solves the per-element tensor mass systems defining the lifting of an
/// edge datum into the discontinuous P1 tensor space.
LocalLift local_lift(const FeSpaceP2& space, int edge, const EdgeJump& phi);

/// Precomputed linear maps from dof vectors to lifted tensor coefficients,
/// one per edge carrying jump terms. Immutable once built.
class LiftingMaps {
 public:
  struct EdgeMap {
    int edge = -1;
    std::vector<int> elements;       ///< supporting elements (1 or 2)
    std::vector<int> dofs;           ///< global dofs with support on them
    Eigen::MatrixXd jump_map;        ///< 6 x |dofs|: endpoint tensor values
    Eigen::MatrixXd lift_from_jump;  ///< (9 |elements|) x 6
    Eigen::MatrixXd dof_map;         ///< lift_from_jump * jump_map
  };

  explicit LiftingMaps(const FeSpaceP2& space);

  const std::vector<EdgeMap>& edge_maps() const { return maps_; }
  const SpMat& global_matrix() const { return global_; }  ///< (9 T) x N
  const FeSpaceP2& space() const { return *space_; }

 private:
  const FeSpaceP2* space_;
  std::vector<EdgeMap> maps_;
  SpMat global_;
};

/// Sum of the local lifts of the gradient jumps of v over all jump-carrying
/// edges, as a global coefficient field.
Eigen::VectorXd global_lift(const FeSpaceP2& space, const Eigen::VectorXd& v_full);

}  // namespace cdg
