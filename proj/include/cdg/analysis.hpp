#pragma once

#include <Eigen/Dense>

#include "cdg/fe_space.hpp"

namespace cdg {

/// Squared pieces of the mesh-dependent energy norm: broken Hessian
/// seminorm, scaled gradient-jump seminorm over the jump-carrying edges,
/// and the h^2-weighted third-derivative term (identically zero for
/// piecewise quadratics; kept so the sum is the full definition).
struct EnergyNormParts {
  double broken_h2_sq = 0.0;
  double jump_sq = 0.0;
  double h3_sq = 0.0;

  double star_sq() const { return broken_h2_sq + jump_sq; }
  double total() const { return std::sqrt(star_sq() + h3_sq); }
};

EnergyNormParts energy_norm_parts(const FeSpaceP2& space, const Eigen::VectorXd& v_full);
double energy_norm(const FeSpaceP2& space, const Eigen::VectorXd& v_full);

double h1_seminorm(const FeSpaceP2& space, const Eigen::VectorXd& v_full);
double l2_norm(const FeSpaceP2& space, const Eigen::VectorXd& v_full);

/// Point evaluation of a field on the uniform mesh (cell lookup).
double evaluate_field(const FeSpaceP2& space, const Eigen::VectorXd& v_full, const Vec2& p);

/// Exact re-representation of a coarse piecewise-quadratic field on a
/// nested finer mesh (fine cells-per-side = coarse * 2^k, k >= 1).
/// Throws for non-nested level pairs.
Eigen::VectorXd prolong(const FeSpaceP2& coarse, const Eigen::VectorXd& v_coarse_full,
                        const FeSpaceP2& fine);

}  // namespace cdg
