#pragma once

#include <functional>

#include <Eigen/Sparse>

#include "cdg/lifting.hpp"

namespace cdg {

/// The five C0 DG discretizations.
enum class Method : int {
  c0ip = 1,        ///< symmetric interior penalty
  nipg = 2,        ///< non-symmetric interior penalty
  wells_dung = 3,  ///< lifted penalty with full-lift product term
  bassi_rebay = 4, ///< per-edge lifted penalty only
  lcdg = 5,        ///< full-lift product term with scaled jump penalty
};

enum class Formulation { primal, compact };

Method method_from_int(int j);
const char* method_name(Method m);

/// Bending stiffness: (1-k) hess(u):hess(v) + k tr(hess u) tr(hess v),
/// integrated elementwise. Full-size, unconstrained.
SpMat assemble_volume(const FeSpaceP2& space, double kappa);

/// Consistency pairing D(i,j) = sum over jump-carrying edges of
/// int_e [[grad phi_i]] : ((1-k){hess phi_j} + k tr({hess phi_j}) I) ds.
SpMat assemble_consistency(const FeSpaceP2& space, double kappa);

/// Jump penalty eta * sum_e (1/h_e) int_e [[grad phi_i]]:[[grad phi_j]] ds.
SpMat assemble_jump_penalty(const FeSpaceP2& space, double eta);

struct LiftingPenalties {
  SpMat r0_cross;  ///< int r0([[grad phi_i]]) : ((1-k) hess phi_j + k tr I); no eta
  SpMat r0;        ///< full-lift product under the plate pairing; no eta
  SpMat re;        ///< eta-weighted sum of per-edge lift products
};

LiftingPenalties assemble_lifting_penalties(const FeSpaceP2& space, const LiftingMaps& lifting,
                                            double kappa, double eta);

/// Stiffness matrix of the chosen method and formulation with clamped dofs
/// eliminated. Throws for kappa outside (0, 0.5) or eta <= 0.
SpMat assemble(const FeSpaceP2& space, const LiftingMaps& lifting, Method method,
               Formulation formulation, double kappa, double eta);

/// Load vector (f, phi_j), full-size.
Eigen::VectorXd assemble_load(const FeSpaceP2& space,
                              const std::function<double(const Vec2&)>& f);

/// Restriction of a full matrix / vector to the free (unclamped) dofs.
SpMat reduce(const FeSpaceP2& space, const SpMat& full);
Eigen::VectorXd reduce(const FeSpaceP2& space, const Eigen::VectorXd& full);

// Small helpers shared by tests and the verification suite.
double max_abs(const SpMat& m);
double max_abs_diff(const SpMat& a, const SpMat& b);
SpMat transpose_of(const SpMat& m);

/// Load of the reference experiment:
/// f = 24 (1-x^2)^2 + 24 (1-y^2)^2 + 32 (3x^2-1)(3y^2-1).
double reference_load(const Vec2& p);

}  // namespace cdg
