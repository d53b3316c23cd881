#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cdg/contact.hpp"

namespace cdg {

/// Estimate of the matrix 2-norm by power iteration on A'A, converged to a
/// relative tolerance of 1e-6. Throws if the iteration does not settle.
double spectral_norm(const SpMat& a);

/// Componentwise shrinkage sgn(x) (|x| - t)+.
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double t);

/// Residual of the shrinkage: clamps each component to [-t, t].
Eigen::VectorXd clamp_to_band(const Eigen::VectorXd& x, double t);

struct PdfpParams {
  double lambda = 0.0;  ///< dual step; <= 0 selects 1/lambda_max(BB')
  double gamma = 0.0;   ///< primal step; <= 0 selects 1.8 / (upper 2-norm estimate)
  double tol = 1e-10;   ///< relative primal-change stopping threshold
  long max_iter = 2'000'000;
  Eigen::VectorXd u0;   ///< empty = zero start
  Eigen::VectorXd v0;
};

struct SolveReport {
  Eigen::VectorXd u;
  long iterations = 0;
  bool converged = false;
  double rel_change = 0.0;
  double kkt = 0.0;
  double objective = 0.0;
  double gamma_used = 0.0;
  double lambda_used = 0.0;
  double spectral_norm_upper = 0.0;  ///< upper-biased estimate backing gamma
};

/// 0.5 u'Au + |Bu|_1 - u'f.
double objective_value(const SpMat& a, const FrictionOperator& b, const Eigen::VectorXd& f,
                       const Eigen::VectorXd& u);

/// Primal-dual fixed-point iteration for min 0.5 u'Au + |Bu|_1 - u'f.
/// Step parameters are validated against computed spectral estimates;
/// exhaustion of max_iter is reported, not thrown.
SolveReport pdfp_solve(const SpMat& a, const FrictionOperator& b, const Eigen::VectorXd& f,
                       const PdfpParams& params = {});

/// Sup-norm of the smallest optimality-system violation at u: the residual
/// Au - f + B's minimized over multipliers s with s_i fixed to the active
/// sign where (Bu)_i is nonzero and |s_i| <= 1 elsewhere.
double kkt_residual(const Eigen::VectorXd& u, const SpMat& a, const FrictionOperator& b,
                    const Eigen::VectorXd& f);

struct OracleResult {
  Eigen::VectorXd u;
  double objective = 0.0;
};

/// Exact minimizer by enumeration of all 3^m contact sign patterns
/// (m <= 12). Each candidate solves the linear optimality system of its
/// pattern; a pattern is accepted when the solution signs and multiplier
/// bounds are consistent. Ties resolve to the lowest objective.
OracleResult sign_pattern_oracle(const SpMat& a, const FrictionOperator& b,
                                 const Eigen::VectorXd& f);

}  // namespace cdg
