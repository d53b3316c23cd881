#pragma once

#include <vector>

#include "cdg/tensor.hpp"

namespace cdg {

/// Quadrature on the reference triangle {x,y >= 0, x+y <= 1}.
/// Weights sum to the reference area 1/2.
struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int degree = 0;  ///< all polynomials up to this total degree are exact
};

/// Conical-product Gauss rule, exact through total degree 7 (20 points,
/// closed-form nodes). min_degree documents the caller's requirement.
QuadratureRule triangle_rule(int min_degree = 6);

/// Gauss-Legendre rule on [0,1]; weights sum to 1.
struct EdgeRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;
};

EdgeRule edge_rule();         ///< two points, exact through degree 3
EdgeRule edge_rule_degree7(); ///< four points, for independent cross-checks

}  // namespace cdg
