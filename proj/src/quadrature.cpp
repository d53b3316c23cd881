#include "cdg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace cdg {

namespace {

// Gauss-Legendre nodes/weights on [0,1], closed forms for n = 2, 4, 5.
struct LineRule {
  std::vector<double> x;
  std::vector<double> w;
};

LineRule gauss01(int n) {
  LineRule r;
  switch (n) {
    case 2: {
      const double d = 0.5 / std::sqrt(3.0);
      r.x = {0.5 - d, 0.5 + d};
      r.w = {0.5, 0.5};
      break;
    }
    case 4: {
      const double a = std::sqrt((3.0 - 2.0 * std::sqrt(6.0 / 5.0)) / 7.0);
      const double b = std::sqrt((3.0 + 2.0 * std::sqrt(6.0 / 5.0)) / 7.0);
      const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
      const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
      r.x = {0.5 * (1.0 - b), 0.5 * (1.0 - a), 0.5 * (1.0 + a), 0.5 * (1.0 + b)};
      r.w = {0.5 * wb, 0.5 * wa, 0.5 * wa, 0.5 * wb};
      break;
    }
    case 5: {
      const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      r.x = {0.5 * (1.0 - b), 0.5 * (1.0 - a), 0.5, 0.5 * (1.0 + a), 0.5 * (1.0 + b)};
      r.w = {0.5 * wb, 0.5 * wa, 0.5 * (128.0 / 225.0), 0.5 * wa, 0.5 * wb};
      break;
    }
    default:
      throw std::invalid_argument("gauss01: unsupported point count");
  }
  return r;
}

}  // namespace

QuadratureRule triangle_rule(int min_degree) {
  if (min_degree > 7) {
    throw std::invalid_argument("triangle_rule: exactness beyond degree 7 not provided");
  }
  // Collapsed-square product rule: x = u, y = v (1-u), Jacobian (1-u).
  // A degree-7 integrand has degree <= 8 in u (5-point rule, exact to 9)
  // and <= 7 in v (4-point rule, exact to 7).
  const LineRule gu = gauss01(5);
  const LineRule gv = gauss01(4);
  QuadratureRule rule;
  rule.degree = 7;
  for (size_t i = 0; i < gu.x.size(); ++i) {
    for (size_t j = 0; j < gv.x.size(); ++j) {
      const double u = gu.x[i];
      const double v = gv.x[j];
      rule.points.emplace_back(u, v * (1.0 - u));
      rule.weights.push_back(gu.w[i] * gv.w[j] * (1.0 - u));
    }
  }
  return rule;
}

EdgeRule edge_rule() {
  const LineRule g = gauss01(2);
  return {g.x, g.w, 3};
}

EdgeRule edge_rule_degree7() {
  const LineRule g = gauss01(4);
  return {g.x, g.w, 7};
}

}  // namespace cdg
