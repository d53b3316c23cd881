#pragma once

#include <Eigen/Dense>

namespace cdg {

using Vec2 = Eigen::Vector2d;

/// Symmetric 2x2 tensor value. The double-dot product weights the
/// off-diagonal component twice: s:t = s11 t11 + 2 s12 t12 + s22 t22.
struct SymTensor2 {
  double s11 = 0.0;
  double s12 = 0.0;
  double s22 = 0.0;

  /// Symmetrized outer product (a (x) b + b (x) a) / 2.
  static SymTensor2 sym_outer(const Vec2& a, const Vec2& b) {
    return {a.x() * b.x(), 0.5 * (a.x() * b.y() + a.y() * b.x()), a.y() * b.y()};
  }

  double trace() const { return s11 + s22; }
  double ddot(const SymTensor2& o) const {
    return s11 * o.s11 + 2.0 * s12 * o.s12 + s22 * o.s22;
  }
  double norm2() const { return ddot(*this); }

  SymTensor2& operator+=(const SymTensor2& o) {
    s11 += o.s11;
    s12 += o.s12;
    s22 += o.s22;
    return *this;
  }
  SymTensor2& operator-=(const SymTensor2& o) {
    s11 -= o.s11;
    s12 -= o.s12;
    s22 -= o.s22;
    return *this;
  }
  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend SymTensor2 operator*(double c, const SymTensor2& t) {
    return {c * t.s11, c * t.s12, c * t.s22};
  }
};

/// Plate constitutive map (1-k) t + k tr(t) I applied to a symmetric tensor.
inline SymTensor2 moment(const SymTensor2& t, double kappa) {
  const double iso = kappa * t.trace();
  return {(1.0 - kappa) * t.s11 + iso, (1.0 - kappa) * t.s12, (1.0 - kappa) * t.s22 + iso};
}

/// Energy pairing (1-k) s:t + k tr(s) tr(t). Reduces to the plain
/// L2 pairing of symmetric tensors for kappa = 0.
inline double plate_pairing(const SymTensor2& s, const SymTensor2& t, double kappa) {
  return moment(s, kappa).ddot(t);
}

}  // namespace cdg
