#include "cdg/fe_space.hpp"

#include <cassert>
#include <stdexcept>

namespace cdg {

P2Basis ref_basis_eval(const Vec2& p) {
  const double x = p.x();
  const double y = p.y();
  assert(x >= -1e-12 && y >= -1e-12 && x + y <= 1.0 + 1e-12);

  const double l0 = 1.0 - x - y;
  const double l1 = x;
  const double l2 = y;
  const Vec2 g0(-1.0, -1.0), g1(1.0, 0.0), g2(0.0, 1.0);

  P2Basis b;
  b.value = {l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0),
             4.0 * l0 * l1,         4.0 * l1 * l2,         4.0 * l2 * l0};
  b.grad = {(4.0 * l0 - 1.0) * g0,
            (4.0 * l1 - 1.0) * g1,
            (4.0 * l2 - 1.0) * g2,
            4.0 * (l1 * g0 + l0 * g1),
            4.0 * (l2 * g1 + l1 * g2),
            4.0 * (l0 * g2 + l2 * g0)};
  b.hess = {4.0 * SymTensor2::sym_outer(g0, g0),
            4.0 * SymTensor2::sym_outer(g1, g1),
            4.0 * SymTensor2::sym_outer(g2, g2),
            8.0 * SymTensor2::sym_outer(g0, g1),
            8.0 * SymTensor2::sym_outer(g1, g2),
            8.0 * SymTensor2::sym_outer(g2, g0)};
  return b;
}

FeSpaceP2 make_p2_space(const Mesh& mesh) {
  FeSpaceP2 space;
  space.mesh = &mesh;

  const int nv = mesh.vertex_count();
  space.nodes = mesh.vertices;
  space.nodes.reserve(nv + mesh.edge_count());
  for (const Edge& e : mesh.edges) {
    space.nodes.push_back(0.5 * (mesh.vertices[e.v0] + mesh.vertices[e.v1]));
  }

  space.element_dofs.resize(mesh.triangle_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto& te = mesh.triangle_edges[t];
    space.element_dofs[t] = {tri[0], tri[1], tri[2], nv + te[0], nv + te[1], nv + te[2]};
  }

  // Clamped nodes: endpoints and midpoints of the clamped-boundary edges.
  space.clamped.assign(space.nodes.size(), false);
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (mesh.edges[e].cls == EdgeClass::gamma1) {
      space.clamped[mesh.edges[e].v0] = true;
      space.clamped[mesh.edges[e].v1] = true;
      space.clamped[nv + e] = true;
    }
  }
  space.reduced_index.assign(space.nodes.size(), -1);
  for (int i = 0; i < space.node_count(); ++i) {
    if (space.clamped[i]) {
      ++space.clamped_count;
    } else {
      space.reduced_index[i] = static_cast<int>(space.free_nodes.size());
      space.free_nodes.push_back(i);
    }
  }

  space.geometry.resize(mesh.triangle_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec2 a = mesh.vertices[tri[0]];
    const Vec2 b = mesh.vertices[tri[1]];
    const Vec2 c = mesh.vertices[tri[2]];
    auto& g = space.geometry[t];
    g.origin = a;
    g.jac.col(0) = b - a;
    g.jac.col(1) = c - a;
    const double det = g.jac.determinant();
    if (det <= 0.0) throw std::runtime_error("make_p2_space: degenerate or flipped element");
    g.area = 0.5 * det;
    g.inv_jac_t = g.jac.inverse().transpose();
  }
  return space;
}

P2Basis FeSpaceP2::basis_at(int element, const Vec2& ref_point) const {
  P2Basis b = ref_basis_eval(ref_point);
  const Eigen::Matrix2d& m = geometry[element].inv_jac_t;
  for (int i = 0; i < 6; ++i) {
    b.grad[i] = m * b.grad[i];
    Eigen::Matrix2d hh;
    hh << b.hess[i].s11, b.hess[i].s12, b.hess[i].s12, b.hess[i].s22;
    const Eigen::Matrix2d hp = m * hh * m.transpose();
    b.hess[i] = {hp(0, 0), hp(0, 1), hp(1, 1)};
  }
  return b;
}

Vec2 FeSpaceP2::field_gradient(int element, const Eigen::VectorXd& v, const Vec2& ref_point) const {
  const P2Basis b = basis_at(element, ref_point);
  Vec2 g = Vec2::Zero();
  for (int i = 0; i < 6; ++i) g += v[element_dofs[element][i]] * b.grad[i];
  return g;
}

SymTensor2 FeSpaceP2::field_hessian(int element, const Eigen::VectorXd& v) const {
  const P2Basis b = basis_at(element, Vec2(1.0 / 3.0, 1.0 / 3.0));
  SymTensor2 h;
  for (int i = 0; i < 6; ++i) h += v[element_dofs[element][i]] * b.hess[i];
  return h;
}

double FeSpaceP2::field_value(int element, const Eigen::VectorXd& v, const Vec2& ref_point) const {
  const P2Basis b = ref_basis_eval(ref_point);
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += v[element_dofs[element][i]] * b.value[i];
  return s;
}

Eigen::VectorXd FeSpaceP2::expand(const Eigen::VectorXd& reduced) const {
  if (reduced.size() != free_count()) throw std::invalid_argument("expand: size mismatch");
  Eigen::VectorXd full = Eigen::VectorXd::Zero(node_count());
  for (int r = 0; r < free_count(); ++r) full[free_nodes[r]] = reduced[r];
  return full;
}

Eigen::VectorXd FeSpaceP2::restrict_to_free(const Eigen::VectorXd& full) const {
  if (full.size() != node_count()) throw std::invalid_argument("restrict_to_free: size mismatch");
  Eigen::VectorXd red(free_count());
  for (int r = 0; r < free_count(); ++r) red[r] = full[free_nodes[r]];
  return red;
}

Eigen::VectorXd interpolate(const FeSpaceP2& space,
                            const std::function<double(const Vec2&)>& u) {
  Eigen::VectorXd v(space.node_count());
  for (int i = 0; i < space.node_count(); ++i) v[i] = u(space.nodes[i]);
  return v;
}

}  // namespace cdg
