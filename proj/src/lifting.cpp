#include "cdg/lifting.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdg {

namespace {

// Reference coordinates of an element's vertices.
const Vec2 kRefVertex[3] = {Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};

int local_vertex(const Mesh& mesh, int element, int vertex) {
  const auto& tri = mesh.triangles[element];
  for (int i = 0; i < 3; ++i) {
    if (tri[i] == vertex) return i;
  }
  throw std::logic_error("vertex not on element");
}

void require_in_e0(const Mesh& mesh, int edge) {
  const EdgeClass c = mesh.edges[edge].cls;
  if (c == EdgeClass::gamma2 || c == EdgeClass::gamma3) {
    throw std::invalid_argument("edge carries no jump terms (free or contact boundary)");
  }
}

// One-sided jump contribution of an element's trace at both edge endpoints.
void accumulate_side(const FeSpaceP2& space, const Eigen::VectorXd& v, int element,
                     const Edge& edge, const Vec2& normal, EdgeJump& out) {
  const Mesh& mesh = *space.mesh;
  const Vec2 r0 = kRefVertex[local_vertex(mesh, element, edge.v0)];
  const Vec2 r1 = kRefVertex[local_vertex(mesh, element, edge.v1)];
  out.j0 += SymTensor2::sym_outer(space.field_gradient(element, v, r0), normal);
  out.j1 += SymTensor2::sym_outer(space.field_gradient(element, v, r1), normal);
}

}  // namespace

EdgeJump gradient_jump(const FeSpaceP2& space, const Eigen::VectorXd& v_full, int edge) {
  const Mesh& mesh = *space.mesh;
  require_in_e0(mesh, edge);
  const Edge& e = mesh.edges[edge];
  EdgeJump jump;
  accumulate_side(space, v_full, e.k_plus, e, e.normal, jump);
  if (!e.is_boundary()) {
    accumulate_side(space, v_full, e.k_minus, e, Vec2(-e.normal), jump);
  }
  return jump;
}

SymTensor2 sigma_at(const FeSpaceP2& space, const Eigen::VectorXd& coeffs, int element,
                    const Vec2& ref_point) {
  (void)space;
  const double l[3] = {1.0 - ref_point.x() - ref_point.y(), ref_point.x(), ref_point.y()};
  SymTensor2 t;
  double* comp[3] = {&t.s11, &t.s12, &t.s22};
  for (int c = 0; c < 3; ++c) {
    for (int j = 0; j < 3; ++j) {
      *comp[c] += coeffs[sigma_index(element, c, j)] * l[j];
    }
  }
  return t;
}

Eigen::MatrixXd sigma_element_mass(const FeSpaceP2& space, int element, double kappa) {
  const double area = space.geometry[element].area;
  Eigen::Matrix3d p1_mass;
  p1_mass << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  p1_mass *= area / 12.0;

  // Component metric for (11, 12, 22) under (1-k) s:t + k tr(s) tr(t).
  Eigen::Matrix3d metric;
  metric << 1.0, 0.0, kappa, 0.0, 2.0 * (1.0 - kappa), 0.0, kappa, 0.0, 1.0;

  Eigen::MatrixXd mass(9, 9);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      mass.block<3, 3>(3 * a, 3 * b) = metric(a, b) * p1_mass;
    }
  }
  return mass;
}

double sigma_pairing(const FeSpaceP2& space, const Eigen::VectorXd& a,
                     const Eigen::VectorXd& b, double kappa) {
  double sum = 0.0;
  for (int t = 0; t < space.mesh->triangle_count(); ++t) {
    const Eigen::MatrixXd mass = sigma_element_mass(space, t, kappa);
    sum += a.segment(9 * t, 9).dot(mass * b.segment(9 * t, 9));
  }
  return sum;
}

namespace {

// Per-element lift of a linearly varying edge tensor: three decoupled
// 3x3 solves against the scalar P1 mass matrix (the factor 2 of the
// off-diagonal metric component cancels between the two sides).
Eigen::VectorXd lift_on_element(const FeSpaceP2& space, int element, const Edge& edge,
                                const EdgeJump& phi, double avg_factor) {
  const Mesh& mesh = *space.mesh;
  const double area = space.geometry[element].area;
  if (area <= 0.0) throw std::runtime_error("local_lift: degenerate element");

  // Closed-form inverse of (area/12) [[2,1,1],[1,2,1],[1,1,2]].
  Eigen::Matrix3d mass_inv;
  mass_inv << 3, -1, -1, -1, 3, -1, -1, -1, 3;
  mass_inv *= 3.0 / area;

  const int a = local_vertex(mesh, element, edge.v0);
  const int b = local_vertex(mesh, element, edge.v1);

  Eigen::VectorXd coeffs(9);
  const double comp0[3] = {phi.j0.s11, phi.j0.s12, phi.j0.s22};
  const double comp1[3] = {phi.j1.s11, phi.j1.s12, phi.j1.s22};
  for (int c = 0; c < 3; ++c) {
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    rhs[a] = edge.length * (comp0[c] / 3.0 + comp1[c] / 6.0);
    rhs[b] = edge.length * (comp0[c] / 6.0 + comp1[c] / 3.0);
    coeffs.segment<3>(3 * c) = -avg_factor * (mass_inv * rhs);
  }
  return coeffs;
}

}  // namespace

LocalLift local_lift(const FeSpaceP2& space, int edge, const EdgeJump& phi) {
  const Mesh& mesh = *space.mesh;
  require_in_e0(mesh, edge);
  const Edge& e = mesh.edges[edge];

  LocalLift lift;
  lift.elements.push_back(e.k_plus);
  if (!e.is_boundary()) lift.elements.push_back(e.k_minus);
  const double avg_factor = e.is_boundary() ? 1.0 : 0.5;

  lift.coeffs.resize(9 * lift.elements.size());
  for (size_t k = 0; k < lift.elements.size(); ++k) {
    lift.coeffs.segment(9 * k, 9) = lift_on_element(space, lift.elements[k], e, phi, avg_factor);
  }
  return lift;
}

Eigen::VectorXd global_lift(const FeSpaceP2& space, const Eigen::VectorXd& v_full) {
  Eigen::VectorXd field = Eigen::VectorXd::Zero(9 * space.mesh->triangle_count());
  for (int edge : space.mesh->e0_edges) {
    local_lift(space, edge, gradient_jump(space, v_full, edge)).add_to(field);
  }
  return field;
}

LiftingMaps::LiftingMaps(const FeSpaceP2& space) : space_(&space) {
  const Mesh& mesh = *space.mesh;
  maps_.reserve(mesh.e0_edges.size());

  std::vector<Eigen::Triplet<double>> triplets;
  for (int edge : mesh.e0_edges) {
    const Edge& e = mesh.edges[edge];
    EdgeMap em;
    em.edge = edge;
    em.elements.push_back(e.k_plus);
    if (!e.is_boundary()) em.elements.push_back(e.k_minus);

    em.dofs.clear();
    for (int el : em.elements) {
      for (int d : space.element_dofs[el]) em.dofs.push_back(d);
    }
    std::sort(em.dofs.begin(), em.dofs.end());
    em.dofs.erase(std::unique(em.dofs.begin(), em.dofs.end()), em.dofs.end());

    const auto dof_pos = [&em](int dof) {
      return static_cast<int>(std::lower_bound(em.dofs.begin(), em.dofs.end(), dof) -
                              em.dofs.begin());
    };

    // Jump of each basis function, evaluated at the edge endpoints.
    em.jump_map = Eigen::MatrixXd::Zero(6, em.dofs.size());
    for (size_t k = 0; k < em.elements.size(); ++k) {
      const int el = em.elements[k];
      const Vec2 normal = (k == 0) ? e.normal : Vec2(-e.normal);
      const Vec2 r0 = kRefVertex[local_vertex(mesh, el, e.v0)];
      const Vec2 r1 = kRefVertex[local_vertex(mesh, el, e.v1)];
      const P2Basis b0 = space.basis_at(el, r0);
      const P2Basis b1 = space.basis_at(el, r1);
      for (int i = 0; i < 6; ++i) {
        const int col = dof_pos(space.element_dofs[el][i]);
        const SymTensor2 t0 = SymTensor2::sym_outer(b0.grad[i], normal);
        const SymTensor2 t1 = SymTensor2::sym_outer(b1.grad[i], normal);
        em.jump_map(0, col) += t0.s11;
        em.jump_map(1, col) += t0.s12;
        em.jump_map(2, col) += t0.s22;
        em.jump_map(3, col) += t1.s11;
        em.jump_map(4, col) += t1.s12;
        em.jump_map(5, col) += t1.s22;
      }
    }

    em.lift_from_jump = Eigen::MatrixXd::Zero(9 * em.elements.size(), 6);
    for (int c = 0; c < 6; ++c) {
      EdgeJump unit;
      double* slots[6] = {&unit.j0.s11, &unit.j0.s12, &unit.j0.s22,
                          &unit.j1.s11, &unit.j1.s12, &unit.j1.s22};
      *slots[c] = 1.0;
      const LocalLift lift = local_lift(space, edge, unit);
      em.lift_from_jump.col(c) = lift.coeffs;
    }

    em.dof_map = em.lift_from_jump * em.jump_map;

    for (size_t k = 0; k < em.elements.size(); ++k) {
      for (int r = 0; r < 9; ++r) {
        for (size_t j = 0; j < em.dofs.size(); ++j) {
          const double value = em.dof_map(9 * k + r, j);
          if (value != 0.0) {
            triplets.emplace_back(9 * em.elements[k] + r, em.dofs[j], value);
          }
        }
      }
    }
    maps_.push_back(std::move(em));
  }

  global_.resize(9 * mesh.triangle_count(), space.node_count());
  global_.setFromTriplets(triplets.begin(), triplets.end());
  global_.makeCompressed();
}

}  // namespace cdg
