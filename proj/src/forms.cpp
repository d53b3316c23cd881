#include "cdg/forms.hpp"

#include <stdexcept>
#include <vector>

#include "cdg/quadrature.hpp"

namespace cdg {

Method method_from_int(int j) {
  if (j < 1 || j > 5) throw std::invalid_argument("method index must be in 1..5");
  return static_cast<Method>(j);
}

const char* method_name(Method m) {
  switch (m) {
    case Method::c0ip: return "c0ip";
    case Method::nipg: return "nipg";
    case Method::wells_dung: return "wells-dung";
    case Method::bassi_rebay: return "bassi-rebay";
    case Method::lcdg: return "lcdg";
  }
  return "unknown";
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SpMat from_triplets(int rows, int cols, Triplets& t) {
  SpMat m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

const Vec2 kRefVertex[3] = {Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};

int local_vertex(const Mesh& mesh, int element, int vertex) {
  const auto& tri = mesh.triangles[element];
  for (int i = 0; i < 3; ++i) {
    if (tri[i] == vertex) return i;
  }
  throw std::logic_error("vertex not on element");
}

// Per-edge basis data for the edge terms: dofs supported on the adjacent
// elements, their jump tensors at the edge endpoints, and the averaged
// Hessian of each basis function.
struct EdgeBasisData {
  std::vector<int> dofs;
  std::vector<SymTensor2> jump0, jump1;  ///< per dof
  std::vector<SymTensor2> avg_hess;      ///< per dof
};

EdgeBasisData edge_basis_data(const FeSpaceP2& space, int edge) {
  const Mesh& mesh = *space.mesh;
  const Edge& e = mesh.edges[edge];
  std::vector<int> elements{e.k_plus};
  if (!e.is_boundary()) elements.push_back(e.k_minus);
  const double avg_factor = e.is_boundary() ? 1.0 : 0.5;

  EdgeBasisData data;
  for (int el : elements) {
    for (int d : space.element_dofs[el]) data.dofs.push_back(d);
  }
  std::sort(data.dofs.begin(), data.dofs.end());
  data.dofs.erase(std::unique(data.dofs.begin(), data.dofs.end()), data.dofs.end());
  data.jump0.assign(data.dofs.size(), {});
  data.jump1.assign(data.dofs.size(), {});
  data.avg_hess.assign(data.dofs.size(), {});

  const auto dof_pos = [&data](int dof) {
    return static_cast<int>(std::lower_bound(data.dofs.begin(), data.dofs.end(), dof) -
                            data.dofs.begin());
  };

  for (size_t k = 0; k < elements.size(); ++k) {
    const int el = elements[k];
    const Vec2 normal = (k == 0) ? e.normal : Vec2(-e.normal);
    const Vec2 r0 = kRefVertex[local_vertex(mesh, el, e.v0)];
    const Vec2 r1 = kRefVertex[local_vertex(mesh, el, e.v1)];
    const P2Basis b0 = space.basis_at(el, r0);
    const P2Basis b1 = space.basis_at(el, r1);
    for (int i = 0; i < 6; ++i) {
      const int pos = dof_pos(space.element_dofs[el][i]);
      data.jump0[pos] += SymTensor2::sym_outer(b0.grad[i], normal);
      data.jump1[pos] += SymTensor2::sym_outer(b1.grad[i], normal);
      data.avg_hess[pos] += avg_factor * b0.hess[i];
    }
  }
  return data;
}

}  // namespace

SpMat assemble_volume(const FeSpaceP2& space, double kappa) {
  const QuadratureRule rule = triangle_rule();
  Triplets triplets;
  for (int t = 0; t < space.mesh->triangle_count(); ++t) {
    const P2Basis basis = space.basis_at(t, Vec2(1.0 / 3.0, 1.0 / 3.0));
    const double det = 2.0 * space.geometry[t].area;
    double measure = 0.0;
    for (double w : rule.weights) measure += w * det;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const double value = measure * plate_pairing(basis.hess[i], basis.hess[j], kappa);
        triplets.emplace_back(space.element_dofs[t][i], space.element_dofs[t][j], value);
      }
    }
  }
  return from_triplets(space.node_count(), space.node_count(), triplets);
}

SpMat assemble_consistency(const FeSpaceP2& space, double kappa) {
  const EdgeRule rule = edge_rule();
  Triplets triplets;
  for (int edge : space.mesh->e0_edges) {
    const Edge& e = space.mesh->edges[edge];
    const EdgeBasisData data = edge_basis_data(space, edge);
    const size_t nd = data.dofs.size();
    for (size_t i = 0; i < nd; ++i) {
      for (size_t j = 0; j < nd; ++j) {
        double value = 0.0;
        const SymTensor2 weighted = moment(data.avg_hess[j], kappa);
        for (size_t q = 0; q < rule.points.size(); ++q) {
          const double s = rule.points[q];
          const SymTensor2 jump_i = (1.0 - s) * data.jump0[i] + s * data.jump1[i];
          value += rule.weights[q] * jump_i.ddot(weighted);
        }
        triplets.emplace_back(data.dofs[i], data.dofs[j], e.length * value);
      }
    }
  }
  return from_triplets(space.node_count(), space.node_count(), triplets);
}

SpMat assemble_jump_penalty(const FeSpaceP2& space, double eta) {
  const EdgeRule rule = edge_rule();
  Triplets triplets;
  for (int edge : space.mesh->e0_edges) {
    const EdgeBasisData data = edge_basis_data(space, edge);
    const size_t nd = data.dofs.size();
    for (size_t i = 0; i < nd; ++i) {
      for (size_t j = 0; j < nd; ++j) {
        // The 1/h_e weight cancels the edge measure.
        double value = 0.0;
        for (size_t q = 0; q < rule.points.size(); ++q) {
          const double s = rule.points[q];
          const SymTensor2 jump_i = (1.0 - s) * data.jump0[i] + s * data.jump1[i];
          const SymTensor2 jump_j = (1.0 - s) * data.jump0[j] + s * data.jump1[j];
          value += rule.weights[q] * jump_i.ddot(jump_j);
        }
        triplets.emplace_back(data.dofs[i], data.dofs[j], eta * value);
      }
    }
  }
  return from_triplets(space.node_count(), space.node_count(), triplets);
}

namespace {

// Embedding of elementwise Hessians into the tensor coefficient space.
SpMat hessian_embedding(const FeSpaceP2& space) {
  Triplets triplets;
  for (int t = 0; t < space.mesh->triangle_count(); ++t) {
    const P2Basis basis = space.basis_at(t, Vec2(1.0 / 3.0, 1.0 / 3.0));
    for (int i = 0; i < 6; ++i) {
      const double comp[3] = {basis.hess[i].s11, basis.hess[i].s12, basis.hess[i].s22};
      for (int c = 0; c < 3; ++c) {
        if (comp[c] == 0.0) continue;
        for (int vtx = 0; vtx < 3; ++vtx) {
          triplets.emplace_back(sigma_index(t, c, vtx), space.element_dofs[t][i], comp[c]);
        }
      }
    }
  }
  SpMat m(9 * space.mesh->triangle_count(), space.node_count());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

SpMat sigma_mass_matrix(const FeSpaceP2& space, double kappa) {
  Triplets triplets;
  for (int t = 0; t < space.mesh->triangle_count(); ++t) {
    const Eigen::MatrixXd mass = sigma_element_mass(space, t, kappa);
    for (int r = 0; r < 9; ++r) {
      for (int c = 0; c < 9; ++c) {
        if (mass(r, c) != 0.0) triplets.emplace_back(9 * t + r, 9 * t + c, mass(r, c));
      }
    }
  }
  SpMat m(9 * space.mesh->triangle_count(), 9 * space.mesh->triangle_count());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

LiftingPenalties assemble_lifting_penalties(const FeSpaceP2& space, const LiftingMaps& lifting,
                                            double kappa, double eta) {
  using SpCol = Eigen::SparseMatrix<double>;
  const SpCol lift = SpCol(lifting.global_matrix());
  const SpCol hess = SpCol(hessian_embedding(space));
  const SpCol mass = SpCol(sigma_mass_matrix(space, kappa));

  LiftingPenalties out;
  out.r0_cross = SpMat(SpCol(lift.transpose() * SpCol(mass * hess)));
  out.r0 = SpMat(SpCol(lift.transpose() * SpCol(mass * lift)));
  out.r0_cross.makeCompressed();
  out.r0.makeCompressed();

  Triplets triplets;
  for (const auto& em : lifting.edge_maps()) {
    Eigen::MatrixXd omega_mass =
        Eigen::MatrixXd::Zero(9 * em.elements.size(), 9 * em.elements.size());
    for (size_t k = 0; k < em.elements.size(); ++k) {
      omega_mass.block(9 * k, 9 * k, 9, 9) = sigma_element_mass(space, em.elements[k], kappa);
    }
    const Eigen::MatrixXd local = eta * (em.dof_map.transpose() * omega_mass * em.dof_map);
    for (size_t i = 0; i < em.dofs.size(); ++i) {
      for (size_t j = 0; j < em.dofs.size(); ++j) {
        triplets.emplace_back(em.dofs[i], em.dofs[j], local(i, j));
      }
    }
  }
  out.re = from_triplets(space.node_count(), space.node_count(), triplets);
  return out;
}

SpMat assemble(const FeSpaceP2& space, const LiftingMaps& lifting, Method method,
               Formulation formulation, double kappa, double eta) {
  if (!(kappa > 0.0 && kappa < 0.5)) {
    throw std::invalid_argument("assemble: kappa must lie in (0, 0.5)");
  }
  if (!(eta > 0.0)) throw std::invalid_argument("assemble: eta must be positive");

  const SpMat volume = assemble_volume(space, kappa);
  SpMat full;
  if (formulation == Formulation::primal) {
    const SpMat consistency = assemble_consistency(space, kappa);
    const SpMat consistency_t = transpose_of(consistency);
    switch (method) {
      case Method::c0ip:
        full = volume - consistency - consistency_t + assemble_jump_penalty(space, eta);
        break;
      case Method::nipg:
        full = volume + consistency_t - consistency + assemble_jump_penalty(space, eta);
        break;
      case Method::wells_dung: {
        const LiftingPenalties lp = assemble_lifting_penalties(space, lifting, kappa, eta);
        full = volume - consistency - consistency_t + lp.r0 + lp.re;
        break;
      }
      case Method::bassi_rebay: {
        const LiftingPenalties lp = assemble_lifting_penalties(space, lifting, kappa, eta);
        full = volume - consistency - consistency_t + lp.re;
        break;
      }
      case Method::lcdg: {
        const LiftingPenalties lp = assemble_lifting_penalties(space, lifting, kappa, eta);
        full = volume - consistency - consistency_t + lp.r0 + assemble_jump_penalty(space, eta);
        break;
      }
    }
  } else {
    const LiftingPenalties lp = assemble_lifting_penalties(space, lifting, kappa, eta);
    const SpMat cross_t = transpose_of(lp.r0_cross);
    switch (method) {
      case Method::c0ip:
        full = volume + lp.r0_cross + cross_t + assemble_jump_penalty(space, eta);
        break;
      case Method::nipg:
        full = volume + lp.r0_cross - cross_t + assemble_jump_penalty(space, eta);
        break;
      case Method::wells_dung:
        full = volume + lp.r0_cross + cross_t + lp.r0 + lp.re;
        break;
      case Method::bassi_rebay:
        full = volume + lp.r0_cross + cross_t + lp.re;
        break;
      case Method::lcdg:
        full = volume + lp.r0_cross + cross_t + lp.r0 + assemble_jump_penalty(space, eta);
        break;
    }
  }
  return reduce(space, full);
}

Eigen::VectorXd assemble_load(const FeSpaceP2& space,
                              const std::function<double(const Vec2&)>& f) {
  const QuadratureRule rule = triangle_rule();
  Eigen::VectorXd load = Eigen::VectorXd::Zero(space.node_count());
  for (int t = 0; t < space.mesh->triangle_count(); ++t) {
    const double det = 2.0 * space.geometry[t].area;
    for (size_t q = 0; q < rule.points.size(); ++q) {
      const P2Basis basis = ref_basis_eval(rule.points[q]);
      const double scaled = rule.weights[q] * det * f(space.to_physical(t, rule.points[q]));
      for (int i = 0; i < 6; ++i) {
        load[space.element_dofs[t][i]] += scaled * basis.value[i];
      }
    }
  }
  return load;
}

SpMat reduce(const FeSpaceP2& space, const SpMat& full) {
  Triplets triplets;
  for (int row = 0; row < full.outerSize(); ++row) {
    const int ri = space.reduced_index[row];
    if (ri < 0) continue;
    for (SpMat::InnerIterator it(full, row); it; ++it) {
      const int rj = space.reduced_index[it.col()];
      if (rj >= 0) triplets.emplace_back(ri, rj, it.value());
    }
  }
  return from_triplets(space.free_count(), space.free_count(), triplets);
}

Eigen::VectorXd reduce(const FeSpaceP2& space, const Eigen::VectorXd& full) {
  return space.restrict_to_free(full);
}

double max_abs(const SpMat& m) {
  double v = 0.0;
  for (int row = 0; row < m.outerSize(); ++row) {
    for (SpMat::InnerIterator it(m, row); it; ++it) {
      v = std::max(v, std::abs(it.value()));
    }
  }
  return v;
}

double max_abs_diff(const SpMat& a, const SpMat& b) {
  return max_abs(SpMat(a - b));
}

SpMat transpose_of(const SpMat& m) {
  SpMat t = SpMat(m.transpose());
  t.makeCompressed();
  return t;
}

double reference_load(const Vec2& p) {
  const double x = p.x();
  const double y = p.y();
  const double ax = 1.0 - x * x;
  const double ay = 1.0 - y * y;
  return 24.0 * ax * ax + 24.0 * ay * ay + 32.0 * (3.0 * x * x - 1.0) * (3.0 * y * y - 1.0);
}

}  // namespace cdg
