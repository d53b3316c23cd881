#include <doctest.h>

#include <random>

#include "cdg/analysis.hpp"
#include "cdg/forms.hpp"
#include "cdg/quadrature.hpp"

using namespace cdg;

namespace {

struct Workspace {
  Mesh mesh;
  FeSpaceP2 space;
  LiftingMaps lifting;

  explicit Workspace(int n) : mesh(build_uniform_mesh(n)), space(make_p2_space(mesh)), lifting(space) {}
};

Eigen::VectorXd random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

// Alternate route for the bending integrand:
// lap(u) lap(v) + (1-k)(2 u12 v12 - u11 v22 - u22 v11), assembled directly.
SpMat assemble_volume_laplacian_route(const FeSpaceP2& space, double kappa) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (int t = 0; t < space.mesh->triangle_count(); ++t) {
    const P2Basis b = space.basis_at(t, Vec2(1.0 / 3.0, 1.0 / 3.0));
    const double area = space.geometry[t].area;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const SymTensor2& hi = b.hess[i];
        const SymTensor2& hj = b.hess[j];
        const double value =
            hi.trace() * hj.trace() +
            (1.0 - kappa) * (2.0 * hi.s12 * hj.s12 - hi.s11 * hj.s22 - hi.s22 * hj.s11);
        triplets.emplace_back(space.element_dofs[t][i], space.element_dofs[t][j], area * value);
      }
    }
  }
  SpMat m(space.node_count(), space.node_count());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

TEST_CASE("volume form: kernel, smooth value, and the two integrand routes") {
  const Workspace w(2);
  const double kappa = 0.3;
  const SpMat volume = assemble_volume(w.space, kappa);

  // Affine fields lie in the kernel of the unconstrained operator.
  const Eigen::VectorXd affine =
      interpolate(w.space, [](const Vec2& p) { return 0.5 - 1.5 * p.x() + 2.0 * p.y(); });
  CHECK((volume * affine).cwiseAbs().maxCoeff() < 1e-12 * max_abs(volume));

  // (1-y)^2 has Hessian diag(0,2): integrand is 4 regardless of kappa.
  for (double k : {0.3, 0.05, 0.45}) {
    const SpMat vk = assemble_volume(w.space, k);
    const Eigen::VectorXd p =
        interpolate(w.space, [](const Vec2& q) { return (1.0 - q.y()) * (1.0 - q.y()); });
    CHECK(p.dot(vk * p) == doctest::Approx(16.0).epsilon(1e-12));
  }

  const SpMat other = assemble_volume_laplacian_route(w.space, kappa);
  CHECK(max_abs_diff(volume, other) < 1e-12 * max_abs(volume));
}

TEST_CASE("consistency term: locality and zero-jump columns") {
  const Workspace w(2);
  const SpMat d = assemble_consistency(w.space, 0.3);

  // Columns against a jump-free field vanish.
  const Eigen::VectorXd p =
      interpolate(w.space, [](const Vec2& q) { return (1.0 - q.y()) * (1.0 - q.y()); });
  CHECK((transpose_of(d) * p).cwiseAbs().maxCoeff() < 1e-11);

  // Rows/columns couple only dofs sharing an edge neighborhood.
  const Mesh& mesh = w.mesh;
  for (int row = 0; row < d.outerSize(); ++row) {
    for (SpMat::InnerIterator it(d, row); it; ++it) {
      if (it.value() == 0.0) continue;
      bool shared = false;
      for (int e : mesh.e0_edges) {
        const Edge& edge = mesh.edges[e];
        bool has_row = false, has_col = false;
        for (int el : {edge.k_plus, edge.k_minus}) {
          if (el < 0) continue;
          for (int dof : w.space.element_dofs[el]) {
            has_row |= dof == it.row();
            has_col |= dof == it.col();
          }
        }
        if (has_row && has_col) shared = true;
      }
      CHECK(shared);
    }
  }
}

TEST_CASE("penalty pieces: symmetry, definiteness, lift comparison") {
  const Workspace w(2);
  std::mt19937_64 rng(3);
  const double kappa = 0.3;

  const SpMat jump = assemble_jump_penalty(w.space, 1.0);
  const LiftingPenalties lp = assemble_lifting_penalties(w.space, w.lifting, kappa, 1.0);

  CHECK(max_abs_diff(jump, transpose_of(jump)) < 1e-13 * max_abs(jump));
  CHECK(max_abs_diff(lp.r0, transpose_of(lp.r0)) < 1e-13 * max_abs(lp.r0));
  CHECK(max_abs_diff(lp.re, transpose_of(lp.re)) < 1e-13 * max_abs(lp.re));
  CHECK(max_abs_diff(lp.r0_cross, transpose_of(lp.r0_cross)) > 1e-8 * max_abs(lp.r0_cross));

  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd x = random_vector(w.space.node_count(), rng);
    CHECK(x.dot(jump * x) >= -1e-12);
    CHECK(x.dot(lp.r0 * x) >= -1e-12);
    CHECK(x.dot(lp.re * x) >= -1e-12);
    // Pointwise Cauchy-Schwarz over at most three edges per element.
    CHECK(x.dot(lp.r0 * x) <= 3.0 * x.dot(lp.re * x) + 1e-10);
  }

  // Penalties scale linearly in eta.
  const SpMat jump10 = assemble_jump_penalty(w.space, 10.0);
  CHECK(max_abs_diff(jump10, SpMat(10.0 * jump)) < 1e-12 * max_abs(jump10));
  const LiftingPenalties lp10 = assemble_lifting_penalties(w.space, w.lifting, kappa, 10.0);
  CHECK(max_abs_diff(lp10.re, SpMat(10.0 * lp.re)) < 1e-12 * max_abs(lp10.re));
  CHECK(max_abs_diff(lp10.r0, lp.r0) < 1e-13 * max_abs(lp.r0));  // no eta here
}

TEST_CASE("primal and compact formulations assemble the same operator") {
  for (int n : {2, 4}) {
    const Workspace w(n);
    for (int j = 1; j <= 5; ++j) {
      for (double eta : {1.0, 10.0, 100.0}) {
        const SpMat primal =
            assemble(w.space, w.lifting, method_from_int(j), Formulation::primal, 0.3, eta);
        const SpMat compact =
            assemble(w.space, w.lifting, method_from_int(j), Formulation::compact, 0.3, eta);
        const double gap = max_abs_diff(primal, compact) / max_abs(primal);
        CAPTURE(j);
        CAPTURE(eta);
        CHECK(gap < 1e-10);
      }
    }
  }
}

TEST_CASE("method symmetry pattern") {
  const Workspace w(2);
  for (int j : {1, 3, 4, 5}) {
    const SpMat a = assemble(w.space, w.lifting, method_from_int(j), Formulation::primal, 0.3, 10.0);
    CHECK(max_abs_diff(a, transpose_of(a)) < 1e-11 * max_abs(a));
  }
  const SpMat nipg =
      assemble(w.space, w.lifting, Method::nipg, Formulation::primal, 0.3, 10.0);
  CHECK(max_abs_diff(nipg, transpose_of(nipg)) > 1e-6 * max_abs(nipg));
}

TEST_CASE("jump-free first argument gives the same action for all methods") {
  const Workspace w(4);
  const Eigen::VectorXd p = w.space.restrict_to_free(
      interpolate(w.space, [](const Vec2& q) { return (1.0 - q.y()) * (1.0 - q.y()); }));

  Eigen::VectorXd first;
  for (int j = 1; j <= 5; ++j) {
    const SpMat a = assemble(w.space, w.lifting, method_from_int(j), Formulation::primal, 0.3, 100.0);
    const Eigen::VectorXd action = a * p;
    if (j == 1) {
      first = action;
    } else {
      CHECK((action - first).cwiseAbs().maxCoeff() < 1e-9 * first.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("assembly rejects invalid inputs") {
  const Workspace w(2);
  CHECK_THROWS_AS(assemble(w.space, w.lifting, Method::c0ip, Formulation::primal, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble(w.space, w.lifting, Method::c0ip, Formulation::primal, 0.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble(w.space, w.lifting, Method::c0ip, Formulation::primal, 0.3, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(method_from_int(6), std::invalid_argument);
}

TEST_CASE("load vector") {
  const Workspace w(3);
  const Eigen::VectorXd ones = assemble_load(w.space, [](const Vec2&) { return 1.0; });
  CHECK(ones.sum() == doctest::Approx(4.0).epsilon(1e-13));

  const Eigen::VectorXd zero = assemble_load(w.space, [](const Vec2&) { return 0.0; });
  CHECK(zero.norm() == 0.0);

  const Eigen::VectorXd paper = assemble_load(w.space, reference_load);
  CHECK(paper.sum() == doctest::Approx(102.4).epsilon(1e-12));
}

TEST_CASE("assembly is deterministic") {
  const Workspace w(2);
  const SpMat a = assemble(w.space, w.lifting, Method::lcdg, Formulation::compact, 0.3, 10.0);
  const SpMat b = assemble(w.space, w.lifting, Method::lcdg, Formulation::compact, 0.3, 10.0);
  REQUIRE(a.nonZeros() == b.nonZeros());
  for (int row = 0; row < a.outerSize(); ++row) {
    SpMat::InnerIterator ia(a, row), ib(b, row);
    for (; ia && ib; ++ia, ++ib) {
      CHECK(ia.col() == ib.col());
      CHECK(ia.value() == ib.value());  // bitwise
    }
  }
}

TEST_CASE("tampering breaks the equivalence check") {
  const Workspace w(2);
  const SpMat primal = assemble(w.space, w.lifting, Method::c0ip, Formulation::primal, 0.3, 10.0);
  SpMat compact = assemble(w.space, w.lifting, Method::c0ip, Formulation::compact, 0.3, 10.0);
  compact.coeffRef(0, 0) += 1e-6;
  CHECK(max_abs_diff(primal, compact) / max_abs(primal) > 1e-10);
}

TEST_CASE("reduced dimensions") {
  const Workspace w(4);
  const SpMat a = assemble(w.space, w.lifting, Method::c0ip, Formulation::primal, 0.3, 100.0);
  const int expected = w.space.node_count() - (2 * 4 + 1);
  CHECK(a.rows() == expected);
  CHECK(a.cols() == expected);
}
