#include <doctest.h>

#include <Eigen/SparseCholesky>
#include <random>

#include "cdg/forms.hpp"
#include "cdg/solver.hpp"

using namespace cdg;

namespace {

SpMat sparse_from(const Eigen::MatrixXd& dense) {
  SpMat m = dense.sparseView();
  m.makeCompressed();
  return m;
}

FrictionOperator scalar_friction(int columns, int column, double coeff) {
  FrictionOperator op;
  op.columns = columns;
  op.entries.push_back({0, column, coeff, 1.0});
  return op;
}

FrictionOperator no_friction(int columns) {
  FrictionOperator op;
  op.columns = columns;
  return op;
}

struct PlateProblem {
  Mesh mesh;
  FeSpaceP2 space;
  LiftingMaps lifting;
  SpMat a;
  FrictionOperator friction;
  Eigen::VectorXd f;

  PlateProblem(int n, int j, double eta)
      : mesh(build_uniform_mesh(n)), space(make_p2_space(mesh)), lifting(space) {
    a = assemble(space, lifting, method_from_int(j), Formulation::primal, 0.3, eta);
    friction = build_friction(space, [](const Vec2&) { return 1.0; });
    f = reduce(space, assemble_load(space, reference_load));
  }
};

}  // namespace

TEST_CASE("spectral norm examples") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 1.0, 2.0, 3.0;
  const double est = spectral_norm(sparse_from(d));
  CHECK(std::abs(est - 3.0) <= 1e-5 * 3.0);

  Eigen::MatrixXd nilpotent = Eigen::MatrixXd::Zero(2, 2);
  nilpotent(0, 1) = 1.0;
  CHECK(std::abs(spectral_norm(sparse_from(nilpotent)) - 1.0) <= 1e-5);

  const double scaled = spectral_norm(sparse_from(Eigen::MatrixXd(-2.5 * d)));
  CHECK(scaled == doctest::Approx(2.5 * est).epsilon(1e-5));

  CHECK(spectral_norm(sparse_from(Eigen::MatrixXd::Zero(4, 4))) == 0.0);
}

TEST_CASE("soft threshold and its residual") {
  Eigen::VectorXd x(3);
  x << 3.0, -0.5, 0.2;
  const Eigen::VectorXd shrunk = soft_threshold(x, 1.0);
  CHECK(shrunk[0] == doctest::Approx(2.0));
  CHECK(shrunk[1] == 0.0);
  CHECK(shrunk[2] == 0.0);

  const Eigen::VectorXd clamped = clamp_to_band(x, 1.0);
  CHECK(clamped[0] == doctest::Approx(1.0));
  CHECK(clamped[1] == doctest::Approx(-0.5));
  CHECK(clamped[2] == doctest::Approx(0.2));

  CHECK((shrunk + clamped - x).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(soft_threshold(x, -1.0), std::invalid_argument);
}

TEST_CASE("scalar minimizers") {
  const SpMat a = sparse_from(Eigen::MatrixXd::Constant(1, 1, 2.0));
  const FrictionOperator b = scalar_friction(1, 0, 1.0);
  PdfpParams params;
  params.tol = 1e-13;

  Eigen::VectorXd f(1);
  f << 3.0;
  const SolveReport active = pdfp_solve(a, b, f, params);
  CHECK(active.converged);
  CHECK(active.u[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(kkt_residual(active.u, a, b, f) < 1e-8);

  f << 0.5;
  const SolveReport stuck = pdfp_solve(a, b, f, params);
  CHECK(stuck.converged);
  CHECK(std::abs(stuck.u[0]) < 1e-9);
  CHECK(kkt_residual(stuck.u, a, b, f) < 1e-9);

  // The exact points certify themselves.
  Eigen::VectorXd exact(1);
  exact << 1.0;
  f << 3.0;
  CHECK(kkt_residual(exact, a, b, f) < 1e-14);
  exact << 0.0;
  f << 0.5;
  CHECK(kkt_residual(exact, a, b, f) < 1e-14);

  // Around the active solution the residual grows continuously from zero.
  for (double delta : {1e-6, 1e-4, 1e-2}) {
    Eigen::VectorXd perturbed(1);
    perturbed << 1.0 + delta;
    f << 3.0;
    const double r = kkt_residual(perturbed, a, b, f);
    CHECK(r > 0.0);
    CHECK(r == doctest::Approx(2.0 * delta).epsilon(1e-9));
  }
}

TEST_CASE("no friction degenerates to the linear solve") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(5, 5);
  d.diagonal() << 1.0, 1.2, 1.5, 1.8, 2.0;
  const SpMat a = sparse_from(d);
  Eigen::VectorXd f(5);
  f << 1.0, -2.0, 0.5, 3.0, -1.0;

  PdfpParams params;
  params.tol = 1e-10;
  const SolveReport r = pdfp_solve(a, no_friction(5), f, params);
  CHECK(r.converged);
  CHECK((a * r.u - f).norm() / f.norm() < 10.0 * params.tol);
}

TEST_CASE("parameter validation") {
  const SpMat a = sparse_from(Eigen::MatrixXd::Constant(1, 1, 2.0));
  const FrictionOperator b = scalar_friction(1, 0, 2.0);  // lambda_max(BB') = 4
  Eigen::VectorXd f(1);
  f << 1.0;

  PdfpParams bad_lambda;
  bad_lambda.lambda = 0.3;  // above 1/4
  CHECK_THROWS_AS(pdfp_solve(a, b, f, bad_lambda), std::invalid_argument);

  PdfpParams good_lambda;
  good_lambda.lambda = 0.25;
  CHECK_NOTHROW(pdfp_solve(a, b, f, good_lambda));

  PdfpParams bad_gamma;
  bad_gamma.gamma = 1.5;  // above 2/|A| = 1 (with upper bias)
  CHECK_THROWS_AS(pdfp_solve(a, b, f, bad_gamma), std::invalid_argument);

  PdfpParams nan_input;
  Eigen::VectorXd bad_f(1);
  bad_f << std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(pdfp_solve(a, b, bad_f, nan_input), std::runtime_error);
}

TEST_CASE("max_iter exhaustion is flagged, not thrown") {
  const SpMat a = sparse_from(Eigen::MatrixXd::Constant(1, 1, 2.0));
  Eigen::VectorXd f(1);
  f << 3.0;
  PdfpParams params;
  params.max_iter = 3;
  const SolveReport r = pdfp_solve(a, scalar_friction(1, 0, 1.0), f, params);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
}

TEST_CASE("oracle on scalar problems") {
  const SpMat a = sparse_from(Eigen::MatrixXd::Constant(1, 1, 2.0));
  const FrictionOperator b = scalar_friction(1, 0, 1.0);

  Eigen::VectorXd f(1);
  f << 3.0;
  const OracleResult active = sign_pattern_oracle(a, b, f);
  CHECK(active.u[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(active.objective == doctest::Approx(-1.0).epsilon(1e-12));

  f << 0.5;
  const OracleResult stuck = sign_pattern_oracle(a, b, f);
  CHECK(stuck.u[0] == 0.0);
  CHECK(stuck.objective == 0.0);

  f << 0.0;
  const OracleResult zero = sign_pattern_oracle(a, b, f);
  CHECK(zero.u.norm() == 0.0);
}

TEST_CASE("oracle rejects too many contact rows") {
  const int n = 13;
  const SpMat a = sparse_from(Eigen::MatrixXd::Identity(n, n));
  FrictionOperator b;
  b.columns = n;
  for (int i = 0; i < n; ++i) b.entries.push_back({i, i, 1.0, 1.0});
  CHECK_THROWS_AS(sign_pattern_oracle(a, b, Eigen::VectorXd::Zero(n)), std::invalid_argument);
}

TEST_CASE("plate problem: solver versus oracle at n=2") {
  for (int j : {1, 3, 5}) {
    const PlateProblem p(2, j, 100.0);
    REQUIRE(p.friction.rows() == 5);

    // The iteration contracts at roughly 1.8/cond(A) per step, so the
    // 1e-6 comparison needs a stopping threshold well below 1e-13.
    PdfpParams params;
    params.tol = 8e-15;
    params.max_iter = 30'000'000;
    const SolveReport pdfp = pdfp_solve(p.a, p.friction, p.f, params);
    CHECK(pdfp.converged);

    const OracleResult oracle = sign_pattern_oracle(p.a, p.friction, p.f);
    CAPTURE(j);
    CHECK((pdfp.u - oracle.u).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK(oracle.objective <= pdfp.objective + 1e-9);
    CHECK(std::abs(oracle.objective - pdfp.objective) <= 1e-9);

    // Reported objective matches an independent recomputation (extended
    // precision, since the quadratic term cancels heavily at eta = 100).
    long double quad = 0.0L, lin = 0.0L;
    const Eigen::MatrixXd dense = Eigen::MatrixXd(p.a);
    for (int r = 0; r < dense.rows(); ++r) {
      for (int c = 0; c < dense.cols(); ++c) {
        quad += 0.5L * static_cast<long double>(dense(r, c)) * pdfp.u[r] * pdfp.u[c];
      }
      lin += static_cast<long double>(p.f[r]) * pdfp.u[r];
    }
    const double recomputed = static_cast<double>(quad - lin) + p.friction.j_h(pdfp.u);
    CHECK(pdfp.objective == doctest::Approx(recomputed).epsilon(1e-12));

    // Converged solves carry an optimality residual of the order of the
    // final primal change scaled back through the step size.
    CHECK(pdfp.kkt <= 1e3 * params.tol * pdfp.spectral_norm_upper *
                          std::max(pdfp.u.norm(), 1.0));
    CHECK(pdfp.kkt <= 1e-6);
  }
}

TEST_CASE("minimizer beats trivial candidates for symmetric methods") {
  const PlateProblem p(2, 1, 100.0);
  PdfpParams params;
  params.tol = 1e-12;
  const SolveReport r = pdfp_solve(p.a, p.friction, p.f, params);

  const double at_zero = 0.0;
  CHECK(r.objective <= at_zero + 1e-12);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Eigen::SparseMatrix<double>(p.a));
  REQUIRE(ldlt.info() == Eigen::Success);
  const Eigen::VectorXd linear = ldlt.solve(p.f);
  CHECK(r.objective <= objective_value(p.a, p.friction, p.f, linear) + 1e-10);
}

TEST_CASE("iteration commutes with dof permutation") {
  const PlateProblem p(2, 1, 100.0);
  const int n = static_cast<int>(p.a.rows());

  std::mt19937_64 rng(97);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);

  Eigen::PermutationMatrix<Eigen::Dynamic> pm(n);
  for (int i = 0; i < n; ++i) pm.indices()[i] = perm[i];  // row i -> row perm[i]

  const SpMat pa = SpMat(pm * Eigen::SparseMatrix<double>(p.a) * pm.transpose());
  const Eigen::VectorXd pf = pm * p.f;
  FrictionOperator pb = p.friction;
  for (auto& entry : pb.entries) entry.column = perm[entry.column];

  PdfpParams params;
  params.tol = 0.0;  // run a fixed number of iterations
  params.max_iter = 1000;
  const SolveReport base = pdfp_solve(p.a, p.friction, p.f, params);
  const SolveReport permuted = pdfp_solve(pa, pb, pf, params);

  const Eigen::VectorXd mapped = pm * base.u;
  CHECK((mapped - permuted.u).cwiseAbs().maxCoeff() < 1e-10);
}
