#include "cdg/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace cdg {

double spectral_norm(const SpMat& a) {
  const int n = static_cast<int>(a.cols());
  if (n == 0) return 0.0;
  Eigen::VectorXd q = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  double sigma_prev = -1.0;
  constexpr int kMaxIter = 200'000;
  for (int it = 0; it < kMaxIter; ++it) {
    const Eigen::VectorXd w = a * q;
    const double lambda = w.squaredNorm();  // q' A'A q with |q| = 1
    if (lambda == 0.0) return 0.0;
    const double sigma = std::sqrt(lambda);
    if (sigma_prev >= 0.0 && std::abs(sigma - sigma_prev) <= 1e-6 * sigma) return sigma;
    sigma_prev = sigma;
    Eigen::VectorXd z = a.transpose() * w;
    const double zn = z.norm();
    if (zn == 0.0) return sigma;
    q = z / zn;
  }
  throw std::runtime_error("spectral_norm: power iteration did not converge");
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double t) {
  if (t < 0.0) throw std::invalid_argument("soft_threshold: threshold must be >= 0");
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double m = std::abs(x[i]) - t;
    out[i] = m > 0.0 ? (x[i] > 0.0 ? m : -m) : 0.0;
  }
  return out;
}

Eigen::VectorXd clamp_to_band(const Eigen::VectorXd& x, double t) {
  if (t < 0.0) throw std::invalid_argument("clamp_to_band: threshold must be >= 0");
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i], -t, t);
  return out;
}

double objective_value(const SpMat& a, const FrictionOperator& b, const Eigen::VectorXd& f,
                       const Eigen::VectorXd& u) {
  // The quadratic term cancels from products several orders larger than the
  // result (penalty-scaled entries against O(10) dofs), so accumulate in
  // extended precision to keep the value trustworthy to ~1e-12 relative.
  long double quad = 0.0L;
  for (int row = 0; row < a.outerSize(); ++row) {
    long double row_sum = 0.0L;
    for (SpMat::InnerIterator it(a, row); it; ++it) {
      row_sum += static_cast<long double>(it.value()) * u[it.col()];
    }
    quad += row_sum * u[row];
  }
  long double friction = 0.0L;
  for (const auto& entry : b.entries) {
    friction += std::abs(static_cast<long double>(entry.coeff()) * u[entry.column]);
  }
  long double linear = 0.0L;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    linear += static_cast<long double>(u[i]) * f[i];
  }
  return static_cast<double>(0.5L * quad + friction - linear);
}

SolveReport pdfp_solve(const SpMat& a, const FrictionOperator& b, const Eigen::VectorXd& f,
                       const PdfpParams& params) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || f.size() != n || b.columns != n) {
    throw std::invalid_argument("pdfp_solve: dimension mismatch");
  }

  SolveReport report;
  report.spectral_norm_upper = spectral_norm(a) * 1.01;

  const double bbt_max = b.lambda_max_bbt();
  double lambda = params.lambda;
  if (lambda <= 0.0) {
    lambda = bbt_max > 0.0 ? 1.0 / bbt_max : 1.0;
  } else if (bbt_max > 0.0 && lambda * bbt_max > 1.0 + 1e-12) {
    throw std::invalid_argument("pdfp_solve: lambda outside (0, 1/lambda_max(BB')]");
  }

  double gamma = params.gamma;
  if (gamma <= 0.0) {
    gamma = report.spectral_norm_upper > 0.0 ? 1.8 / report.spectral_norm_upper : 1.0;
  } else if (report.spectral_norm_upper > 0.0 && gamma >= 2.0 / report.spectral_norm_upper) {
    throw std::invalid_argument("pdfp_solve: gamma outside (0, 2/|A|_2)");
  }
  report.gamma_used = gamma;
  report.lambda_used = lambda;

  const int m = b.rows();
  Eigen::VectorXd u = params.u0.size() ? params.u0 : Eigen::VectorXd::Zero(n);
  Eigen::VectorXd v = params.v0.size() ? params.v0 : Eigen::VectorXd::Zero(m);
  if (u.size() != n || v.size() != m) {
    throw std::invalid_argument("pdfp_solve: initial iterate size mismatch");
  }

  const double band = gamma / lambda;
  Eigen::VectorXd next(n);
  double rel = std::numeric_limits<double>::infinity();

  long k = 0;
  for (; k < params.max_iter; ++k) {
    next.noalias() = a * u;
    next = u - gamma * (next - f);  // half step
    double change_sq = 0.0;
    double norm_sq = 0.0;
    for (int r = 0; r < m; ++r) {
      const auto& entry = b.entries[r];
      const double c = entry.coeff();
      const double w = c * next[entry.column] + (1.0 - lambda * c * c) * v[r];
      v[r] = std::clamp(w, -band, band);
      next[entry.column] -= lambda * c * v[r];
    }
    for (int i = 0; i < n; ++i) {
      const double d = next[i] - u[i];
      change_sq += d * d;
      norm_sq += u[i] * u[i];
    }
    rel = std::sqrt(change_sq) / std::max(std::sqrt(norm_sq), 1.0);
    u.swap(next);
    if (!std::isfinite(rel)) {
      throw std::runtime_error("pdfp_solve: iterate became non-finite at iteration " +
                               std::to_string(k + 1));
    }
    if (rel < params.tol) {
      ++k;
      report.converged = true;
      break;
    }
  }

  report.u = std::move(u);
  report.iterations = k;
  report.rel_change = rel;
  report.kkt = kkt_residual(report.u, a, b, f);
  report.objective = objective_value(a, b, f, report.u);
  return report;
}

double kkt_residual(const Eigen::VectorXd& u, const SpMat& a, const FrictionOperator& b,
                    const Eigen::VectorXd& f) {
  constexpr double kActivityTol = 1e-10;
  Eigen::VectorXd residual = a * u - f;

  // Fold the best admissible multiplier into the residual at contact dofs.
  for (const auto& entry : b.entries) {
    const double c = entry.coeff();
    const double bu = c * u[entry.column];
    double& r = residual[entry.column];
    if (std::abs(bu) > kActivityTol) {
      r += c * (bu > 0.0 ? 1.0 : -1.0);
    } else if (c > 0.0) {
      r += c * std::clamp(-r / c, -1.0, 1.0);
    }
  }
  return residual.size() ? residual.cwiseAbs().maxCoeff() : 0.0;
}

OracleResult sign_pattern_oracle(const SpMat& a, const FrictionOperator& b,
                                 const Eigen::VectorXd& f) {
  if (b.rows() > 12) throw std::invalid_argument("sign_pattern_oracle: too many contact rows");
  const int n = static_cast<int>(a.rows());
  const Eigen::MatrixXd dense = Eigen::MatrixXd(a);

  // Rows with a zero coefficient contribute nothing to |Bu|_1 and carry no
  // pattern choice.
  std::vector<int> active_rows;
  for (int r = 0; r < b.rows(); ++r) {
    if (b.entries[r].coeff() > 0.0) active_rows.push_back(r);
  }
  const int m = static_cast<int>(active_rows.size());

  long total = 1;
  for (int r = 0; r < m; ++r) total *= 3;

  bool found = false;
  OracleResult best;
  std::vector<int> pattern(m, 0);  // -1, 0, +1

  for (long code = 0; code < total; ++code) {
    long rem = code;
    for (int r = 0; r < m; ++r) {
      pattern[r] = static_cast<int>(rem % 3) - 1;
      rem /= 3;
    }

    std::vector<int> keep;
    keep.reserve(n);
    std::vector<bool> pinned(n, false);
    for (int r = 0; r < m; ++r) {
      if (pattern[r] == 0) pinned[b.entries[active_rows[r]].column] = true;
    }
    for (int i = 0; i < n; ++i) {
      if (!pinned[i]) keep.push_back(i);
    }

    Eigen::VectorXd rhs = f;
    for (int r = 0; r < m; ++r) {
      const auto& entry = b.entries[active_rows[r]];
      if (pattern[r] != 0) rhs[entry.column] -= entry.coeff() * pattern[r];
    }

    const int nk = static_cast<int>(keep.size());
    Eigen::MatrixXd sys(nk, nk);
    Eigen::VectorXd sys_rhs(nk);
    for (int i = 0; i < nk; ++i) {
      sys_rhs[i] = rhs[keep[i]];
      for (int j = 0; j < nk; ++j) sys(i, j) = dense(keep[i], keep[j]);
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd x = lu.solve(sys_rhs);

    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < nk; ++i) u[keep[i]] = x[i];

    bool ok = true;
    const Eigen::VectorXd res = f - dense * u;
    for (int r = 0; r < m && ok; ++r) {
      const auto& entry = b.entries[active_rows[r]];
      if (pattern[r] == 0) {
        const double s = res[entry.column] / entry.coeff();
        ok = std::abs(s) <= 1.0 + 1e-10;
      } else {
        const double value = u[entry.column];
        ok = (pattern[r] > 0) ? (value > 0.0) : (value < 0.0);
      }
    }
    if (!ok) continue;

    const double obj = objective_value(a, b, f, u);
    if (!found || obj < best.objective) {
      best.u = u;
      best.objective = obj;
      found = true;
    }
  }

  if (!found) {
    throw std::runtime_error("sign_pattern_oracle: no sign pattern admits a consistent solution");
  }
  return best;
}

}  // namespace cdg
