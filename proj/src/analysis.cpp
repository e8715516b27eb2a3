#include "minimax/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace minimax {

Matrix assemble_block(const MinimaxOracle& o, const Point& z,
                      HessianBlock which) {
  const Index n = o.leader_dim(), m = o.follower_dim();
  Index rows = 0, cols = 0;
  switch (which) {
    case HessianBlock::kXx: rows = n; cols = n; break;
    case HessianBlock::kXy: rows = n; cols = m; break;
    case HessianBlock::kYx: rows = m; cols = n; break;
    case HessianBlock::kYy: rows = m; cols = m; break;
  }
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    const Vector e = Vector::Unit(cols, j);
    switch (which) {
      case HessianBlock::kXx: out.col(j) = o.hvp_xx(z, e); break;
      case HessianBlock::kXy: out.col(j) = o.hvp_xy(z, e); break;
      case HessianBlock::kYx: out.col(j) = o.hvp_yx(z, e); break;
      case HessianBlock::kYy: out.col(j) = o.hvp_yy(z, e); break;
    }
  }
  return out;
}

Matrix assemble_total_xx(const MinimaxOracle& o, const Point& z) {
  const Matrix xx = assemble_block(o, z, HessianBlock::kXx);
  const Matrix xy = assemble_block(o, z, HessianBlock::kXy);
  const Matrix yx = assemble_block(o, z, HessianBlock::kYx);
  const Matrix yy = assemble_block(o, z, HessianBlock::kYy);
  return xx - xy * yy.lu().solve(yx);
}

PointClassification classify_point(const MinimaxOracle& o, const Point& z,
                                   double grad_tol, double eig_tol) {
  if (grad_tol <= 0 || eig_tol <= 0)
    throw ArgumentError("classify_point: tolerances must be positive");
  PointClassification c;
  c.grad_tol = grad_tol;
  c.eig_tol = eig_tol;
  c.grad_x_norm = o.grad_x(z).norm();
  c.grad_y_norm = o.grad_y(z).norm();

  const auto symmetrized = [](const Matrix& m) -> Matrix {
    return 0.5 * (m + m.transpose());
  };
  const Matrix xx = symmetrized(assemble_block(o, z, HessianBlock::kXx));
  const Matrix yy = symmetrized(assemble_block(o, z, HessianBlock::kYy));
  const Matrix dxx = symmetrized(assemble_total_xx(o, z));
  c.xx_min_eig = eig_symmetric(xx).minCoeff();
  c.yy_max_eig = eig_symmetric(yy).maxCoeff();
  c.dxx_min_eig = eig_symmetric(dxx).minCoeff();

  c.is_stationary = c.grad_x_norm <= grad_tol && c.grad_y_norm <= grad_tol;
  const bool follower_concave = c.yy_max_eig <= -eig_tol;
  c.is_slmm =
      c.is_stationary && follower_concave && c.dxx_min_eig >= eig_tol;
  c.is_strict_local_nash =
      c.is_stationary && follower_concave && c.xx_min_eig >= eig_tol;
  return c;
}

StepMap make_step_map(const MinimaxOracle& o, const SolverSpec& spec) {
  return [&o, spec](const Point& z) -> Point {
    return step(o, StepState::at(z), spec).z;
  };
}

Matrix step_jacobian_fd(const StepMap& step, const Point& z, double h) {
  if (h <= 0) throw ArgumentError("step_jacobian_fd: h must be positive");
  const Index n = z.x.size(), total = n + z.y.size();
  const Vector base = z.stacked();
  Matrix jac(total, total);
  for (Index j = 0; j < total; ++j) {
    Vector zp = base, zm = base;
    zp[j] += h;
    zm[j] -= h;
    const Vector tp = step(Point::split(zp, n)).stacked();
    const Vector tm = step(Point::split(zm, n)).stacked();
    jac.col(j) = (tp - tm) / (2 * h);
  }
  require_finite(jac, "step_jacobian_fd");
  return jac;
}

double asymptotic_rate(const StepMap& step, const Point& z_star, double h) {
  const double drift = (step(z_star).stacked() - z_star.stacked()).norm();
  if (drift > 1e-8)
    throw PreconditionError(
        "asymptotic_rate: not a fixed point (displacement " +
        std::to_string(drift) + ")");
  return spectral_radius(step_jacobian_fd(step, z_star, h));
}

namespace {

double rho_for(const Vector& ascending_eigs, double alpha) {
  const double lo = ascending_eigs.minCoeff(), hi = ascending_eigs.maxCoeff();
  return std::max(std::abs(1 - alpha * lo), std::abs(1 - alpha * hi));
}

std::vector<double> sorted_moduli(const std::vector<std::complex<double>>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& ev : v) out.push_back(std::abs(ev));
  std::sort(out.begin(), out.end());
  return out;
}

double multiset_gap(const std::vector<double>& a,
                    const std::vector<double>& b) {
  double gap = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    gap = std::max(gap, std::abs(a[i] - b[i]));
  return gap;
}

}  // namespace

double momentum_rate_for(const Vector& dxx_eigs, double alpha, double beta) {
  double rate = 0;
  for (Index i = 0; i < dxx_eigs.size(); ++i) {
    const std::complex<double> b(1.0 + beta - alpha * dxx_eigs[i], 0.0);
    const std::complex<double> disc = std::sqrt(b * b - 4.0 * beta);
    rate = std::max({rate, std::abs((b + disc) / 2.0),
                     std::abs((b - disc) / 2.0)});
  }
  return rate;
}

SpectralReport theoretical_rates(const MinimaxOracle& o, const Point& z_star,
                                 double alpha_leader, double alpha_follower,
                                 double stationarity_tol) {
  const double gx = o.grad_x(z_star).norm(), gy = o.grad_y(z_star).norm();
  if (gx > stationarity_tol || gy > stationarity_tol)
    throw PreconditionError("theoretical_rates: point is not stationary (" +
                            std::to_string(std::max(gx, gy)) + ")");

  SpectralReport r;
  const auto symmetrized = [](const Matrix& m) -> Matrix {
    return 0.5 * (m + m.transpose());
  };
  r.eig_xx =
      eig_symmetric(symmetrized(assemble_block(o, z_star, HessianBlock::kXx)));
  r.eig_yy =
      eig_symmetric(symmetrized(assemble_block(o, z_star, HessianBlock::kYy)));
  r.eig_dxx = eig_symmetric(symmetrized(assemble_total_xx(o, z_star)));

  r.lambda_max = r.eig_dxx.maxCoeff();
  r.lambda_min = r.eig_dxx.minCoeff();
  r.mu_max = -r.eig_yy.minCoeff();  // eigenvalues of -yy
  r.mu_min = -r.eig_yy.maxCoeff();
  r.kappa_leader = r.lambda_max / r.lambda_min;
  r.kappa_follower = r.mu_max / r.mu_min;

  r.rho_leader = rho_for(r.eig_dxx, alpha_leader);
  Vector neg_yy = -r.eig_yy;
  r.rho_follower = rho_for(neg_yy, alpha_follower);

  r.alpha_leader_opt = 2.0 / (r.lambda_max + r.lambda_min);
  r.rho_leader_opt = (r.kappa_leader - 1.0) / (r.kappa_leader + 1.0);

  r.gda_inf_alpha_bound = 2.0 / r.mu_max;
  if (r.mu_max >= r.lambda_max + r.lambda_min)
    r.gda_inf_suboptimal_rate = 1.0 - 2.0 * r.lambda_min / r.mu_max;

  const double sl1 = std::sqrt(r.lambda_max), sln = std::sqrt(r.lambda_min);
  const double sk = std::sqrt(r.kappa_leader);
  r.momentum_alpha = 4.0 / ((sl1 + sln) * (sl1 + sln));
  r.momentum_beta = ((sk - 1) / (sk + 1)) * ((sk - 1) / (sk + 1));
  r.momentum_rate = 1.0 - 2.0 / (sk + 1);
  return r;
}

TransposeRelationReport verify_transpose_relation(const MinimaxOracle& o,
                                                  const Point& z_star,
                                                  double alpha_leader,
                                                  double alpha_follower,
                                                  double stationarity_tol) {
  const double gx = o.grad_x(z_star).norm(), gy = o.grad_y(z_star).norm();
  if (gx > stationarity_tol || gy > stationarity_tol)
    throw PreconditionError("verify_transpose_relation: not stationary");

  const Index n = o.leader_dim(), m = o.follower_dim();
  const Matrix xx = assemble_block(o, z_star, HessianBlock::kXx);
  const Matrix xy = assemble_block(o, z_star, HessianBlock::kXy);
  const Matrix yx = assemble_block(o, z_star, HessianBlock::kYx);
  const Matrix yy = assemble_block(o, z_star, HessianBlock::kYy);

  Matrix hess(n + m, n + m);
  hess << xx, xy, yx, yy;

  // Triangular preconditioner: row one mixes the total-gradient correction
  // xy . yy^{-1} into the leader update.
  Matrix p = Matrix::Zero(n + m, n + m);
  p.topLeftCorner(n, n) = -alpha_leader * Matrix::Identity(n, n);
  p.topRightCorner(n, m) =
      alpha_leader * yy.transpose().lu().solve(xy.transpose()).transpose();
  p.bottomRightCorner(m, m) = alpha_follower * Matrix::Identity(m, m);

  const Matrix eye = Matrix::Identity(n + m, n + m);
  const auto spec_tgda = sorted_moduli(eig_general(eye + p * hess));
  const auto spec_fr = sorted_moduli(eig_general(eye + p.transpose() * hess));

  TransposeRelationReport rep;
  rep.multiset_distance = multiset_gap(spec_tgda, spec_fr);

  SolverSpec tgda = SolverSpec::for_algorithm(Algorithm::kTgda);
  tgda.alpha_leader = alpha_leader;
  tgda.alpha_follower = alpha_follower;
  SolverSpec fr = SolverSpec::for_algorithm(Algorithm::kFr);
  fr.alpha_leader = alpha_leader;
  fr.alpha_follower = alpha_follower;

  const double h = 1e-6;
  const Matrix j_tgda = step_jacobian_fd(make_step_map(o, tgda), z_star, h);
  const Matrix j_fr = step_jacobian_fd(make_step_map(o, fr), z_star, h);
  rep.fd_distance_tgda =
      multiset_gap(sorted_moduli(eig_general(j_tgda)), spec_tgda);
  rep.fd_distance_fr = multiset_gap(sorted_moduli(eig_general(j_fr)), spec_fr);
  rep.rate_gap =
      std::abs(spectral_radius(j_tgda) - spectral_radius(j_fr));
  return rep;
}

EmpiricalRate empirical_rate(const Trace& trace, int burn_in) {
  if (burn_in < 0) throw ArgumentError("empirical_rate: negative burn_in");

  // Distances to the known solution, truncated at the floating-point floor.
  std::vector<double> dist;
  for (const TraceRecord& rec : trace.records) {
    if (!rec.dist_x || !rec.dist_y)
      throw AnalysisError("empirical_rate: trace has no known-solution "
                          "distances");
    const double d = std::hypot(*rec.dist_x, *rec.dist_y);
    if (d < 1e-14) break;
    dist.push_back(d);
  }
  if (static_cast<int>(dist.size()) < burn_in + 3)
    throw AnalysisError("empirical_rate: need at least burn_in + 3 usable "
                        "rows, have " +
                        std::to_string(dist.size()));

  EmpiricalRate out;
  const auto first = dist.begin() + burn_in;
  out.rows_used = static_cast<int>(dist.end() - first);

  double log_sum = 0;
  for (auto it = first + 1; it != dist.end(); ++it)
    log_sum += std::log(*it / *(it - 1));
  out.linear_rate = std::exp(log_sum / (out.rows_used - 1));

  std::vector<double> orders;
  for (auto it = first + 2; it != dist.end(); ++it) {
    const double num = std::log(*it / *(it - 1));
    const double den = std::log(*(it - 1) / *(it - 2));
    if (den != 0) orders.push_back(num / den);
  }
  if (orders.empty())
    throw AnalysisError("empirical_rate: degenerate distance ratios");
  std::sort(orders.begin(), orders.end());
  const std::size_t mid = orders.size() / 2;
  out.order_estimate = orders.size() % 2 == 1
                           ? orders[mid]
                           : 0.5 * (orders[mid - 1] + orders[mid]);
  return out;
}

}  // namespace minimax
