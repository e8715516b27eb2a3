#pragma once

#include <functional>
#include <optional>
#include <string>

#include "minimax/solvers.hpp"

namespace minimax {

/// Stationarity / curvature classification of a point.
struct PointClassification {
  double grad_x_norm = 0;
  double grad_y_norm = 0;
  double yy_max_eig = 0;   // largest eigenvalue of the follower Hessian
  double dxx_min_eig = 0;  // smallest eigenvalue of the total leader Hessian
  double xx_min_eig = 0;   // smallest eigenvalue of the partial leader Hessian
  bool is_stationary = false;
  bool is_slmm = false;
  bool is_strict_local_nash = false;
  double grad_tol = 0;
  double eig_tol = 0;
};

/// Dense assembly of one Hessian block by applying HVPs to basis vectors.
enum class HessianBlock { kXx, kXy, kYx, kYy };
Matrix assemble_block(const MinimaxOracle& o, const Point& z,
                      HessianBlock which);

/// Dense total leader Hessian D_xx = xx - xy . yy^{-1} . yx.
Matrix assemble_total_xx(const MinimaxOracle& o, const Point& z);

/// Stationary iff both gradient norms <= grad_tol; strict local minimax
/// additionally needs the follower Hessian <= -eig_tol and the total leader
/// Hessian >= eig_tol; strict local Nash swaps the total Hessian for the
/// partial one.
PointClassification classify_point(const MinimaxOracle& o, const Point& z,
                                   double grad_tol = 1e-8,
                                   double eig_tol = 1e-8);

using StepMap = std::function<Point(const Point&)>;

/// The one-step update map z -> T(z) of an algorithm, with momentum history
/// pinned to the probe point.
StepMap make_step_map(const MinimaxOracle& o, const SolverSpec& spec);

/// Central-difference Jacobian of a step map, column j =
/// (T(z + h e_j) - T(z - h e_j)) / (2h).
Matrix step_jacobian_fd(const StepMap& step, const Point& z, double h);

/// Spectral radius of the step-map Jacobian at a fixed point; equals the
/// asymptotic linear convergence rate. Throws PreconditionError unless
/// ||T(z*) - z*|| <= 1e-8.
double asymptotic_rate(const StepMap& step, const Point& z_star, double h);

/// Eigenvalue data and the closed-form local rates at a stationary point.
struct SpectralReport {
  Vector eig_xx;   // ascending eigenvalues of the partial leader Hessian
  Vector eig_yy;   // ascending eigenvalues of the follower Hessian
  Vector eig_dxx;  // ascending eigenvalues of the total leader Hessian
  double lambda_max = 0, lambda_min = 0;  // extremes of eig_dxx
  double mu_max = 0, mu_min = 0;          // extremes of -eig_yy
  double kappa_leader = 0, kappa_follower = 0;
  double rho_leader = 0;    // max |1 - alpha_l * lambda|
  double rho_follower = 0;  // max |1 - alpha_f * mu|
  double alpha_leader_opt = 0;  // 2 / (lambda_max + lambda_min)
  double rho_leader_opt = 0;    // (kappa_l - 1) / (kappa_l + 1)
  double gda_inf_alpha_bound = 0;  // follower stability bound 2 / mu_max
  std::optional<double> gda_inf_suboptimal_rate;  // 1 - 2 lambda_min / mu_max
                                                  // when mu_max >= l1 + ln
  double momentum_alpha = 0;  // 4 / (sqrt(l1) + sqrt(ln))^2
  double momentum_beta = 0;   // ((sqrt(k) - 1) / (sqrt(k) + 1))^2
  double momentum_rate = 0;   // 1 - 2 / (sqrt(k) + 1)
};

SpectralReport theoretical_rates(const MinimaxOracle& o, const Point& z_star,
                                 double alpha_leader, double alpha_follower,
                                 double stationarity_tol = 1e-8);

/// Closed-form heavy-ball rate for arbitrary (alpha, beta): the largest
/// modulus among roots of m^2 - (1 + beta - alpha*lambda) m + beta over the
/// total leader Hessian spectrum.
double momentum_rate_for(const Vector& dxx_eigs, double alpha, double beta);

/// Duality of the two first-order corrected schemes: the dense one-step
/// Jacobians built from the triangular preconditioner P and its transpose
/// must carry identical eigenvalue-modulus multisets, and both must match
/// finite differences of the actual step implementations.
struct TransposeRelationReport {
  double multiset_distance = 0;   // |sorted moduli of I+PH vs I+P'H|, max
  double fd_distance_tgda = 0;    // FD(TGDA) spectrum vs eig(I + P H)
  double fd_distance_fr = 0;      // FD(FR) spectrum vs eig(I + P' H)
  double rate_gap = 0;            // |rho(FD TGDA) - rho(FD FR)|
};

TransposeRelationReport verify_transpose_relation(const MinimaxOracle& o,
                                                  const Point& z_star,
                                                  double alpha_leader,
                                                  double alpha_follower,
                                                  double stationarity_tol
                                                  = 1e-8);

/// Geometric-mean contraction factor and local order estimate from the
/// distance column of a trace. Rows past burn_in feed the fit; rows at the
/// floating-point floor (distance < 1e-14) are excluded.
struct EmpiricalRate {
  double linear_rate = 0;
  double order_estimate = 0;
  int rows_used = 0;
};

EmpiricalRate empirical_rate(const Trace& trace, int burn_in);

}  // namespace minimax
