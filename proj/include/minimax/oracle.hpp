#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "minimax/linalg.hpp"

namespace minimax {

/// Leader/follower iterate z = (x, y).
struct Point {
  Vector x;
  Vector y;

  Vector stacked() const {
    Vector z(x.size() + y.size());
    z << x, y;
    return z;
  }
  static Point split(const Vector& z, Index n) {
    return Point{z.head(n), z.tail(z.size() - n)};
  }
};

/// The only way solvers touch a problem: value, partial gradients, and the
/// four Hessian-vector products. Implementations must be re-entrant (all
/// queries read-only), and hvp_xy / hvp_yx must be mutual transposes.
class MinimaxOracle {
 public:
  virtual ~MinimaxOracle() = default;

  virtual Index leader_dim() const = 0;
  virtual Index follower_dim() const = 0;
  std::pair<Index, Index> dims() const {
    return {leader_dim(), follower_dim()};
  }

  virtual double value(const Point& z) const = 0;
  virtual Vector grad_x(const Point& z) const = 0;
  virtual Vector grad_y(const Point& z) const = 0;
  virtual Vector hvp_xx(const Point& z, const Vector& v) const = 0;
  virtual Vector hvp_xy(const Point& z, const Vector& v) const = 0;
  virtual Vector hvp_yx(const Point& z, const Vector& v) const = 0;
  virtual Vector hvp_yy(const Point& z, const Vector& v) const = 0;

  virtual std::string name() const = 0;

  /// Reference optimum, when one is known.
  virtual std::optional<Point> known_solution() const { return std::nullopt; }

  /// Meaningful resolution of known_solution(); sampled problems report the
  /// floor that absorbs their finite-dataset bias.
  virtual double solution_tolerance() const { return 1e-10; }
};

/// CG budgets for the two sides of a Newton-type update.
struct CgBudget {
  int max_iter_x = 50;
  int max_iter_y = 50;
  double tol = 0.0;  // 0 = run the budget unless the residual vanishes

  void validate() const {
    if (max_iter_x < 1 || max_iter_y < 1)
      throw ArgumentError("CgBudget: iteration counts must be >= 1");
    if (tol < 0) throw ArgumentError("CgBudget: negative tol");
  }
};

struct NewtonDirection {
  Vector direction;
  CgResult cg;
  bool singularity_warning = false;
};

struct TotalGradient {
  Vector value;
  CgResult cg;
  bool singularity_warning = false;
};

/// Total leader gradient D_x f = grad_x - hvp_xy(yy^{-1} grad_y).
TotalGradient total_grad_x(const MinimaxOracle& o, const Point& z,
                           const CgBudget& budget);

/// Follower Newton direction dy with (yy - lambda I) dy = grad_y, solved in
/// the CG least-squares sense; y - dy is the Newton follower update.
NewtonDirection yy_newton_direction(const MinimaxOracle& o, const Point& z,
                                    const CgBudget& budget,
                                    double lambda = 0.0);

/// Leader Newton direction dx with (D_xx + lambda I) dx = rhs_x, computed as
/// the upper component of the augmented solve
///   [xx + lambda I, xy; yx, yy] [dx; dv] = [rhs_x; 0].
NewtonDirection xx_newton_direction(const MinimaxOracle& o, const Point& z,
                                    const CgBudget& budget, double lambda,
                                    const Vector& rhs_x);

/// Spec'd entry point: rhs_x = grad_x(z).
NewtonDirection xx_total_newton_direction(const MinimaxOracle& o,
                                          const Point& z,
                                          const CgBudget& budget,
                                          double lambda = 0.0);

/// Matrix-free apply of D_xx f = xx - xy.yy^{-1}.yx (one inner CG solve).
Vector total_hvp_xx(const MinimaxOracle& o, const Point& z, const Vector& v,
                    const CgBudget& budget);

/// Max relative error of each analytic block against central differences.
struct DerivativeReport {
  double grad_x = 0, grad_y = 0;
  double hessian_xx = 0, hessian_xy = 0, hessian_yx = 0, hessian_yy = 0;
  double max() const;
};

DerivativeReport check_derivatives(const MinimaxOracle& o, const Point& z,
                                   double h, int n_directions = 3,
                                   std::uint64_t direction_seed = 0);

/// Pure Newton in y on grad_y(x, .) = 0 from y0; returns y with
/// ||grad_y|| <= tol or throws NonConvergenceError carrying the last iterate.
Vector best_response(const MinimaxOracle& o, const Vector& x, const Vector& y0,
                     double tol, int max_iter, const CgBudget& budget);

}  // namespace minimax
