#include "minimax/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "minimax/rng.hpp"

namespace minimax {

namespace {

// ||solution|| blowing up past 1e8 * ||rhs|| marks a singular system that CG
// silently regularized; surface it instead of returning garbage quietly.
bool looks_singular(const CgResult& cg, const Vector& rhs) {
  return cg.solution.norm() > 1e8 * rhs.norm();
}

LinearOperator yy_operator(const MinimaxOracle& o, const Point& z,
                           double lambda) {
  LinearOperator op;
  op.domain_dim = op.codomain_dim = o.follower_dim();
  op.apply = [&o, z, lambda](const Vector& v) -> Vector {
    return o.hvp_yy(z, v) - lambda * v;
  };
  op.apply_transpose = op.apply;  // self-adjoint
  return op;
}

}  // namespace

TotalGradient total_grad_x(const MinimaxOracle& o, const Point& z,
                           const CgBudget& budget) {
  budget.validate();
  const Vector gy = o.grad_y(z);
  TotalGradient out;
  out.cg = cg_normal_solve(yy_operator(o, z, 0.0), gy, budget.max_iter_y,
                           budget.tol);
  out.singularity_warning = looks_singular(out.cg, gy);
  out.value = o.grad_x(z) - o.hvp_xy(z, out.cg.solution);
  return out;
}

NewtonDirection yy_newton_direction(const MinimaxOracle& o, const Point& z,
                                    const CgBudget& budget, double lambda) {
  budget.validate();
  const Vector gy = o.grad_y(z);
  NewtonDirection out;
  out.cg = cg_normal_solve(yy_operator(o, z, lambda), gy, budget.max_iter_y,
                           budget.tol);
  out.singularity_warning = looks_singular(out.cg, gy);
  out.direction = out.cg.solution;
  return out;
}

NewtonDirection xx_newton_direction(const MinimaxOracle& o, const Point& z,
                                    const CgBudget& budget, double lambda,
                                    const Vector& rhs_x) {
  budget.validate();
  const Index n = o.leader_dim();
  const Index m = o.follower_dim();
  if (rhs_x.size() != n)
    throw ArgumentError("xx_newton_direction: rhs dimension mismatch");

  // Augmented saddle system built from the four HVPs; its Schur complement
  // w.r.t. the yy block is D_xx + lambda I, so the top of the solution is the
  // regularized Newton direction without nesting CG loops.
  LinearOperator aug;
  aug.domain_dim = aug.codomain_dim = n + m;
  aug.apply = [&o, z, lambda, n](const Vector& v) -> Vector {
    const Vector vx = v.head(n);
    const Vector vy = v.tail(v.size() - n);
    Vector out(v.size());
    out.head(n) = o.hvp_xx(z, vx) + lambda * vx + o.hvp_xy(z, vy);
    out.tail(v.size() - n) = o.hvp_yx(z, vx) + o.hvp_yy(z, vy);
    return out;
  };
  aug.apply_transpose = aug.apply;  // symmetric (lambda only shifts xx)

  Vector rhs = Vector::Zero(n + m);
  rhs.head(n) = rhs_x;

  NewtonDirection out;
  out.cg = cg_normal_solve(aug, rhs, budget.max_iter_x, budget.tol);
  if (looks_singular(out.cg, rhs))
    throw SingularError("xx_newton_direction: singular Schur complement", "S");
  out.direction = out.cg.solution.head(n);
  return out;
}

NewtonDirection xx_total_newton_direction(const MinimaxOracle& o,
                                          const Point& z,
                                          const CgBudget& budget,
                                          double lambda) {
  return xx_newton_direction(o, z, budget, lambda, o.grad_x(z));
}

Vector total_hvp_xx(const MinimaxOracle& o, const Point& z, const Vector& v,
                    const CgBudget& budget) {
  budget.validate();
  if (v.size() != o.leader_dim())
    throw ArgumentError("total_hvp_xx: direction dimension mismatch");
  const Vector w = o.hvp_yx(z, v);
  const CgResult cg =
      cg_normal_solve(yy_operator(o, z, 0.0), w, budget.max_iter_y, budget.tol);
  return o.hvp_xx(z, v) - o.hvp_xy(z, cg.solution);
}

double DerivativeReport::max() const {
  return std::max({grad_x, grad_y, hessian_xx, hessian_xy, hessian_yx,
                   hessian_yy});
}

namespace {

double rel_err(const Vector& got, const Vector& want) {
  const double scale = std::max({1.0, got.norm(), want.norm()});
  return (got - want).norm() / scale;
}

}  // namespace

DerivativeReport check_derivatives(const MinimaxOracle& o, const Point& z,
                                   double h, int n_directions,
                                   std::uint64_t direction_seed) {
  if (h <= 0) throw ArgumentError("check_derivatives: h must be positive");
  const Index n = o.leader_dim();
  const Index m = o.follower_dim();
  DerivativeReport rep;

  // Gradients against central differences of the value, coordinate-wise.
  {
    Vector fd(n);
    for (Index j = 0; j < n; ++j) {
      Point zp = z, zm = z;
      zp.x[j] += h;
      zm.x[j] -= h;
      fd[j] = (o.value(zp) - o.value(zm)) / (2 * h);
    }
    rep.grad_x = rel_err(o.grad_x(z), fd);
  }
  {
    Vector fd(m);
    for (Index j = 0; j < m; ++j) {
      Point zp = z, zm = z;
      zp.y[j] += h;
      zm.y[j] -= h;
      fd[j] = (o.value(zp) - o.value(zm)) / (2 * h);
    }
    rep.grad_y = rel_err(o.grad_y(z), fd);
  }

  // Each HVP against central differences of the matching gradient along
  // random unit directions.
  GaussianSampler rng(direction_seed ^ 0x9e3779b97f4a7c15ull);
  const auto unit = [&rng](Index dim) -> Vector {
    Vector v = rng.vector(dim);
    const double nrm = v.norm();
    return nrm > 0 ? Vector(v / nrm) : Vector::Unit(dim, 0);
  };
  for (int k = 0; k < n_directions; ++k) {
    const Vector vx = unit(n);
    const Vector vy = unit(m);
    {
      Point zp = z, zm = z;
      zp.x += h * vx;
      zm.x -= h * vx;
      const Vector fd = (o.grad_x(zp) - o.grad_x(zm)) / (2 * h);
      rep.hessian_xx = std::max(rep.hessian_xx, rel_err(o.hvp_xx(z, vx), fd));
    }
    {
      Point zp = z, zm = z;
      zp.y += h * vy;
      zm.y -= h * vy;
      const Vector fd = (o.grad_x(zp) - o.grad_x(zm)) / (2 * h);
      rep.hessian_xy = std::max(rep.hessian_xy, rel_err(o.hvp_xy(z, vy), fd));
    }
    {
      Point zp = z, zm = z;
      zp.x += h * vx;
      zm.x -= h * vx;
      const Vector fd = (o.grad_y(zp) - o.grad_y(zm)) / (2 * h);
      rep.hessian_yx = std::max(rep.hessian_yx, rel_err(o.hvp_yx(z, vx), fd));
    }
    {
      Point zp = z, zm = z;
      zp.y += h * vy;
      zm.y -= h * vy;
      const Vector fd = (o.grad_y(zp) - o.grad_y(zm)) / (2 * h);
      rep.hessian_yy = std::max(rep.hessian_yy, rel_err(o.hvp_yy(z, vy), fd));
    }
  }
  return rep;
}

Vector best_response(const MinimaxOracle& o, const Vector& x, const Vector& y0,
                     double tol, int max_iter, const CgBudget& budget) {
  budget.validate();
  Vector y = y0;
  for (int it = 0; it < max_iter; ++it) {
    const Point z{x, y};
    if (o.grad_y(z).norm() <= tol) return y;
    const NewtonDirection nd = yy_newton_direction(o, z, budget);
    y -= nd.direction;
    if (!y.allFinite())
      throw NumericalError("best_response: NaN in Newton iterate", it);
  }
  if (o.grad_y(Point{x, y}).norm() <= tol) return y;
  throw NonConvergenceError("best_response: Newton budget exhausted", y);
}

}  // namespace minimax
