#include "minimax/solvers.hpp"

#include <chrono>
#include <cmath>

namespace minimax {

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kGda: return "gda";
    case Algorithm::kGdaK: return "gda_k";
    case Algorithm::kTgda: return "tgda";
    case Algorithm::kFr: return "fr";
    case Algorithm::kGdn: return "gdn";
    case Algorithm::kCn: return "cn";
    case Algorithm::kGdnMomentum: return "gdn_momentum";
    case Algorithm::kTgdNewton: return "tgd_newton";
    case Algorithm::kCnTotal: return "cn_total";
    case Algorithm::kEvtushenkoCn: return "evtushenko_cn";
  }
  throw ArgumentError("unknown algorithm enum");
}

Algorithm algorithm_from_name(const std::string& name) {
  for (Algorithm a :
       {Algorithm::kGda, Algorithm::kGdaK, Algorithm::kTgda, Algorithm::kFr,
        Algorithm::kGdn, Algorithm::kCn, Algorithm::kGdnMomentum,
        Algorithm::kTgdNewton, Algorithm::kCnTotal, Algorithm::kEvtushenkoCn})
    if (algorithm_name(a) == name) return a;
  throw ArgumentError("unknown algorithm '" + name + "'");
}

std::string mode_name(Mode m) {
  return m == Mode::kSimultaneous ? "simultaneous" : "alternating";
}

Mode mode_from_name(const std::string& name) {
  if (name == "simultaneous") return Mode::kSimultaneous;
  if (name == "alternating") return Mode::kAlternating;
  throw ArgumentError("unknown mode '" + name + "'");
}

Mode default_mode(Algorithm a) {
  switch (a) {
    case Algorithm::kGdn:
    case Algorithm::kCn:
    case Algorithm::kGdnMomentum:
    case Algorithm::kGdaK:
      return Mode::kAlternating;
    default:
      return Mode::kSimultaneous;
  }
}

void SolverSpec::validate() const {
  std::string bad;
  const auto complain = [&bad](const std::string& msg) {
    if (!bad.empty()) bad += "; ";
    bad += msg;
  };
  if (alpha_leader < 0) complain("alpha_l must be >= 0");
  if (alpha_follower < 0) complain("alpha_f must be >= 0");
  if (k < 1) complain("k must be >= 1");
  if (beta < 0 || beta >= 1) complain("beta must lie in [0, 1)");
  if (gamma_x <= 0 || gamma_x > 1) complain("gamma_x must lie in (0, 1]");
  if (gamma_y <= 0 || gamma_y > 1) complain("gamma_y must lie in (0, 1]");
  if (lambda_x < 0) complain("lambda_x must be >= 0");
  if (lambda_y < 0) complain("lambda_y must be >= 0");
  if (budget.max_iter_x < 1 || budget.max_iter_y < 1)
    complain("cg budgets must be >= 1");
  if (budget.tol < 0) complain("cg tol must be >= 0");

  const bool leader_gradient =
      algorithm != Algorithm::kCn && algorithm != Algorithm::kCnTotal &&
      algorithm != Algorithm::kEvtushenkoCn;
  if (leader_gradient && alpha_leader <= 0)
    complain("alpha_l must be > 0 for " + algorithm_name(algorithm));
  const bool follower_gradient =
      algorithm == Algorithm::kGda || algorithm == Algorithm::kGdaK ||
      algorithm == Algorithm::kTgda || algorithm == Algorithm::kFr;
  if (follower_gradient && alpha_follower <= 0)
    complain("alpha_f must be > 0 for " + algorithm_name(algorithm));
  if (!bad.empty()) throw ArgumentError("SolverSpec: " + bad);
}

namespace {

Vector leader_at(Mode mode, const Vector& x_old, const Vector& x_new) {
  return mode == Mode::kAlternating ? x_new : x_old;
}

// Damped, regularized follower Newton update at leader iterate xt:
// y' = y - gamma_y * (yy - lambda_y I)^{-1} grad_y(xt, y).
std::pair<Vector, int> follower_newton(const MinimaxOracle& o,
                                       const Vector& xt, const Vector& y,
                                       const SolverSpec& spec) {
  const NewtonDirection nd =
      yy_newton_direction(o, Point{xt, y}, spec.budget, spec.lambda_y);
  return {y - spec.gamma_y * nd.direction, nd.cg.iterations};
}

StepOutcome outcome(const StepState& s, Vector x_new, Vector y_new,
                    int cg_x = 0, int cg_y = 0) {
  StepOutcome out;
  out.z = Point{std::move(x_new), std::move(y_new)};
  out.z_prev = s.z;
  out.cg_iters_x = cg_x;
  out.cg_iters_y = cg_y;
  return out;
}

}  // namespace

StepOutcome step_gda(const MinimaxOracle& o, const StepState& s,
                     const SolverSpec& spec) {
  const Vector x_new = s.z.x - spec.alpha_leader * o.grad_x(s.z);
  const Vector xt = leader_at(spec.mode, s.z.x, x_new);
  const Vector y_new =
      s.z.y + spec.alpha_follower * o.grad_y(Point{xt, s.z.y});
  return outcome(s, x_new, y_new);
}

StepOutcome step_gda_k(const MinimaxOracle& o, const StepState& s,
                       const SolverSpec& spec) {
  const Vector x_new = s.z.x - spec.alpha_leader * o.grad_x(s.z);
  const Vector xt = leader_at(spec.mode, s.z.x, x_new);
  Vector y = s.z.y;
  for (int j = 0; j < spec.k; ++j)
    y += spec.alpha_follower * o.grad_y(Point{xt, y});
  return outcome(s, x_new, y);
}

StepOutcome step_tgda(const MinimaxOracle& o, const StepState& s,
                      const SolverSpec& spec) {
  const TotalGradient tg = total_grad_x(o, s.z, spec.budget);
  const Vector x_new = s.z.x - spec.alpha_leader * tg.value;
  const Vector xt = leader_at(spec.mode, s.z.x, x_new);
  const Vector y_new =
      s.z.y + spec.alpha_follower * o.grad_y(Point{xt, s.z.y});
  return outcome(s, x_new, y_new, tg.cg.iterations, 0);
}

StepOutcome step_fr(const MinimaxOracle& o, const StepState& s,
                    const SolverSpec& spec) {
  const Vector x_new = s.z.x - spec.alpha_leader * o.grad_x(s.z);
  const Vector xt = leader_at(spec.mode, s.z.x, x_new);
  const Point zt{xt, s.z.y};
  // Ridge correction: yy^{-1} . yx . grad_x, all at the y-rule's point.
  const Vector w = o.hvp_yx(zt, o.grad_x(zt));
  LinearOperator yy;
  yy.domain_dim = yy.codomain_dim = o.follower_dim();
  yy.apply = [&o, &zt](const Vector& v) -> Vector { return o.hvp_yy(zt, v); };
  yy.apply_transpose = yy.apply;
  const CgResult cg =
      cg_normal_solve(yy, w, spec.budget.max_iter_y, spec.budget.tol);
  const Vector y_new = s.z.y + spec.alpha_follower * o.grad_y(zt) +
                       spec.alpha_leader * cg.solution;
  return outcome(s, x_new, y_new, 0, cg.iterations);
}

StepOutcome step_gdn(const MinimaxOracle& o, const StepState& s,
                     const SolverSpec& spec) {
  const Vector x_new = s.z.x - spec.alpha_leader * o.grad_x(s.z);
  const Vector xt = leader_at(spec.mode, s.z.x, x_new);
  auto [y_new, cg_y] = follower_newton(o, xt, s.z.y, spec);
  return outcome(s, x_new, y_new, 0, cg_y);
}

StepOutcome step_cn(const MinimaxOracle& o, const StepState& s,
                    const SolverSpec& spec) {
  const NewtonDirection dx =
      xx_total_newton_direction(o, s.z, spec.budget, spec.lambda_x);
  const Vector x_new = s.z.x - spec.gamma_x * dx.direction;
  const Vector xt = leader_at(spec.mode, s.z.x, x_new);
  auto [y_new, cg_y] = follower_newton(o, xt, s.z.y, spec);
  return outcome(s, x_new, y_new, dx.cg.iterations, cg_y);
}

StepOutcome step_gdn_momentum(const MinimaxOracle& o, const StepState& s,
                              const SolverSpec& spec) {
  const Vector x_new = s.z.x - spec.alpha_leader * o.grad_x(s.z) +
                       spec.beta * (s.z.x - s.z_prev.x);
  const Vector xt = leader_at(spec.mode, s.z.x, x_new);
  auto [y_new, cg_y] = follower_newton(o, xt, s.z.y, spec);
  return outcome(s, x_new, y_new, 0, cg_y);
}

StepOutcome step_tgd_newton(const MinimaxOracle& o, const StepState& s,
                            const SolverSpec& spec) {
  const TotalGradient tg = total_grad_x(o, s.z, spec.budget);
  const Vector x_new = s.z.x - spec.alpha_leader * tg.value;
  const Vector xt = leader_at(spec.mode, s.z.x, x_new);
  auto [y_new, cg_y] = follower_newton(o, xt, s.z.y, spec);
  return outcome(s, x_new, y_new, tg.cg.iterations, cg_y);
}

StepOutcome step_cn_total(const MinimaxOracle& o, const StepState& s,
                          const SolverSpec& spec) {
  const TotalGradient tg = total_grad_x(o, s.z, spec.budget);
  const NewtonDirection dx =
      xx_newton_direction(o, s.z, spec.budget, spec.lambda_x, tg.value);
  const Vector x_new = s.z.x - spec.gamma_x * dx.direction;
  const Vector xt = leader_at(spec.mode, s.z.x, x_new);
  auto [y_new, cg_y] = follower_newton(o, xt, s.z.y, spec);
  return outcome(s, x_new, y_new, tg.cg.iterations + dx.cg.iterations, cg_y);
}

StepOutcome step_evtushenko(const MinimaxOracle& o, const StepState& s,
                            const SolverSpec& spec) {
  const TotalGradient tg = total_grad_x(o, s.z, spec.budget);
  const NewtonDirection dx =
      xx_newton_direction(o, s.z, spec.budget, spec.lambda_x, tg.value);
  const Vector x_new = s.z.x - spec.gamma_x * dx.direction;
  const Vector xt = leader_at(spec.mode, s.z.x, x_new);
  const Point zt{xt, s.z.y};
  // First-order transport of grad_y along the leader move, then one Newton
  // solve on the combined right-hand side.
  const Vector rhs = o.grad_y(zt) + o.hvp_yx(zt, x_new - s.z.x);
  LinearOperator yy;
  yy.domain_dim = yy.codomain_dim = o.follower_dim();
  yy.apply = [&o, &zt, &spec](const Vector& v) -> Vector {
    return o.hvp_yy(zt, v) - spec.lambda_y * v;
  };
  yy.apply_transpose = yy.apply;
  const CgResult cg =
      cg_normal_solve(yy, rhs, spec.budget.max_iter_y, spec.budget.tol);
  const Vector y_new = s.z.y - spec.gamma_y * cg.solution;
  return outcome(s, x_new, y_new, tg.cg.iterations + dx.cg.iterations,
                 cg.iterations);
}

StepOutcome step(const MinimaxOracle& o, const StepState& s,
                 const SolverSpec& spec) {
  switch (spec.algorithm) {
    case Algorithm::kGda: return step_gda(o, s, spec);
    case Algorithm::kGdaK: return step_gda_k(o, s, spec);
    case Algorithm::kTgda: return step_tgda(o, s, spec);
    case Algorithm::kFr: return step_fr(o, s, spec);
    case Algorithm::kGdn: return step_gdn(o, s, spec);
    case Algorithm::kCn: return step_cn(o, s, spec);
    case Algorithm::kGdnMomentum: return step_gdn_momentum(o, s, spec);
    case Algorithm::kTgdNewton: return step_tgd_newton(o, s, spec);
    case Algorithm::kCnTotal: return step_cn_total(o, s, spec);
    case Algorithm::kEvtushenkoCn: return step_evtushenko(o, s, spec);
  }
  throw ArgumentError("unknown algorithm enum");
}

std::string stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::kGradTol: return "grad_tol";
    case StopReason::kDistTol: return "dist_tol";
    case StopReason::kMaxIter: return "max_iter";
    case StopReason::kNumericalFailure: return "numerical_failure";
  }
  throw ArgumentError("unknown stop reason");
}

Trace run(const MinimaxOracle& o, const SolverSpec& spec, const Point& z0,
          const StopRule& stop) {
  spec.validate();
  if (z0.x.size() != o.leader_dim() || z0.y.size() != o.follower_dim())
    throw ArgumentError("run: initial point dimension mismatch");
  if (stop.max_iter < 0) throw ArgumentError("run: max_iter must be >= 0");

  const auto t0 = std::chrono::steady_clock::now();
  const auto seconds_since_start = [&t0]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
  };
  const std::optional<Point> star = o.known_solution();
  const double dist_floor = o.solution_tolerance();

  Trace trace;
  StepState state = StepState::at(z0);
  int cg_x = 0, cg_y = 0;
  for (int iter = 0;; ++iter) {
    TraceRecord rec;
    rec.iter = iter;
    rec.wall_time_s = seconds_since_start();
    rec.f = o.value(state.z);
    rec.grad_x_norm = o.grad_x(state.z).norm();
    rec.grad_y_norm = o.grad_y(state.z).norm();
    if (star) {
      rec.dist_x = (state.z.x - star->x).norm();
      rec.dist_y = (state.z.y - star->y).norm();
    }
    rec.cg_iters_x = cg_x;
    rec.cg_iters_y = cg_y;
    trace.records.push_back(rec);

    if (stop.grad_tol && rec.grad_x_norm <= *stop.grad_tol &&
        rec.grad_y_norm <= *stop.grad_tol) {
      trace.termination_reason = StopReason::kGradTol;
      break;
    }
    if (stop.dist_tol && star) {
      const double dist = std::hypot(*rec.dist_x, *rec.dist_y);
      if (dist <= std::max(*stop.dist_tol, dist_floor)) {
        trace.termination_reason = StopReason::kDistTol;
        break;
      }
    }
    if (iter >= stop.max_iter) {
      trace.termination_reason = StopReason::kMaxIter;
      break;
    }

    try {
      StepOutcome out = step(o, state, spec);
      cg_x = out.cg_iters_x;
      cg_y = out.cg_iters_y;
      state.z_prev = out.z_prev;
      state.z = std::move(out.z);
    } catch (const Error& e) {
      trace.termination_reason = StopReason::kNumericalFailure;
      trace.failure_detail = e.what();
      break;
    }
    const double znorm = state.z.stacked().norm();
    if (!std::isfinite(znorm) || znorm > kDivergenceGuard) {
      trace.termination_reason = StopReason::kNumericalFailure;
      trace.failure_detail = "iterate norm passed the divergence guard after "
                             "iteration " +
                             std::to_string(iter);
      break;
    }
  }
  trace.final_point = state.z;
  return trace;
}

}  // namespace minimax
