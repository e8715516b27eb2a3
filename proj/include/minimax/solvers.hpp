#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minimax/oracle.hpp"

namespace minimax {

enum class Algorithm {
  kGda,
  kGdaK,
  kTgda,
  kFr,
  kGdn,
  kCn,
  kGdnMomentum,
  kTgdNewton,
  kCnTotal,
  kEvtushenkoCn,
};

/// Whether the follower rule sees the freshly updated leader iterate
/// (alternating) or the previous one (simultaneous).
enum class Mode { kSimultaneous, kAlternating };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);
std::string mode_name(Mode m);
Mode mode_from_name(const std::string& name);

/// Follower-Newton rules with an updated leader in their displayed form
/// default to alternating; total-derivative and plain gradient rules default
/// to simultaneous.
Mode default_mode(Algorithm a);

/// Everything that determines one step of an algorithm.
struct SolverSpec {
  Algorithm algorithm = Algorithm::kGda;
  Mode mode = Mode::kSimultaneous;
  double alpha_leader = 0.0;
  double alpha_follower = 0.0;
  int k = 1;                  // follower steps per leader step (GDA-k)
  double beta = 0.0;          // Polyak momentum
  double gamma_x = 1.0;       // damping of the leader Newton step
  double gamma_y = 1.0;       // damping of the follower Newton step
  double lambda_x = 0.0;      // leader regularization: D_xx + lambda_x I
  double lambda_y = 0.0;      // follower regularization: yy - lambda_y I
  CgBudget budget;

  static SolverSpec for_algorithm(Algorithm a) {
    SolverSpec s;
    s.algorithm = a;
    s.mode = default_mode(a);
    return s;
  }

  /// Throws ArgumentError listing every violated field constraint.
  void validate() const;
};

struct StepOutcome {
  Point z;
  Point z_prev;
  int cg_iters_x = 0;  // CG spent producing the leader update
  int cg_iters_y = 0;  // CG spent producing the follower update
};

struct StepState {
  Point z;
  Point z_prev;  // momentum history; initialized equal to z

  static StepState at(Point z0) { return StepState{z0, z0}; }
};

/// One step of the algorithm selected by spec. Individual rules are also
/// exposed for direct use and for finite-difference Jacobian probes.
StepOutcome step(const MinimaxOracle& o, const StepState& s,
                 const SolverSpec& spec);

StepOutcome step_gda(const MinimaxOracle& o, const StepState& s,
                     const SolverSpec& spec);
StepOutcome step_gda_k(const MinimaxOracle& o, const StepState& s,
                       const SolverSpec& spec);
StepOutcome step_tgda(const MinimaxOracle& o, const StepState& s,
                      const SolverSpec& spec);
StepOutcome step_fr(const MinimaxOracle& o, const StepState& s,
                    const SolverSpec& spec);
StepOutcome step_gdn(const MinimaxOracle& o, const StepState& s,
                     const SolverSpec& spec);
StepOutcome step_cn(const MinimaxOracle& o, const StepState& s,
                    const SolverSpec& spec);
StepOutcome step_gdn_momentum(const MinimaxOracle& o, const StepState& s,
                              const SolverSpec& spec);
StepOutcome step_tgd_newton(const MinimaxOracle& o, const StepState& s,
                            const SolverSpec& spec);
StepOutcome step_cn_total(const MinimaxOracle& o, const StepState& s,
                          const SolverSpec& spec);
StepOutcome step_evtushenko(const MinimaxOracle& o, const StepState& s,
                            const SolverSpec& spec);

enum class StopReason { kGradTol, kDistTol, kMaxIter, kNumericalFailure };
std::string stop_reason_name(StopReason r);

struct StopRule {
  int max_iter = 100;
  std::optional<double> grad_tol;
  std::optional<double> dist_tol;  // vs known_solution; floored by the
                                   // problem's solution_tolerance
};

struct TraceRecord {
  int iter = 0;
  double wall_time_s = 0.0;
  double f = 0.0;
  double grad_x_norm = 0.0;
  double grad_y_norm = 0.0;
  std::optional<double> dist_x;  // present when a solution is known
  std::optional<double> dist_y;
  int cg_iters_x = 0;  // spent by the step that produced this iterate
  int cg_iters_y = 0;
};

struct Trace {
  std::vector<TraceRecord> records;
  StopReason termination_reason = StopReason::kMaxIter;
  std::string failure_detail;  // set on numerical failure
  Point final_point{Vector(), Vector()};
};

// Iterates past this norm count as diverged.
inline constexpr double kDivergenceGuard = 1e12;

/// Runs the selected algorithm from z0, recording one row per iterate (row 0
/// is z0) until a stop criterion fires. Deterministic given (oracle, spec,
/// z0) up to the wall clock column.
Trace run(const MinimaxOracle& o, const SolverSpec& spec, const Point& z0,
          const StopRule& stop);

}  // namespace minimax
