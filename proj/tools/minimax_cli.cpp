// Command-line front end: config-driven runs, multi-algorithm comparisons,
// stationary-point classification, closed-form rate tables, and derivative
// checks. See README.md for the config schema.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "minimax/harness.hpp"
#include "minimax/rng.hpp"

namespace {

using namespace minimax;

Vector parse_csv_vector(const std::string& text) {
  Vector out(std::count(text.begin(), text.end(), ',') + 1);
  std::stringstream ss(text);
  std::string cell;
  Index i = 0;
  while (std::getline(ss, cell, ',')) {
    try {
      out[i++] = std::stod(cell);
    } catch (const std::exception&) {
      throw ArgumentError("--point: bad number '" + cell + "'");
    }
  }
  return out;
}

int exit_code_for(StopReason reason) {
  switch (reason) {
    case StopReason::kGradTol:
    case StopReason::kDistTol:
      return 0;
    case StopReason::kMaxIter:
      return 2;
    case StopReason::kNumericalFailure:
      return 3;
  }
  return 1;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  const ExperimentConfig config = parse_config_file(config_path);
  const ExperimentResult result = run_experiment(config, out_dir);
  const TraceRecord& last = result.trace.records.back();
  std::cout << "terminated: "
            << stop_reason_name(result.trace.termination_reason)
            << " after " << last.iter << " iterations"
            << " (grad_x " << format_double(last.grad_x_norm) << ", grad_y "
            << format_double(last.grad_y_norm) << ")\n"
            << "trace:  " << result.trace_path.string() << '\n'
            << "report: " << result.report_path.string() << '\n';
  if (!result.trace.failure_detail.empty())
    std::cout << "detail: " << result.trace.failure_detail << '\n';
  return exit_code_for(result.trace.termination_reason);
}

int cmd_compare(const std::vector<std::string>& config_paths,
                const std::string& out_dir) {
  std::vector<ExperimentConfig> configs;
  configs.reserve(config_paths.size());
  for (const auto& p : config_paths) configs.push_back(parse_config_file(p));
  const ComparisonResult result = compare_algorithms(configs, out_dir);
  for (std::size_t i = 0; i < result.traces.size(); ++i) {
    const Trace& t = result.traces[i];
    std::cout << algorithm_name(configs[i].solver.algorithm) << ": "
              << stop_reason_name(t.termination_reason) << " after "
              << t.records.back().iter << " iterations\n";
  }
  std::cout << "csv:     " << result.csv_path.string() << '\n'
            << "summary: " << result.summary_path.string() << '\n';
  return 0;
}

int cmd_classify(const std::string& problem, const std::string& point,
                 std::uint64_t seed) {
  const auto oracle = make_problem(problem, nlohmann::json::object(), seed);
  const Vector z = parse_csv_vector(point);
  if (z.size() != oracle->leader_dim() + oracle->follower_dim())
    throw ArgumentError("--point: expected " +
                        std::to_string(oracle->leader_dim() +
                                       oracle->follower_dim()) +
                        " comma-separated values");
  const PointClassification c =
      classify_point(*oracle, Point::split(z, oracle->leader_dim()));
  std::cout << classification_to_json(c).dump(2) << '\n';
  return 0;
}

int cmd_rates(const std::string& problem, double alpha_l, double alpha_f,
              std::uint64_t seed) {
  const auto oracle = make_problem(problem, nlohmann::json::object(), seed);
  const auto star = oracle->known_solution();
  if (!star)
    throw ArgumentError("problem '" + problem +
                        "' has no reference solution to analyze");
  const SpectralReport r =
      theoretical_rates(*oracle, *star, alpha_l, alpha_f,
                        std::max(1e-8, oracle->solution_tolerance()));
  std::cout << spectral_report_to_json(r).dump(2) << '\n';
  return 0;
}

int cmd_check_derivatives(const std::string& problem, std::uint64_t seed,
                          int points, double h) {
  const auto oracle = make_problem(problem, nlohmann::json::object(), seed);
  GaussianSampler rng(seed + 1);
  double worst = 0;
  for (int i = 0; i < points; ++i) {
    const Point z{rng.vector(oracle->leader_dim()),
                  rng.vector(oracle->follower_dim())};
    const DerivativeReport rep = check_derivatives(*oracle, z, h, 3, seed);
    std::cout << "point " << i << ": grad_x " << format_double(rep.grad_x)
              << "  grad_y " << format_double(rep.grad_y) << "  xx "
              << format_double(rep.hessian_xx) << "  xy "
              << format_double(rep.hessian_xy) << "  yx "
              << format_double(rep.hessian_yx) << "  yy "
              << format_double(rep.hessian_yy) << '\n';
    worst = std::max(worst, rep.max());
  }
  std::cout << "max relative error: " << format_double(worst) << '\n';
  return worst < 1e-5 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax optimization benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, problem, point;
  std::vector<std::string> config_paths;
  double alpha_l = 0.1, alpha_f = 0.1, h = 1e-5;
  std::uint64_t seed = 0;
  int points = 5;

  auto* run_cmd = app.add_subcommand("run", "Run one experiment config");
  run_cmd->add_option("--config", config_path, "config JSON path")
      ->required();
  run_cmd->add_option("--out-dir", out_dir,
                      "output directory (default $MINIMAX_OUT_DIR or .)");

  auto* compare_cmd =
      app.add_subcommand("compare", "Run several configs on one problem");
  compare_cmd->add_option("--configs", config_paths, "config JSON paths")
      ->required()
      ->expected(-1);
  compare_cmd->add_option("--out-dir", out_dir, "output directory");

  auto* classify_cmd =
      app.add_subcommand("classify", "Classify a stationary point");
  classify_cmd->add_option("--problem", problem, "problem name")->required();
  classify_cmd
      ->add_option("--point", point, "comma-separated x then y coordinates")
      ->required();
  classify_cmd->add_option("--seed", seed, "dataset seed");

  auto* rates_cmd = app.add_subcommand(
      "rates", "Closed-form local rates at the reference solution");
  rates_cmd->add_option("--problem", problem, "problem name")->required();
  rates_cmd->add_option("--alpha-l", alpha_l, "leader step size")->required();
  rates_cmd->add_option("--alpha-f", alpha_f, "follower step size")
      ->required();
  rates_cmd->add_option("--seed", seed, "dataset seed");

  auto* check_cmd = app.add_subcommand(
      "check-derivatives", "Analytic derivatives vs central differences");
  check_cmd->add_option("--problem", problem, "problem name")->required();
  check_cmd->add_option("--seed", seed, "dataset and probe seed")->required();
  check_cmd->add_option("--points", points, "number of probe points");
  check_cmd->add_option("--h", h, "finite-difference step");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, out_dir);
    if (compare_cmd->parsed()) return cmd_compare(config_paths, out_dir);
    if (classify_cmd->parsed()) return cmd_classify(problem, point, seed);
    if (rates_cmd->parsed()) return cmd_rates(problem, alpha_l, alpha_f, seed);
    if (check_cmd->parsed())
      return cmd_check_derivatives(problem, seed, points, h);
  } catch (const minimax::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
