#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "minimax/analysis.hpp"
#include "minimax/problems.hpp"
#include "minimax/solvers.hpp"

namespace minimax {

/// Environment variable consulted for the default output directory.
inline constexpr const char* kOutDirEnv = "MINIMAX_OUT_DIR";

struct InitSpec {
  bool seeded_gaussian = false;
  Vector x0, y0;          // explicit mode
  double stddev = 0.1;    // seeded_gaussian mode
  std::uint64_t seed = 0;
};

struct ProblemSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
};

struct OutputSpec {
  std::string trace_path;   // empty = derived from problem/algorithm
  std::string report_path;  // empty = derived
  int float_precision = 17;
  bool wall_time = false;   // populate the wall_time_s column (breaks
                            // byte-identical reruns; off by default)
};

struct ExperimentConfig {
  int schema_version = 1;
  ProblemSpec problem;
  SolverSpec solver;
  InitSpec init;
  StopRule run;
  OutputSpec output;
};

/// Parses and fully validates a config document. Unknown keys are rejected
/// with their path; every range violation is listed in one error.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

/// Canonical serialization; parse(serialize(c)) round-trips to the same
/// serialized form. Floats use output.float_precision significant digits.
nlohmann::json serialize_config(const ExperimentConfig& c);

/// Shortest round-trip decimal form of a double (CSV cells).
std::string format_double(double v);

struct ExperimentResult {
  Trace trace;
  std::filesystem::path trace_path;
  std::filesystem::path report_path;
  bool rate_check_passed = true;  // false only when a theory comparison ran
                                  // and failed
};

/// Builds the problem, runs the solver, writes the trace CSV
/// (`iter,wall_time_s,f,grad_x_norm,grad_y_norm,dist_x,dist_y,cg_iters_x,
/// cg_iters_y`) and a JSON rate report comparing the measured contraction
/// against the closed-form rates when a reference solution exists. Outputs
/// are byte-identical across reruns of the same config.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir = {});

/// Runs several configs that share problem and init, writes one CSV with a
/// column group per algorithm aligned by iteration plus a JSON summary of
/// termination reasons. Member runs may execute in parallel.
struct ComparisonResult {
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
  std::vector<Trace> traces;
};

ComparisonResult compare_algorithms(const std::vector<ExperimentConfig>& configs,
                                    const std::filesystem::path& out_dir = {});

nlohmann::json classification_to_json(const PointClassification& c);
nlohmann::json spectral_report_to_json(const SpectralReport& r);

/// Resolves the output directory: explicit argument, else $MINIMAX_OUT_DIR,
/// else the current directory.
std::filesystem::path resolve_out_dir(const std::filesystem::path& out_dir);

}  // namespace minimax
