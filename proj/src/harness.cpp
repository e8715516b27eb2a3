#include "minimax/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "minimax/rng.hpp"

namespace minimax {

namespace {

using nlohmann::json;

// Collects every violation before failing, so a bad config reports all its
// problems at once.
struct Validator {
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& msg) {
    errors.push_back(path + ": " + msg);
  }

  void reject_unknown(const json& obj, const std::string& path,
                      std::initializer_list<const char*> allowed) {
    for (const auto& [key, unused] : obj.items()) {
      (void)unused;
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) fail(path + "." + key, "unknown key");
    }
  }

  bool require_object(const json& doc, const std::string& path,
                      const char* key) {
    if (!doc.contains(key)) {
      fail(path.empty() ? key : path + "." + std::string(key),
           "required section missing");
      return false;
    }
    if (!doc[key].is_object()) {
      fail(path.empty() ? key : path + "." + std::string(key),
           "expected an object");
      return false;
    }
    return true;
  }

  template <typename T>
  std::optional<T> get(const json& obj, const std::string& path,
                       const char* key) {
    if (!obj.contains(key)) return std::nullopt;
    try {
      return obj[key].get<T>();
    } catch (const json::exception&) {
      fail(path + "." + key, "wrong type");
      return std::nullopt;
    }
  }

  void finish() const {
    if (errors.empty()) return;
    std::string all = "invalid config";
    for (const auto& e : errors) all += "\n  " + e;
    throw ConfigError(all);
  }
};

Vector json_to_vector(const json& j, Validator& v, const std::string& path) {
  if (!j.is_array()) {
    v.fail(path, "expected an array of numbers");
    return Vector();
  }
  Vector out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      v.fail(path, "expected an array of numbers");
      return Vector();
    }
    out[static_cast<Index>(i)] = j[i].get<double>();
  }
  return out;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

// Rounds to `digits` significant decimal digits; 17 digits reproduce the
// double exactly.
double round_sig(double v, int digits) {
  if (v == 0 || !std::isfinite(v) || digits >= 17) return v;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ExperimentConfig parse_config(const json& doc) {
  Validator v;
  ExperimentConfig c;
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  v.reject_unknown(doc, "config",
                   {"schema_version", "problem", "solver", "init", "run",
                    "output"});

  if (const auto ver = v.get<int>(doc, "config", "schema_version")) {
    if (*ver != 1) v.fail("schema_version", "unsupported version");
    c.schema_version = *ver;
  } else if (!doc.contains("schema_version")) {
    v.fail("schema_version", "required field missing");
  }

  if (v.require_object(doc, "", "problem")) {
    const json& p = doc["problem"];
    v.reject_unknown(p, "problem", {"name", "params", "seed"});
    if (const auto name = v.get<std::string>(p, "problem", "name"))
      c.problem.name = *name;
    else if (!p.contains("name"))
      v.fail("problem.name", "required field missing");
    if (p.contains("params")) {
      if (!p["params"].is_object())
        v.fail("problem.params", "expected an object");
      else
        c.problem.params = p["params"];
    }
    if (const auto seed = v.get<std::uint64_t>(p, "problem", "seed"))
      c.problem.seed = *seed;
  }

  if (v.require_object(doc, "", "solver")) {
    const json& s = doc["solver"];
    v.reject_unknown(s, "solver",
                     {"algorithm", "mode", "alpha_l", "alpha_f", "k", "beta",
                      "gamma_x", "gamma_y", "lambda_x", "lambda_y", "cg"});
    if (const auto alg = v.get<std::string>(s, "solver", "algorithm")) {
      try {
        c.solver = SolverSpec::for_algorithm(algorithm_from_name(*alg));
      } catch (const ArgumentError& e) {
        v.fail("solver.algorithm", e.what());
      }
    } else if (!s.contains("algorithm")) {
      v.fail("solver.algorithm", "required field missing");
    }
    if (const auto mode = v.get<std::string>(s, "solver", "mode")) {
      try {
        c.solver.mode = mode_from_name(*mode);
      } catch (const ArgumentError& e) {
        v.fail("solver.mode", e.what());
      }
    }
    const auto range = [&](const char* key, double lo, double hi,
                           bool lo_open, double& out) {
      const auto val = v.get<double>(s, "solver", key);
      if (!val) return;
      const bool ok = (lo_open ? *val > lo : *val >= lo) && *val <= hi;
      if (!ok)
        v.fail(std::string("solver.") + key,
               "out of range (got " + format_double(*val) + ")");
      else
        out = *val;
    };
    range("alpha_l", 0.0, 1e100, false, c.solver.alpha_leader);
    range("alpha_f", 0.0, 1e100, false, c.solver.alpha_follower);
    range("beta", 0.0, 1.0 - 1e-16, false, c.solver.beta);
    range("gamma_x", 0.0, 1.0, true, c.solver.gamma_x);
    range("gamma_y", 0.0, 1.0, true, c.solver.gamma_y);
    range("lambda_x", 0.0, 1e100, false, c.solver.lambda_x);
    range("lambda_y", 0.0, 1e100, false, c.solver.lambda_y);
    if (const auto k = v.get<int>(s, "solver", "k")) {
      if (*k < 1)
        v.fail("solver.k", "must be >= 1");
      else
        c.solver.k = *k;
    }
    if (s.contains("cg") && s["cg"].is_object()) {
      const json& cg = s["cg"];
      v.reject_unknown(cg, "solver.cg", {"max_iter_x", "max_iter_y", "tol"});
      if (const auto it = v.get<int>(cg, "solver.cg", "max_iter_x")) {
        if (*it < 1)
          v.fail("solver.cg.max_iter_x", "must be >= 1");
        else
          c.solver.budget.max_iter_x = *it;
      }
      if (const auto it = v.get<int>(cg, "solver.cg", "max_iter_y")) {
        if (*it < 1)
          v.fail("solver.cg.max_iter_y", "must be >= 1");
        else
          c.solver.budget.max_iter_y = *it;
      }
      if (const auto tol = v.get<double>(cg, "solver.cg", "tol")) {
        if (*tol < 0)
          v.fail("solver.cg.tol", "must be >= 0");
        else
          c.solver.budget.tol = *tol;
      }
    } else if (s.contains("cg")) {
      v.fail("solver.cg", "expected an object");
    }
  }

  if (doc.contains("init")) {
    if (!doc["init"].is_object()) {
      v.fail("init", "expected an object");
    } else {
      const json& init = doc["init"];
      v.reject_unknown(init, "init", {"x0", "y0", "mode", "stddev", "seed"});
      if (init.contains("mode")) {
        const auto mode = v.get<std::string>(init, "init", "mode");
        if (mode && *mode != "seeded_gaussian")
          v.fail("init.mode", "expected seeded_gaussian");
        c.init.seeded_gaussian = true;
        if (const auto sd = v.get<double>(init, "init", "stddev")) {
          if (*sd <= 0)
            v.fail("init.stddev", "must be > 0");
          else
            c.init.stddev = *sd;
        }
        if (const auto seed = v.get<std::uint64_t>(init, "init", "seed"))
          c.init.seed = *seed;
        if (init.contains("x0") || init.contains("y0"))
          v.fail("init", "explicit vectors conflict with seeded_gaussian");
      } else {
        if (init.contains("x0") != init.contains("y0"))
          v.fail("init", "x0 and y0 must be given together");
        if (init.contains("x0"))
          c.init.x0 = json_to_vector(init["x0"], v, "init.x0");
        if (init.contains("y0"))
          c.init.y0 = json_to_vector(init["y0"], v, "init.y0");
      }
    }
  }

  if (v.require_object(doc, "", "run")) {
    const json& r = doc["run"];
    v.reject_unknown(r, "run", {"max_iter", "grad_tol", "dist_tol"});
    if (const auto it = v.get<int>(r, "run", "max_iter")) {
      if (*it < 0)
        v.fail("run.max_iter", "must be >= 0");
      else
        c.run.max_iter = *it;
    } else if (!r.contains("max_iter")) {
      v.fail("run.max_iter", "required field missing");
    }
    if (const auto tol = v.get<double>(r, "run", "grad_tol")) {
      if (*tol <= 0)
        v.fail("run.grad_tol", "must be > 0");
      else
        c.run.grad_tol = *tol;
    }
    if (const auto tol = v.get<double>(r, "run", "dist_tol")) {
      if (*tol <= 0)
        v.fail("run.dist_tol", "must be > 0");
      else
        c.run.dist_tol = *tol;
    }
  }

  if (doc.contains("output")) {
    if (!doc["output"].is_object()) {
      v.fail("output", "expected an object");
    } else {
      const json& o = doc["output"];
      v.reject_unknown(o, "output",
                       {"trace_path", "report_path", "float_precision",
                        "wall_time"});
      if (const auto p = v.get<std::string>(o, "output", "trace_path"))
        c.output.trace_path = *p;
      if (const auto p = v.get<std::string>(o, "output", "report_path"))
        c.output.report_path = *p;
      if (const auto fp = v.get<int>(o, "output", "float_precision")) {
        if (*fp < 1 || *fp > 17)
          v.fail("output.float_precision", "must lie in [1, 17]");
        else
          c.output.float_precision = *fp;
      }
      if (const auto wt = v.get<bool>(o, "output", "wall_time"))
        c.output.wall_time = *wt;
    }
  }

  // Cross-field constraints (algorithm-required step sizes etc.).
  if (v.errors.empty()) {
    try {
      c.solver.validate();
    } catch (const ArgumentError& e) {
      v.fail("solver", e.what());
    }
  }
  v.finish();
  return c;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path.string() + ": " +
                      e.what());
  }
  return parse_config(doc);
}

json serialize_config(const ExperimentConfig& c) {
  const int p = c.output.float_precision;
  const auto num = [p](double v) { return round_sig(v, p); };
  json doc;
  doc["schema_version"] = c.schema_version;
  doc["problem"] = {{"name", c.problem.name},
                    {"params", c.problem.params},
                    {"seed", c.problem.seed}};
  json cg = {{"max_iter_x", c.solver.budget.max_iter_x},
             {"max_iter_y", c.solver.budget.max_iter_y},
             {"tol", num(c.solver.budget.tol)}};
  doc["solver"] = {{"algorithm", algorithm_name(c.solver.algorithm)},
                   {"mode", mode_name(c.solver.mode)},
                   {"alpha_l", num(c.solver.alpha_leader)},
                   {"alpha_f", num(c.solver.alpha_follower)},
                   {"k", c.solver.k},
                   {"beta", num(c.solver.beta)},
                   {"gamma_x", num(c.solver.gamma_x)},
                   {"gamma_y", num(c.solver.gamma_y)},
                   {"lambda_x", num(c.solver.lambda_x)},
                   {"lambda_y", num(c.solver.lambda_y)},
                   {"cg", cg}};
  if (c.init.seeded_gaussian) {
    doc["init"] = {{"mode", "seeded_gaussian"},
                   {"stddev", num(c.init.stddev)},
                   {"seed", c.init.seed}};
  } else if (c.init.x0.size() > 0 || c.init.y0.size() > 0) {
    Vector x0 = c.init.x0, y0 = c.init.y0;
    for (Index i = 0; i < x0.size(); ++i) x0[i] = num(x0[i]);
    for (Index i = 0; i < y0.size(); ++i) y0[i] = num(y0[i]);
    doc["init"] = {{"x0", vector_to_json(x0)}, {"y0", vector_to_json(y0)}};
  }
  json run = {{"max_iter", c.run.max_iter}};
  if (c.run.grad_tol) run["grad_tol"] = num(*c.run.grad_tol);
  if (c.run.dist_tol) run["dist_tol"] = num(*c.run.dist_tol);
  doc["run"] = run;
  json out = {{"float_precision", c.output.float_precision},
              {"wall_time", c.output.wall_time}};
  if (!c.output.trace_path.empty()) out["trace_path"] = c.output.trace_path;
  if (!c.output.report_path.empty())
    out["report_path"] = c.output.report_path;
  doc["output"] = out;
  return doc;
}

std::filesystem::path resolve_out_dir(const std::filesystem::path& out_dir) {
  std::filesystem::path dir = out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv(kOutDirEnv)) dir = env;
  }
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);
  return dir;
}

namespace {

Point resolve_init(const InitSpec& init, const MinimaxOracle& o) {
  const Index n = o.leader_dim(), m = o.follower_dim();
  if (init.seeded_gaussian) {
    GaussianSampler rng(init.seed);
    return Point{init.stddev * rng.vector(n), init.stddev * rng.vector(m)};
  }
  if (init.x0.size() == 0 && init.y0.size() == 0)
    return Point{Vector::Zero(n), Vector::Zero(m)};
  if (init.x0.size() != n || init.y0.size() != m)
    throw ConfigError("init: expected x0 of size " + std::to_string(n) +
                      " and y0 of size " + std::to_string(m));
  return Point{init.x0, init.y0};
}

std::string csv_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace,
                     bool wall_time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "iter,wall_time_s,f,grad_x_norm,grad_y_norm,dist_x,dist_y,"
         "cg_iters_x,cg_iters_y\n";
  for (const TraceRecord& r : trace.records) {
    out << r.iter << ','
        << (wall_time ? format_double(r.wall_time_s) : std::string()) << ','
        << format_double(r.f) << ',' << format_double(r.grad_x_norm) << ','
        << format_double(r.grad_y_norm) << ',' << csv_cell(r.dist_x) << ','
        << csv_cell(r.dist_y) << ',' << r.cg_iters_x << ',' << r.cg_iters_y
        << '\n';
  }
}

// The closed-form contraction factor the run should exhibit, per algorithm.
std::optional<double> expected_rate(const SolverSpec& spec,
                                    const SpectralReport& r) {
  switch (spec.algorithm) {
    case Algorithm::kGdn:
      return r.rho_leader;
    case Algorithm::kGdaK:
      // Idealized large-k limit; meaningless past the follower stability
      // bound.
      if (spec.alpha_follower < r.gda_inf_alpha_bound)
        return std::max(std::abs(1 - spec.alpha_leader * r.lambda_max),
                        std::abs(1 - spec.alpha_leader * r.lambda_min));
      return std::nullopt;
    case Algorithm::kGda:
    case Algorithm::kTgda:
    case Algorithm::kFr:
      return std::max(r.rho_leader, r.rho_follower);
    case Algorithm::kGdnMomentum:
      return momentum_rate_for(r.eig_dxx, spec.alpha_leader, spec.beta);
    default:
      return std::nullopt;  // superlinear family
  }
}

bool is_superlinear_family(Algorithm a) {
  return a == Algorithm::kCn || a == Algorithm::kCnTotal ||
         a == Algorithm::kEvtushenkoCn;
}

json rate_report(const ExperimentConfig& config, const MinimaxOracle& oracle,
                 const Trace& trace, bool* check_passed) {
  json report;
  report["schema_version"] = 1;
  report["problem"] = config.problem.name;
  report["algorithm"] = algorithm_name(config.solver.algorithm);
  report["mode"] = mode_name(config.solver.mode);
  const TraceRecord& last = trace.records.back();
  report["termination"] = {
      {"reason", stop_reason_name(trace.termination_reason)},
      {"iterations", last.iter},
      {"final_grad_x_norm", last.grad_x_norm},
      {"final_grad_y_norm", last.grad_y_norm}};
  if (!trace.failure_detail.empty())
    report["termination"]["detail"] = trace.failure_detail;
  const auto star = oracle.known_solution();
  report["known_solution"] = star.has_value();
  if (!star) return report;

  const int rows = static_cast<int>(trace.records.size());
  const int burn_in = std::clamp(rows / 4, 1, 20);
  json empirical;
  std::optional<EmpiricalRate> measured;
  try {
    const EmpiricalRate er = empirical_rate(trace, burn_in);
    empirical = {{"linear_rate", er.linear_rate},
                 {"order_estimate", er.order_estimate},
                 {"burn_in", burn_in},
                 {"rows_used", er.rows_used}};
    measured = er;
  } catch (const AnalysisError&) {
    empirical = nullptr;  // too short to fit a rate
  }
  report["empirical"] = empirical;

  json theory = nullptr;
  std::optional<SpectralReport> spectral;
  try {
    spectral = theoretical_rates(oracle, *star, config.solver.alpha_leader,
                                 config.solver.alpha_follower,
                                 std::max(1e-8,
                                          oracle.solution_tolerance()));
    theory = spectral_report_to_json(*spectral);
  } catch (const PreconditionError&) {
  }
  report["theory"] = theory;

  json check = nullptr;
  if (spectral) {
    if (is_superlinear_family(config.solver.algorithm)) {
      const bool fast = last.dist_x && last.dist_y &&
                        std::hypot(*last.dist_x, *last.dist_y) <=
                            std::max(1e-10, oracle.solution_tolerance()) &&
                        last.iter <= 10;
      const bool ordered = measured && measured->order_estimate >= 1.7;
      check = {{"superlinear", true}, {"pass", fast || ordered}};
      if (!(fast || ordered)) *check_passed = false;
    } else if (const auto expected = expected_rate(config.solver, *spectral);
               expected && measured) {
      const double rtol = 0.02;
      const bool pass =
          std::abs(measured->linear_rate - *expected) <=
          rtol * std::max(*expected, 1e-6);
      check = {{"expected", *expected},
               {"measured", measured->linear_rate},
               {"rtol", rtol},
               {"pass", pass}};
      if (!pass) *check_passed = false;
    }
  }
  report["rate_check"] = check;
  return report;
}

}  // namespace

json classification_to_json(const PointClassification& c) {
  return json{{"grad_x_norm", c.grad_x_norm},
              {"grad_y_norm", c.grad_y_norm},
              {"yy_max_eig", c.yy_max_eig},
              {"dxx_min_eig", c.dxx_min_eig},
              {"xx_min_eig", c.xx_min_eig},
              {"is_stationary", c.is_stationary},
              {"is_slmm", c.is_slmm},
              {"is_strict_local_nash", c.is_strict_local_nash},
              {"grad_tol", c.grad_tol},
              {"eig_tol", c.eig_tol}};
}

json spectral_report_to_json(const SpectralReport& r) {
  json out{{"eig_xx", std::vector<double>(r.eig_xx.begin(), r.eig_xx.end())},
           {"eig_yy", std::vector<double>(r.eig_yy.begin(), r.eig_yy.end())},
           {"eig_dxx",
            std::vector<double>(r.eig_dxx.begin(), r.eig_dxx.end())},
           {"lambda_max", r.lambda_max},
           {"lambda_min", r.lambda_min},
           {"mu_max", r.mu_max},
           {"mu_min", r.mu_min},
           {"kappa_leader", r.kappa_leader},
           {"kappa_follower", r.kappa_follower},
           {"rho_leader", r.rho_leader},
           {"rho_follower", r.rho_follower},
           {"alpha_leader_opt", r.alpha_leader_opt},
           {"rho_leader_opt", r.rho_leader_opt},
           {"gda_inf_alpha_bound", r.gda_inf_alpha_bound},
           {"momentum_alpha", r.momentum_alpha},
           {"momentum_beta", r.momentum_beta},
           {"momentum_rate", r.momentum_rate}};
  out["gda_inf_suboptimal_rate"] =
      r.gda_inf_suboptimal_rate ? json(*r.gda_inf_suboptimal_rate)
                                : json(nullptr);
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir) {
  const auto dir = resolve_out_dir(out_dir);
  const auto oracle =
      make_problem(config.problem.name, config.problem.params,
                   config.problem.seed);
  const Point z0 = resolve_init(config.init, *oracle);

  ExperimentResult result;
  result.trace = run(*oracle, config.solver, z0, config.run);

  const std::string stem =
      config.problem.name + "_" + algorithm_name(config.solver.algorithm);
  result.trace_path = config.output.trace_path.empty()
                          ? dir / (stem + ".csv")
                          : dir / config.output.trace_path;
  result.report_path = config.output.report_path.empty()
                           ? dir / (stem + "_report.json")
                           : dir / config.output.report_path;

  write_trace_csv(result.trace_path, result.trace, config.output.wall_time);
  const json report = rate_report(config, *oracle, result.trace,
                                  &result.rate_check_passed);
  std::ofstream out(result.report_path, std::ios::binary);
  if (!out) throw Error("cannot write " + result.report_path.string());
  out << report.dump(2) << '\n';
  return result;
}

ComparisonResult compare_algorithms(
    const std::vector<ExperimentConfig>& configs,
    const std::filesystem::path& out_dir) {
  if (configs.empty())
    throw ConfigError("compare: need at least one config");
  for (const auto& c : configs) {
    if (c.problem.name != configs[0].problem.name ||
        c.problem.params != configs[0].problem.params ||
        c.problem.seed != configs[0].problem.seed)
      throw ConfigError("compare: configs must share the problem");
  }
  const auto dir = resolve_out_dir(out_dir);
  const auto oracle =
      make_problem(configs[0].problem.name, configs[0].problem.params,
                   configs[0].problem.seed);
  const Point z0 = resolve_init(configs[0].init, *oracle);
  for (const auto& c : configs) {
    const Point zi = resolve_init(c.init, *oracle);
    if ((zi.x - z0.x).norm() != 0 || (zi.y - z0.y).norm() != 0)
      throw ConfigError("compare: configs must share the init");
  }

  ComparisonResult result;
  result.traces.resize(configs.size());
  // Each member run owns its state; the shared oracle is read-only.
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(configs.size());
       ++i) {
    result.traces[i] = run(*oracle, configs[i].solver, z0, configs[i].run);
  }

  std::vector<std::string> labels;
  std::map<std::string, int> seen;
  for (const auto& c : configs) {
    std::string label = algorithm_name(c.solver.algorithm);
    const int count = ++seen[label];
    if (count > 1) label += "_" + std::to_string(count);
    labels.push_back(label);
  }

  result.csv_path = dir / (configs[0].problem.name + "_compare.csv");
  std::ofstream out(result.csv_path, std::ios::binary);
  if (!out) throw Error("cannot write " + result.csv_path.string());
  out << "iter";
  for (const auto& label : labels)
    out << ',' << label << "_f," << label << "_grad_x_norm," << label
        << "_grad_y_norm," << label << "_dist_x," << label << "_dist_y";
  out << '\n';
  std::size_t max_rows = 0;
  for (const auto& t : result.traces)
    max_rows = std::max(max_rows, t.records.size());
  for (std::size_t row = 0; row < max_rows; ++row) {
    out << row;
    for (const auto& t : result.traces) {
      if (row < t.records.size()) {
        const TraceRecord& r = t.records[row];
        out << ',' << format_double(r.f) << ','
            << format_double(r.grad_x_norm) << ','
            << format_double(r.grad_y_norm) << ',' << csv_cell(r.dist_x)
            << ',' << csv_cell(r.dist_y);
      } else {
        out << ",,,,,";
      }
    }
    out << '\n';
  }

  json summary;
  summary["schema_version"] = 1;
  summary["problem"] = configs[0].problem.name;
  json members = json::array();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const Trace& t = result.traces[i];
    members.push_back(
        {{"label", labels[i]},
         {"algorithm", algorithm_name(configs[i].solver.algorithm)},
         {"termination_reason", stop_reason_name(t.termination_reason)},
         {"iterations", t.records.back().iter},
         {"final_grad_x_norm", t.records.back().grad_x_norm},
         {"final_grad_y_norm", t.records.back().grad_y_norm}});
  }
  summary["members"] = members;
  result.summary_path =
      dir / (configs[0].problem.name + "_compare_summary.json");
  std::ofstream sum(result.summary_path, std::ios::binary);
  if (!sum) throw Error("cannot write " + result.summary_path.string());
  sum << summary.dump(2) << '\n';
  return result;
}

}  // namespace minimax
