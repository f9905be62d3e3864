#include "plap/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "plap/cheeger.hpp"
#include "plap/continuation.hpp"
#include "plap/error.hpp"
#include "plap/fig1.hpp"
#include "plap/io.hpp"
#include "plap/one_laplacian.hpp"
#include "plap/spectral.hpp"

namespace plap::cli {
namespace {

using io::json;

struct RunConfig {
  std::string command;
  std::string input_path;
  bool quiet = false;
  std::uint64_t seed = 0;
  std::string output_format = "json";

  std::size_t limit = kDefaultEnumerationLimit;
  std::optional<double> p;
  std::optional<double> tol;
  int max_iter = SolverOptions{}.max_iterations;
  std::string warm_start;
  int steps = 12;
  std::string csv_path;
  std::string function_path;
  double delta = 1e-6;
  int samples = 1000;
  std::optional<int> fig1_sweep;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::no_convergence:
    case ErrorKind::not_converged:
      return kNoConvergence;
    case ErrorKind::structure_violation:
      return kStructureViolation;
    default:
      return kInvalidInput;
  }
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions opts;
  opts.tolerance = cfg.tol;
  opts.max_iterations = cfg.max_iter;
  return opts;
}

void validate(const RunConfig& cfg) {
  if (cfg.p && !(*cfg.p > 1.0)) throw Error(ErrorKind::invalid_p, "--p must exceed 1");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw Error(ErrorKind::invalid_argument, "--tol must be positive");
  if (cfg.max_iter <= 0) throw Error(ErrorKind::invalid_argument, "--max-iter must be positive");
  if (cfg.steps < 2) throw Error(ErrorKind::invalid_steps, "--steps must be at least 2");
  if (!(cfg.delta >= 0.0)) throw Error(ErrorKind::invalid_argument, "--delta must be >= 0");
  if (cfg.samples < 0) throw Error(ErrorKind::invalid_argument, "--samples must be >= 0");
  if (cfg.fig1_sweep && *cfg.fig1_sweep < 2) throw Error(ErrorKind::invalid_steps, "--sweep must be at least 2");
}

int run_cheeger(const RunConfig& cfg, std::ostream& out) {
  const auto d = io::load_problem(cfg.input_path);
  emit(out, io::to_json(d, cheeger_constant(d, cfg.limit)));
  return kOk;
}

int run_eigen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto d = io::load_problem(cfg.input_path);
  auto opts = solver_options(cfg);
  if (!cfg.warm_start.empty()) opts.initial_guess = io::load_function(d, cfg.warm_start);
  try {
    emit(out, io::to_json(d, first_eigenpair(d, *cfg.p, opts)));
  } catch (const NoConvergence& e) {
    emit(out, io::to_json(d, e.state()));
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  }
  return kOk;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto d = io::load_problem(cfg.input_path);
  SweepTolerances tol;
  tol.delta = cfg.delta;
  auto progress = [&](const SweepRecord& r) {
    if (!cfg.quiet) {
      err << "p = " << io::format_number(r.p) << "  lambda = " << io::format_number(r.lambda)
          << "  residual = " << r.residual << '\n';
    }
  };
  SweepReport report;
  int code = kOk;
  std::string failure;
  try {
    report = sweep(d, default_schedule(cfg.steps), solver_options(cfg), tol, progress);
  } catch (const SweepNoConvergence& e) {
    report = e.partial();
    code = kNoConvergence;
    failure = e.what();
  }
  if (code == kOk) {
    try {
      report.decomposition = extract_and_verify(d, report, cfg.delta);
    } catch (const Error& e) {
      code = exit_code_for(e.kind());
      failure = e.what();
    }
  }
  if (!cfg.quiet) {
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  }
  if (!cfg.csv_path.empty()) {
    std::ofstream csv(cfg.csv_path, std::ios::binary);
    if (!csv) throw Error(ErrorKind::invalid_argument, "cannot write " + cfg.csv_path);
    csv << io::sweep_csv(d, report);
  }
  if (cfg.output_format == "csv") {
    out << io::sweep_csv(d, report);
  } else {
    emit(out, io::to_json(d, report));
  }
  if (code != kOk) err << "error: " << failure << '\n';
  return code;
}

int run_decompose(const RunConfig& cfg, std::ostream& out) {
  const auto d = io::load_problem(cfg.input_path);
  const auto u = io::load_function(d, cfg.function_path);
  emit(out, io::to_json(d, decompose_limit(d, u, cfg.delta)));
  return kOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const auto d = io::load_problem(cfg.input_path);
  const auto u = io::load_function(d, cfg.function_path);
  const auto cheeger = cheeger_constant(d, cfg.limit);
  const auto structure = check_eigenfunction_structure(d, cheeger, u, cfg.delta);
  const auto lambda11 = check_lambda11_equals_h(d, cfg.samples, cfg.seed);
  json report = {{"ok", structure.ok && lambda11.ok},
                 {"structure", io::to_json(d, structure)},
                 {"lambda11_equals_h", io::to_json(lambda11)},
                 {"coarea_total", coarea_total(d, u)},
                 {"E1", dirichlet_energy(d, u, 1.0)}};
  emit(out, report);
  return kOk;
}

json cross_validate(const Domain& d, double p, const SolverOptions& opts, const Eigenpair& solved) {
  const auto reduced = fig1::reduced_eigenpair(p);
  const auto normalized = reduced.normalized(d);
  return {{"p", p},
          {"reduced_lambda", reduced.lambda},
          {"t", reduced.t},
          {"reduced_u", io::to_json(d, normalized)},
          {"reduced_residual", eigen_residual(d, reduced.lambda, normalized, p, p < 2.0 ? 1e-10 : 0.0)},
          {"solver_lambda", solved.lambda},
          {"solver_u", io::to_json(d, solved.u)},
          {"solver_residual", solved.residual},
          {"lambda_difference", std::abs(solved.lambda - reduced.lambda)},
          {"u_difference", max_abs_diff(solved.u, normalized)},
          {"tolerance", opts.tolerance.value_or(default_tolerance(p))}};
}

int run_example_fig1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto d = fig1::build();
  const double xhat = fig1::xhat_closed_form();
  json report = {{"xhat", xhat},
                 {"xhat_cubic_residual", std::pow(1.0 - xhat, 3) - xhat},
                 {"limit", io::to_json(d, fig1::limit_function())},
                 {"cheeger", io::to_json(d, cheeger_constant(d))}};
  const auto opts = solver_options(cfg);
  if (cfg.fig1_sweep) {
    const auto rep = sweep(d, default_schedule(*cfg.fig1_sweep), opts, {}, [&](const SweepRecord& r) {
      if (!cfg.quiet) err << "p = " << io::format_number(r.p) << "  lambda = " << io::format_number(r.lambda) << '\n';
    });
    json rows = json::array();
    for (const auto& r : rep.records) {
      Eigenpair e{r.p, r.lambda, r.u, r.residual, r.iterations, 0.0};
      rows.push_back(cross_validate(d, r.p, opts, e));
    }
    report["cross_validation"] = rows;
    report["sweep"] = io::to_json(d, rep);
    report["limit_difference"] = max_abs_diff(rep.limit_estimate, fig1::limit_function());
  } else {
    const double p = cfg.p.value_or(2.0);
    report["cross_validation"] = cross_validate(d, p, opts, first_eigenpair(d, p, opts));
  }
  emit(out, report);
  return kOk;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"First eigenpairs of the Dirichlet p-Laplacian, exact Cheeger cuts and the p -> 1 limit"};
  app.name("plap");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--quiet", cfg.quiet, "Suppress progress messages");
  app.add_option("--seed", cfg.seed, "Seed for randomized checks");

  auto* cheeger = app.add_subcommand("cheeger", "Exact Cheeger constant and all Cheeger cuts");
  cheeger->add_option("graph", cfg.input_path, "Graph JSON file")->required();
  cheeger->add_option("--limit", cfg.limit, "Enumeration limit on |Omega|");

  auto* eigen = app.add_subcommand("eigen", "First eigenpair for p > 1");
  eigen->add_option("graph", cfg.input_path, "Graph JSON file")->required();
  eigen->add_option("--p", cfg.p, "Exponent p > 1")->required();
  eigen->add_option("--tol", cfg.tol, "Residual tolerance");
  eigen->add_option("--max-iter", cfg.max_iter, "Iteration budget");
  eigen->add_option("--warm-start", cfg.warm_start, "Initial guess (function JSON)");

  auto* sweep_cmd = app.add_subcommand("sweep", "p -> 1 continuation with limit decomposition");
  sweep_cmd->add_option("graph", cfg.input_path, "Graph JSON file")->required();
  sweep_cmd->add_option("--steps", cfg.steps, "Schedule length k (p_k = 1 + 2^-k)");
  sweep_cmd->add_option("--tol", cfg.tol, "Residual tolerance");
  sweep_cmd->add_option("--max-iter", cfg.max_iter, "Iteration budget per p");
  sweep_cmd->add_option("--delta", cfg.delta, "Relative level clustering tolerance");
  sweep_cmd->add_option("--format", cfg.output_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sweep_cmd->add_option("--csv", cfg.csv_path, "Also write the CSV table to this file");

  auto* decompose = app.add_subcommand("decompose", "Nested level-set decomposition of a function");
  decompose->add_option("graph", cfg.input_path, "Graph JSON file")->required();
  decompose->add_option("--function", cfg.function_path, "Function JSON file")->required();
  decompose->add_option("--delta", cfg.delta, "Relative level clustering tolerance");

  auto* verify = app.add_subcommand("verify", "Check a function against the Cheeger-cut structure");
  verify->add_option("graph", cfg.input_path, "Graph JSON file")->required();
  verify->add_option("--function", cfg.function_path, "Function JSON file")->required();
  verify->add_option("--delta", cfg.delta, "Relative level clustering tolerance");
  verify->add_option("--samples", cfg.samples, "Random samples for the lambda_11 = h check");
  verify->add_option("--limit", cfg.limit, "Enumeration limit on |Omega|");

  auto* fig = app.add_subcommand("example-fig1", "The four-vertex example: reduced pair vs solver");
  auto* fig_p = fig->add_option("--p", cfg.p, "Exponent p > 1 (default 2)");
  auto* fig_sweep = fig->add_option("--sweep", cfg.fig1_sweep, "Run a sweep with this many steps");
  fig_p->excludes(fig_sweep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    validate(cfg);
    if (cfg.command == "cheeger") return run_cheeger(cfg, out);
    if (cfg.command == "eigen") return run_eigen(cfg, out, err);
    if (cfg.command == "sweep") return run_sweep(cfg, out, err);
    if (cfg.command == "decompose") return run_decompose(cfg, out);
    if (cfg.command == "verify") return run_verify(cfg, out);
    if (cfg.command == "example-fig1") return run_example_fig1(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUnexpected;
  }
  return kUnexpected;
}

}  // namespace plap::cli
