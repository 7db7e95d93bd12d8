// proxpoint command-line front end: run experiments from config files, sweep
// parameters, and check hypothesis/operator diagnostics. Exit codes:
//   0  converged (run) / all checks passed (check)
//   1  a check failed (check)
//   2  iteration budget exhausted (run)
//   3  divergence detected (run)
//   4  config or usage error

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "proxpoint/config.hpp"
#include "proxpoint/csv.hpp"
#include "proxpoint/diagnostics.hpp"

namespace {

using namespace proxpoint;

constexpr int kExitConverged = 0;
constexpr int kExitMaxIter = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitConfig = 4;

int status_exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return kExitConverged;
    case RunStatus::MaxIter: return kExitMaxIter;
    case RunStatus::Diverged: return kExitDiverged;
  }
  return kExitConfig;
}

void write_csv_file(const std::string& path, const Trace<double>& tr) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  write_trace_csv(out, tr);
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

Trace<double> execute(const Experiment& e, bool no_validate) {
  if (e.observed) return simulate_observed(e.op, e.schedules, e.run_cfg, no_validate);
  return run(e.variant, e.op, e.schedules, e.x0, e.run_cfg, no_validate);
}

std::string summary_line(const Trace<double>& tr) {
  std::string s = "status=";
  s += to_string(tr.status);
  s += " iters=" + std::to_string(tr.iterations());
  s += " final_dist=" + format_double(tr.final_dist());
  if (tr.observed_mode) s += " max_gap=" + format_double(tr.max_observed_gap());
  return s;
}

int cmd_run(const std::string& cfg_path, bool no_validate, bool quiet) {
  Experiment e = load_experiment(cfg_path);
  Trace<double> tr;
  try {
    tr = execute(e, no_validate);
  } catch (const ScheduleRejected& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    std::cerr << ex.report().summary();
    return kExitConfig;
  }
  write_csv_file(e.output, tr);
  if (!quiet) std::cout << summary_line(tr) << "\n";
  return status_exit_code(tr.status);
}

std::string cell_output_path(const std::string& base, size_t cell) {
  auto dot = base.rfind('.');
  auto slash = base.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return base + "_cell" + std::to_string(cell);
  return base.substr(0, dot) + "_cell" + std::to_string(cell) + base.substr(dot);
}

int cmd_sweep(const std::string& cfg_path, const std::string& param,
              const std::string& values, bool no_validate, bool quiet) {
  Experiment base = load_experiment(cfg_path);
  // vector-valued parameters separate cells with ';', scalars with ','
  char sep = (param == "u" || param == "x0") ? ';' : ',';
  std::vector<std::string> cells;
  for (auto& tok : cfgdetail::split(values, sep)) {
    std::string t = cfgdetail::trim(tok);
    if (!t.empty()) cells.push_back(t);
  }
  if (cells.empty()) {
    std::cerr << "config error: empty sweep value list\n";
    return kExitConfig;
  }
  for (size_t i = 0; i < cells.size(); ++i) {
    Experiment e = base;
    try {
      apply_sweep_value(e, param, cells[i]);
    } catch (const ParameterError& ex) {
      std::cerr << "config error: " << ex.what() << "\n";
      return kExitConfig;
    }
    e.schedules.error = e.schedules.error.with_seed(base.seed + i);
    Trace<double> tr;
    try {
      tr = execute(e, no_validate);
    } catch (const ScheduleRejected& ex) {
      std::cerr << "config error (cell " << i << "): " << ex.what() << "\n";
      return kExitConfig;
    }
    std::string path = cell_output_path(e.output, i);
    write_csv_file(path, tr);
    Index itt = tr.first_below(e.run_cfg.stop_tol);
    if (!quiet) {
      std::cout << "cell=" << i << " value=\"" << cells[i] << "\" status=" << to_string(tr.status)
                << " iters_to_tol=" << (itt < 0 ? std::string("-") : std::to_string(itt))
                << " final_dist=" << format_double(tr.final_dist()) << " csv=" << path << "\n";
    }
  }
  return 0;
}

int cmd_check(const std::string& cfg_path, bool quiet) {
  Experiment e = load_experiment(cfg_path);
  bool any_fail = false;
  auto emit = [&](const std::string& line) {
    if (!quiet) std::cout << line << "\n";
  };

  ValidationReport rep = detail::validate_for_variant(e.variant, e.schedules);
  for (const auto& item : rep.items) {
    if (!item.passed) any_fail = true;
    emit("check=validator condition=\"" + item.condition + "\" status=" +
         (item.passed ? "pass" : "fail") + " detail=\"" + item.reason + "\"");
  }

  auto probe = probe_nonexpansive(e.op, 1000, e.seed);
  if (!probe.passed) any_fail = true;
  emit(std::string("check=nonexpansive status=") + (probe.passed ? "pass" : "fail") +
       " detail=\"max_ratio=" + format_double(probe.max_ratio) +
       " trials=" + std::to_string(probe.trials) + "\"");

  if (e.op.zero_set().is_empty()) {
    emit("check=limit_curve status=skip detail=\"F empty: skipped\"");
  } else {
    std::vector<double> lambdas;
    for (double l = 1.0; l <= 1e6; l *= 10.0) lambdas.push_back(l);
    auto curve = resolvent_limit_curve(e.op, e.schedules.u.limit(), lambdas, e.run_cfg.inner_tol);
    bool ok = curve.last_distance() <= 1e-3 &&
              curve.last_distance() <= curve.first_distance() + 1e-12;
    if (!ok) any_fail = true;
    emit(std::string("check=limit_curve status=") + (ok ? "pass" : "fail") +
         " detail=\"dist(1)=" + format_double(curve.first_distance()) +
         " dist(1e6)=" + format_double(curve.last_distance()) + "\"");
  }

  emit(std::string("overall=") + (any_fail ? "fail" : "pass"));
  return any_fail ? 1 : 0;
}

int cmd_catalog() {
  std::cout << "operator kinds:\n"
               "  identity          A x = x\n"
               "  quadratic         A x = Q x - b   (keys: Q row-major, b; Q PSD, b in range(Q))\n"
               "  normal_cone_box   normal cone of [lo, hi]   (keys: lo, hi)\n"
               "  normal_cone_ball  normal cone of B(center, radius)   (keys: center, radius)\n"
               "  skew              A x = S x with S^T = -S   (key: S row-major)\n"
               "  constant          A x = {c}; empty zero set when c != 0   (key: c)\n"
               "  smooth_convex     gradient of sum_i f(x_i - shift_i)   (keys: func = quartic|logcosh, shift)\n"
               "scalar schedule families (beta, alpha, lambda):\n"
               "  const:v   poly:a:p = a*(n+1)^p   geom:a:r = a*r^n   inv:a = a/(n+1)   oneminus:<inner>\n"
               "vector schedule families (u):\n"
               "  const:<vec>   converging:p:<vec u>:<vec d> = u + d/(n+1)^p   halpern:<vec u>:<vec y0>:<lambda>\n"
               "error families:\n"
               "  zero   bounded:bound:seed   growing:q:<vec> = (n+1)^q v   summable:r:<vec> = r^n v\n"
               "variants: general ppa xu xu2 simple\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proximal point iteration lab"};
  app.require_subcommand(1);

  std::string cfg, param, values;
  bool no_validate = false, quiet = false;

  auto* run_cmd = app.add_subcommand("run", "execute one experiment from a config file");
  run_cmd->add_option("config", cfg, "config file")->required();
  run_cmd->add_flag("--no-validate", no_validate, "skip hypothesis validation");
  run_cmd->add_flag("--quiet", quiet, "suppress the summary line");

  auto* sweep_cmd = app.add_subcommand("sweep", "run one experiment per parameter value");
  sweep_cmd->add_option("config", cfg, "config file")->required();
  sweep_cmd->add_option("--param", param, "parameter name (beta.*, alpha.*, lambda.*, u, x0, error.bound)")
      ->required();
  sweep_cmd->add_option("--values", values,
                        "comma-separated values (';' between vectors for u/x0)")
      ->required();
  sweep_cmd->add_flag("--no-validate", no_validate, "skip hypothesis validation");
  sweep_cmd->add_flag("--quiet", quiet, "suppress the summary table");

  auto* check_cmd = app.add_subcommand("check", "validator + operator diagnostics");
  check_cmd->add_option("config", cfg, "config file")->required();
  check_cmd->add_flag("--quiet", quiet, "suppress per-item output");

  auto* catalog_cmd = app.add_subcommand("catalog", "list operator kinds and schedule families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (app.got_subcommand(run_cmd)) return cmd_run(cfg, no_validate, quiet);
    if (app.got_subcommand(sweep_cmd)) return cmd_sweep(cfg, param, values, no_validate, quiet);
    if (app.got_subcommand(check_cmd)) return cmd_check(cfg, quiet);
    if (app.got_subcommand(catalog_cmd)) return cmd_catalog();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
