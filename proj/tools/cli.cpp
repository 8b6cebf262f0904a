#include "cli.hpp"

#include "superschemes/acoc.hpp"
#include "superschemes/bench.hpp"
#include "superschemes/examples.hpp"
#include "superschemes/finite_difference.hpp"
#include "superschemes/solver.hpp"
#include "superschemes/summary.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace superschemes::cli {
namespace {

struct Options {
  std::string problem = "ex1";
  long long n = 0;  // 0: per-subcommand default
  std::string method = "ss1";
  std::vector<std::string> methods;
  std::string step_rule = "primal";
  double tol = 1e-6;
  double acoc_tol = 1e-13;
  int max_iter = 2000;
  std::optional<int> bench_max_iter;  // unset: the table's own cap
  std::optional<std::uint64_t> seed;
  std::string trace;
  std::string table;
  std::string format = "csv";
  std::string out;
  double h = 1e-6;
  bool acoc = false;
  std::string config;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string number(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string optional_number(const std::optional<double>& v) { return v ? number("%.17g", *v) : std::string(); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::string trace_csv(const RunResult& result) {
  std::ostringstream out;
  out << "k,gnorm,alpha,t,beta,gamma,seconds\n";
  for (const auto& r : result.trace) {
    out << r.k << ',' << number("%.17g", r.residual_norm) << ',' << optional_number(r.alpha) << ','
        << optional_number(r.t_factor) << ',' << optional_number(r.beta) << ',' << optional_number(r.gamma) << ','
        << number("%.6f", r.elapsed) << '\n';
  }
  return out.str();
}

// Values from --config for every option the command line left unset.
void apply_config(CLI::App& sub, const Options& opts) {
  if (opts.config.empty()) return;
  for (const auto& [key, value] : read_config(opts.config)) {
    if (key == "config") throw CLI::ValidationError("config", "a config file cannot name another config file");
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw CLI::ValidationError("config", "unknown key '" + key + "' in " + opts.config);
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

Index size_or(const Options& o, Index fallback) { return o.n > 0 ? static_cast<Index>(o.n) : fallback; }

Problem load_problem(const Options& o, Index default_n) {
  const ProblemId id = parse_problem_id(o.problem);
  ExampleOptions ex;
  ex.seed = o.seed;
  const Index fallback = id == ProblemId::ex8 ? 100 : default_n;
  return make_example(id, size_or(o, fallback), ex);
}

int exit_for(Status s) {
  return s == Status::breakdown_denominator || s == Status::diverged_nonfinite ? kExitNumeric : kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const Problem problem = load_problem(o, 1000);
  SolverConfig cfg;
  cfg.method = parse_method(o.method);
  cfg.step_rule = parse_step_rule(o.step_rule);
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  cfg.acoc_mode = o.acoc;
  const RunResult result = solve(problem, cfg);
  const SummaryRow row = summarize(result);
  out << format_summary(row) << '\n';
  if (result.status == Status::breakdown_denominator) out << "degenerate term: " << result.breakdown_term << '\n';
  if (o.acoc) {
    const auto residuals = result.residuals();
    const AcocReport rep = acoc(residuals);
    out << "acoc: " << (rep.rho_final ? number("%.4f", *rep.rho_final) : rep.status) << '\n';
  }
  if (!o.trace.empty()) write_file(o.trace, trace_csv(result));
  if (!o.out.empty()) {
    Report report;
    Cell cell;
    cell.table = "solve";
    cell.method = row.method;
    cell.n = row.n;
    cell.iterations = row.iterations;
    cell.final_gnorm = row.final_residual;
    cell.cpu_seconds = row.wall_seconds;
    cell.status = row.status;
    cell.seed = o.seed;
    report.cells.push_back(cell);
    const ReportFormat fmt = parse_report_format(o.format);
    if (fmt == ReportFormat::md) throw CLI::ValidationError("--format", "solve writes csv or json");
    write_file(o.out, emit_report(report, fmt));
  }
  return exit_for(result.status);
}

int cmd_bench(const Options& o, std::ostream& out) {
  if (o.table.empty()) throw CLI::RequiredError("--table");
  BenchPlan plan = BenchPlan::defaults(parse_table_id(o.table));
  if (!o.methods.empty()) {
    plan.methods.clear();
    for (const auto& m : o.methods) plan.methods.push_back(parse_bench_method(m));
  }
  if (o.seed) plan.seed = *o.seed;
  if (o.bench_max_iter) plan.max_iter = *o.bench_max_iter;
  plan.format = parse_report_format(o.format);
  const Report report = run_table(plan);
  const std::string text = emit_report(report, plan.format);
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
    int converged = 0;
    for (const auto& c : report.cells) converged += c.status == "converged";
    out << "table " << o.table << ": " << report.cells.size() << " cells, " << converged << " converged -> "
        << o.out << '\n';
  }
  return kExitOk;
}

int cmd_acoc(const Options& o, std::ostream& out) {
  const Problem problem = load_problem(o, 15);
  SolverConfig cfg;
  cfg.method = parse_method(o.method);
  cfg.step_rule = parse_step_rule(o.step_rule);
  cfg.max_iter = o.max_iter;
  cfg.acoc_mode = true;
  cfg.acoc_tol = o.acoc_tol;
  const RunResult result = solve(problem, cfg);
  const auto residuals = result.residuals();
  const AcocReport rep = acoc(residuals);
  out << format_summary(summarize(result)) << '\n';
  std::ostringstream csv;
  csv << "k,gnorm,rho\n";
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    std::optional<double> rho;
    if (k >= 1 && k - 1 < rep.rho.size()) rho = rep.rho[k - 1];
    csv << k << ',' << number("%.17g", residuals[k]) << ',' << optional_number(rho) << '\n';
    out << "  k=" << k << "  |g|=" << number("%.4e", residuals[k]) << "  rho=" << (rho ? number("%.4f", *rho) : "-")
        << '\n';
  }
  out << "acoc: " << (rep.rho_final ? number("%.4f", *rep.rho_final) : rep.status) << '\n';
  if (!o.out.empty()) write_file(o.out, csv.str());
  return exit_for(result.status);
}

int cmd_gradcheck(const Options& o, std::ostream& out) {
  const Problem problem = load_problem(o, 50);
  if (!(o.h > 0.0)) throw CLI::ValidationError("--h", "step must be positive");
  const VectorXd analytic = problem.gradient(problem.x0());
  const VectorXd numeric = finite_diff_gradient(problem, problem.x0(), o.h);
  const GradientCheck check = compare_gradients(analytic, numeric);
  out << problem.id() << " n=" << problem.dim() << " h=" << number("%g", o.h)
      << ": max relative error = " << number("%.3e", check.max_relative_error) << " (component "
      << check.worst_component << ")\n";
  if (!o.out.empty()) {
    std::ostringstream csv;
    csv << "i,analytic,numeric\n";
    for (Index i = 0; i < analytic.size(); ++i) {
      csv << i << ',' << number("%.17g", analytic[i]) << ',' << number("%.17g", numeric[i]) << '\n';
    }
    write_file(o.out, csv.str());
  }
  return check.max_relative_error <= 1e-5 ? kExitOk : kExitNumeric;
}

}  // namespace

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config file '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    values[key] = value;
  }
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Gradient-only multi-step solvers for unconstrained optimization"};
  app.name(args.empty() ? "superschemes" : args.front());
  app.require_subcommand(1, 1);
  app.set_help_flag("--help", "Print this help message and exit");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Flat key = value file; explicit flags win");
  };
  auto add_problem = [&](CLI::App* sub) {
    sub->add_option("--problem", o.problem, "Problem id: ex1..ex6, ex4pre, ex8, ex9")->capture_default_str();
    sub->add_option("--n", o.n, "Dimension (ex8 is fixed at 100)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed for ex9's random solution");
  };

  auto* solve_cmd = app.add_subcommand("solve", "Run one method on one problem");
  add_problem(solve_cmd);
  solve_cmd->add_option("--method", o.method, "ss1, ss2, ss3, ss2s, ss3s, bb, cg")->capture_default_str();
  solve_cmd->add_option("--step-rule", o.step_rule, "primal or dual")->capture_default_str();
  solve_cmd->add_option("--tol", o.tol, "Stopping tolerance on |g(x_k)|")->capture_default_str();
  solve_cmd->add_option("--max-iter", o.max_iter, "Iteration cap")->capture_default_str();
  solve_cmd->add_option("--trace", o.trace, "Write the per-iteration trace CSV here");
  solve_cmd->add_option("--format", o.format, "Format of --out: csv or json")->capture_default_str();
  solve_cmd->add_option("--out", o.out, "Write the result record here");
  solve_cmd->add_flag("--acoc", o.acoc, "Tighten tol to 1e-13 and report the convergence order");
  add_common(solve_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Reproduce a results table");
  bench_cmd->add_option("--table", o.table, "t1..t6, t8, t9, t10")->required();
  bench_cmd->add_option("--method", o.methods, "Override the method columns (comma separated)")->delimiter(',');
  bench_cmd->add_option("--seed", o.seed, "Seed for t9");
  bench_cmd->add_option("--max-iter", o.bench_max_iter, "Iteration cap (t9 defaults to 100000)");
  bench_cmd->add_option("--format", o.format, "csv, md or json")->capture_default_str();
  bench_cmd->add_option("--out", o.out, "Write the report here instead of stdout");
  add_common(bench_cmd);

  auto* acoc_cmd = app.add_subcommand("acoc", "Estimate the convergence order of a run");
  add_problem(acoc_cmd);
  acoc_cmd->add_option("--method", o.method, "ss1, ss2, ss3, ss2s, ss3s, bb")->capture_default_str();
  acoc_cmd->add_option("--step-rule", o.step_rule, "primal or dual")->capture_default_str();
  acoc_cmd->add_option("--tol", o.acoc_tol, "Stopping tolerance")->capture_default_str();
  acoc_cmd->add_option("--max-iter", o.max_iter, "Iteration cap")->capture_default_str();
  acoc_cmd->add_option("--out", o.out, "Write k,gnorm,rho CSV here");
  add_common(acoc_cmd);

  auto* grad_cmd = app.add_subcommand("gradcheck", "Compare analytic and finite-difference gradients at x0");
  add_problem(grad_cmd);
  grad_cmd->add_option("--h", o.h, "Central-difference step")->capture_default_str();
  grad_cmd->add_option("--out", o.out, "Write i,analytic,numeric CSV here");
  add_common(grad_cmd);

  std::vector<std::string> argv_rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());  // CLI11 consumes from the back
  try {
    app.parse(argv_rest);
    for (CLI::App* sub : app.get_subcommands()) apply_config(*sub, o);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(o, out);
    if (bench_cmd->parsed()) return cmd_bench(o, out);
    if (acoc_cmd->parsed()) return cmd_acoc(o, out);
    return cmd_gradcheck(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace superschemes::cli
