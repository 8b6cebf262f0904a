#include "superschemes/bench.hpp"

#include "superschemes/acoc.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <thread>

namespace superschemes {
namespace {

constexpr std::array<std::pair<TableId, std::string_view>, 9> kTables{{
    {TableId::t1, "t1"},
    {TableId::t2, "t2"},
    {TableId::t3, "t3"},
    {TableId::t4, "t4"},
    {TableId::t5, "t5"},
    {TableId::t6, "t6"},
    {TableId::t8, "t8"},
    {TableId::t9, "t9"},
    {TableId::t10, "t10"},
}};

constexpr std::array<std::string_view, 4> kExternalMethods{"na", "abb", "abbmin1", "odh1"};

const std::vector<Index> kLargeSizes{1000, 2000, 5000, 10000, 20000, 50000};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Cells whose method has no column in the reference layout.
std::string cell_note(TableId t, Method m) {
  if ((t == TableId::t4 || t == TableId::t5) && m == Method::ss3) return "reference value absent";
  return {};
}

Cell run_cell(const BenchPlan& plan, Method method, Index n) {
  Cell cell;
  cell.table = std::string(to_string(plan.table));
  cell.method = std::string(to_string(method));
  cell.n = n;
  cell.note = cell_note(plan.table, method);
  if (plan.table == TableId::t9) cell.seed = plan.seed;
  try {
    ExampleOptions options;
    options.seed = plan.seed;
    const Problem problem = make_example(table_problem(plan.table), n, options);
    SolverConfig cfg;
    cfg.method = method;
    cfg.max_iter = plan.max_iter;
    cfg.acoc_mode = plan.table == TableId::t10;
    const RunResult result = solve(problem, cfg);
    cell.iterations = result.iterations;
    cell.final_gnorm = result.final_residual();
    cell.cpu_seconds = result.elapsed();
    cell.status = std::string(to_string(result.status));
    if (cfg.acoc_mode) {
      const auto residuals = result.residuals();
      cell.acoc = acoc(residuals).rho_final;
    }
  } catch (const std::exception& e) {
    cell.status = std::string("error: ") + e.what();
  }
  return cell;
}

}  // namespace

std::string_view to_string(TableId t) noexcept {
  for (const auto& [key, name] : kTables) {
    if (key == t) return name;
  }
  return "unknown";
}

std::string_view to_string(ReportFormat f) noexcept {
  switch (f) {
    case ReportFormat::csv:
      return "csv";
    case ReportFormat::md:
      return "md";
    case ReportFormat::json:
      return "json";
  }
  return "unknown";
}

TableId parse_table_id(std::string_view name) {
  for (const auto& [key, text] : kTables) {
    if (text == name) return key;
  }
  throw std::invalid_argument("unknown table '" + std::string(name) + "' (valid: t1..t6, t8, t9, t10)");
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "md") return ReportFormat::md;
  if (name == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (valid: csv, md, json)");
}

Method parse_bench_method(std::string_view name) {
  const std::string key = lower(name);
  if (std::find(kExternalMethods.begin(), kExternalMethods.end(), key) != kExternalMethods.end()) {
    throw std::invalid_argument("method '" + std::string(name) +
                                "' is an external comparison method (NA, ABB, ABBmin1, ODH1) whose "
                                "formulas are not available; it is not implemented");
  }
  return parse_method(key);
}

ProblemId table_problem(TableId t) noexcept {
  switch (t) {
    case TableId::t1:
    case TableId::t10:
      return ProblemId::ex1;
    case TableId::t2:
      return ProblemId::ex2;
    case TableId::t3:
      return ProblemId::ex3;
    case TableId::t4:
      return ProblemId::ex4;
    case TableId::t5:
      return ProblemId::ex5;
    case TableId::t6:
      return ProblemId::ex6;
    case TableId::t8:
      return ProblemId::ex8;
    case TableId::t9:
      return ProblemId::ex9;
  }
  return ProblemId::ex1;
}

BenchPlan BenchPlan::defaults(TableId t) {
  BenchPlan plan;
  plan.table = t;
  plan.methods = {Method::ss1, Method::ss2, Method::ss3, Method::bb};
  switch (t) {
    case TableId::t1:
      plan.sizes = {1000, 2000, 5000, 10000, 50000, 100000};
      break;
    case TableId::t2:
    case TableId::t3:
    case TableId::t5:
    case TableId::t6:
      plan.sizes = kLargeSizes;
      break;
    case TableId::t4:
      plan.sizes = {1000, 2000, 5000, 10000};
      break;
    case TableId::t8:
      plan.sizes = {100};
      break;
    case TableId::t9:
      plan.sizes = {500, 1000, 1500, 2000};
      plan.methods.push_back(Method::cg);
      // BB and CG need far more than 2000 iterations on this operator.
      plan.max_iter = 100000;
      break;
    case TableId::t10:
      plan.sizes = {15};
      plan.methods = {Method::ss1, Method::ss2, Method::ss3};
      break;
  }
  return plan;
}

void BenchPlan::validate() const {
  if (methods.empty()) throw std::invalid_argument("BenchPlan: no methods");
  if (sizes.empty()) throw std::invalid_argument("BenchPlan: no sizes");
  if (max_iter < 1) throw std::invalid_argument("BenchPlan: max_iter must be at least 1");
  const ProblemId problem = table_problem(table);
  for (Method m : methods) {
    if (m == Method::cg && problem != ProblemId::ex8 && problem != ProblemId::ex9) {
      throw std::invalid_argument("BenchPlan: cg only applies to quadratic tables (t8, t9)");
    }
  }
  for (Index n : sizes) {
    if (n < 2) throw std::invalid_argument("BenchPlan: sizes must be at least 2");
    if (problem == ProblemId::ex6 && n % 2 != 0) throw std::invalid_argument("BenchPlan: t6 needs even sizes");
    if (problem == ProblemId::ex8 && n != 100) throw std::invalid_argument("BenchPlan: t8 is defined for n = 100 only");
  }
}

Report run_table(const BenchPlan& plan) {
  plan.validate();
  Report report;
  report.table = plan.table;
  report.methods = plan.methods;
  report.sizes = plan.sizes;
  const std::size_t total = plan.sizes.size() * plan.methods.size();
  report.cells.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const Index n = plan.sizes[i / plan.methods.size()];
      const Method m = plan.methods[i % plan.methods.size()];
      report.cells[i] = run_cell(plan, m, n);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t jobs = std::min<std::size_t>(plan.jobs > 0 ? static_cast<std::size_t>(plan.jobs) : hw, total);
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  return report;
}

}  // namespace superschemes
