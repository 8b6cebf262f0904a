#pragma once

#include "superschemes/examples.hpp"
#include "superschemes/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace superschemes {

enum class TableId { t1, t2, t3, t4, t5, t6, t8, t9, t10 };
enum class ReportFormat { csv, md, json };

std::string_view to_string(TableId t) noexcept;
std::string_view to_string(ReportFormat f) noexcept;
TableId parse_table_id(std::string_view name);
ReportFormat parse_report_format(std::string_view name);

/// Parses a bench method name. Names of methods outside this library (NA,
/// ABB, ABBmin1, ODH1) are rejected with a message saying so.
Method parse_bench_method(std::string_view name);

/// Problem each table runs on.
ProblemId table_problem(TableId t) noexcept;

struct BenchPlan {
  TableId table = TableId::t1;
  std::vector<Method> methods;
  std::vector<Index> sizes;
  std::uint64_t seed = 1;  // ex9 only
  ReportFormat format = ReportFormat::csv;
  int max_iter = 2000;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  int jobs = 0;

  /// Rows and columns of the reference table layout.
  static BenchPlan defaults(TableId t);
  /// Throws std::invalid_argument for empty lists, cg outside quadratic
  /// tables, or sizes the table's problem rejects.
  void validate() const;
};

struct Cell {
  std::string table;
  std::string method;
  Index n = 0;
  int iterations = 0;
  double final_gnorm = 0.0;
  double cpu_seconds = 0.0;
  std::string status;
  std::optional<std::uint64_t> seed;
  /// Final convergence-order estimate (t10 only).
  std::optional<double> acoc;
  /// Free-form flag, e.g. a column absent from the reference layout.
  std::string note;
};

struct Report {
  TableId table = TableId::t1;
  std::vector<Method> methods;
  std::vector<Index> sizes;
  /// Row-major by size, then method, independent of completion order.
  std::vector<Cell> cells;
};

Report run_table(const BenchPlan& plan);

/// CSV header: table,method,n,iterations,final_gnorm,cpu_seconds,status,seed
std::string emit_report(const Report& report, ReportFormat format);

inline constexpr std::string_view kCsvHeader = "table,method,n,iterations,final_gnorm,cpu_seconds,status,seed";

}  // namespace superschemes
