#include "superschemes/summary.hpp"

#include <cstdio>

namespace superschemes {

SummaryRow summarize(const RunResult& result) {
  if (result.trace.empty()) throw std::invalid_argument("summarize: run has an empty trace");
  SummaryRow row;
  row.method = std::string(to_string(result.method));
  row.problem = result.problem_id;
  row.n = result.dim;
  row.iterations = result.iterations;
  row.final_residual = result.final_residual();
  row.wall_seconds = result.elapsed();
  row.status = std::string(to_string(result.status));
  return row;
}

std::string format_summary(const SummaryRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %s n=%lld: %s k=%d |g|=%.3e (%.3f s)", row.method.c_str(),
                row.problem.c_str(), static_cast<long long>(row.n), row.status.c_str(), row.iterations,
                row.final_residual, row.wall_seconds);
  return buf;
}

}  // namespace superschemes
