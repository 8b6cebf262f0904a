#pragma once

#include "superschemes/solver.hpp"

#include <string>

namespace superschemes {

/// One table row: method, problem, n, k, final |g|, wall time, status.
struct SummaryRow {
  std::string method;
  std::string problem;
  Index n = 0;
  int iterations = 0;
  double final_residual = 0.0;
  double wall_seconds = 0.0;
  std::string status;
};

/// Throws std::invalid_argument on an empty trace.
SummaryRow summarize(const RunResult& result);

/// Human-readable one-liner, e.g. "ss3 ex8 n=100: converged k=37 |g|=8.02e-08 (0.001 s)".
std::string format_summary(const SummaryRow& row);

}  // namespace superschemes
