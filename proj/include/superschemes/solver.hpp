#pragma once

#include "superschemes/problem.hpp"
#include "superschemes/step_rules.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace superschemes {

enum class Method { ss1, ss2, ss3, ss2s, ss3s, bb, cg };
enum class StepRule { primal, dual };
enum class StopNorm { l2, max };
enum class Status { converged, max_iter_reached, breakdown_denominator, diverged_nonfinite };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(StepRule r) noexcept;
std::string_view to_string(Status s) noexcept;
std::string_view to_string(BbVariant v) noexcept;
Method parse_method(std::string_view name);
StepRule parse_step_rule(std::string_view name);
BbVariant parse_bb_variant(std::string_view name);

struct SolverConfig {
  Method method = Method::ss1;
  StepRule step_rule = StepRule::primal;
  double tol = 1e-6;
  int max_iter = 2000;
  /// Absolute denominator floor; the relative factor lives in `guard()`.
  double denom_floor = 1e-30;
  double denom_relative = 1e-16;
  /// Convergence-order mode: tolerance tightened to `acoc_tol`.
  bool acoc_mode = false;
  double acoc_tol = 1e-13;
  BbVariant bb_variant = BbVariant::bb2;
  StopNorm stop_norm = StopNorm::l2;

  double effective_tol() const noexcept { return acoc_mode ? acoc_tol : tol; }
  Guard guard() const noexcept { return {denom_floor, denom_relative}; }
  /// Throws std::invalid_argument on tol <= 0 or max_iter < 1.
  void validate() const;
};

/// One row per visited iterate x_k. Coefficients describe the step taken from
/// x_k and are empty on the terminal record.
struct IterationRecord {
  int k = 0;
  double residual_norm = 0.0;
  std::optional<double> alpha;
  std::optional<double> t_factor;
  std::optional<double> beta;
  std::optional<double> gamma;
  double elapsed = 0.0;
};

using IterationTrace = std::vector<IterationRecord>;

struct RunResult {
  Status status = Status::max_iter_reached;
  VectorXd x_final;
  int iterations = 0;
  IterationTrace trace;
  Method method = Method::ss1;
  std::string problem_id;
  Index dim = 0;
  /// Name of the degenerate quantity when status is breakdown_denominator.
  std::string breakdown_term;

  double final_residual() const noexcept { return trace.empty() ? 0.0 : trace.back().residual_norm; }
  double elapsed() const noexcept { return trace.empty() ? 0.0 : trace.back().elapsed; }
  std::vector<double> residuals() const;
};

/// x_{k+1} = x_k - alpha_k g(x_k), alpha_k from the configured step rule with
/// probe point w_k = x_k + g(x_k).
RunResult run_ss1(const Problem& problem, const SolverConfig& cfg);

/// Two-step scheme: y = x - alpha g(x), x+ = y - alpha T g(y).
RunResult run_ss2(const Problem& problem, const SolverConfig& cfg);

/// Three-step scheme: adds z = y - alpha T g(y), x+ = z - alpha T g(z).
RunResult run_ss3(const Problem& problem, const SolverConfig& cfg);

/// Scalar-coefficient two-step scheme with d = -alpha g(x): x+ = x + (1 + beta) d.
RunResult run_ss2_scalar(const Problem& problem, const SolverConfig& cfg);

/// Scalar-coefficient three-step scheme: x+ = x + (1 + beta + beta gamma) d.
RunResult run_ss3_scalar(const Problem& problem, const SolverConfig& cfg);

/// Barzilai-Borwein gradient method. The first step (and any step whose BB
/// length is nonpositive or nonfinite) uses the configured step rule.
RunResult run_bb(const Problem& problem, const SolverConfig& cfg);

/// Linear conjugate gradients on Ax = b from x0 (zero when omitted).
RunResult run_cg_quadratic(const QuadraticOperator& op, const SolverConfig& cfg,
                           std::optional<VectorXd> x0 = std::nullopt);

/// Dispatches on cfg.method. `cg` requires a quadratic problem.
RunResult solve(const Problem& problem, const SolverConfig& cfg);

}  // namespace superschemes
