#include "superschemes/solver.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

namespace superschemes {
namespace {

constexpr std::array<std::pair<Method, std::string_view>, 7> kMethods{{
    {Method::ss1, "ss1"},
    {Method::ss2, "ss2"},
    {Method::ss3, "ss3"},
    {Method::ss2s, "ss2s"},
    {Method::ss3s, "ss3s"},
    {Method::bb, "bb"},
    {Method::cg, "cg"},
}};

double stop_norm(const Eigen::Ref<const VectorXd>& g, StopNorm kind) {
  return kind == StopNorm::l2 ? g.norm() : g.lpNorm<Eigen::Infinity>();
}

void require_method(const SolverConfig& cfg, Method expected) {
  cfg.validate();
  if (cfg.method != expected) {
    throw std::invalid_argument("solver: config method is '" + std::string(to_string(cfg.method)) +
                                "' but '" + std::string(to_string(expected)) + "' was invoked");
  }
}

double step_size(const VectorXd& gx, const VectorXd& gw, const SolverConfig& cfg) {
  return cfg.step_rule == StepRule::primal ? step_size_primal(gx, gw, cfg.guard())
                                           : step_size_dual(gx, gw, cfg.guard());
}

// Advances x_k -> x_{k+1}. Fills the record's coefficients and returns false
// when a nonfinite quantity appears. May throw BreakdownError.
using StepFn = std::function<bool(const VectorXd& x, const VectorXd& gx, VectorXd& next, IterationRecord& rec)>;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RunResult drive(const Problem& problem, const SolverConfig& cfg, const StepFn& step) {
  const double tol = cfg.effective_tol();
  Stopwatch clock;
  RunResult result;
  result.method = cfg.method;
  result.problem_id = problem.id();
  result.dim = problem.dim();
  result.trace.reserve(static_cast<std::size_t>(std::min(cfg.max_iter, 4096)) + 1);

  VectorXd x = problem.x0();
  VectorXd g(x.size());
  VectorXd next(x.size());
  VectorXd g_next(x.size());
  bool finite = problem.gradient(x, g);

  for (int k = 0;; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.residual_norm = stop_norm(g, cfg.stop_norm);
    if (!finite || !std::isfinite(rec.residual_norm)) {
      rec.elapsed = clock.seconds();
      result.trace.push_back(rec);
      result.status = Status::diverged_nonfinite;
      break;
    }
    if (rec.residual_norm <= tol || k == cfg.max_iter) {
      rec.elapsed = clock.seconds();
      result.trace.push_back(rec);
      result.status = rec.residual_norm <= tol ? Status::converged : Status::max_iter_reached;
      break;
    }
    bool ok = false;
    try {
      ok = step(x, g, next, rec) && next.allFinite();
    } catch (const BreakdownError& e) {
      rec.elapsed = clock.seconds();
      result.trace.push_back(rec);
      result.status = Status::breakdown_denominator;
      result.breakdown_term = e.term();
      break;
    }
    if (ok) ok = problem.gradient(next, g_next) && std::isfinite(stop_norm(g_next, cfg.stop_norm));
    rec.elapsed = clock.seconds();
    result.trace.push_back(rec);
    if (!ok) {
      // x stays the last iterate with a finite gradient.
      result.status = Status::diverged_nonfinite;
      break;
    }
    x.swap(next);
    g.swap(g_next);
  }
  result.iterations = result.trace.back().k;
  result.x_final = std::move(x);
  return result;
}

// Probe point w = x + g(x) and its gradient.
bool probe(const Problem& problem, const VectorXd& x, const VectorXd& gx, VectorXd& gw) {
  return problem.gradient(x + gx, gw);
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  for (const auto& [key, name] : kMethods) {
    if (key == m) return name;
  }
  return "unknown";
}

std::string_view to_string(StepRule r) noexcept { return r == StepRule::primal ? "primal" : "dual"; }

std::string_view to_string(BbVariant v) noexcept { return v == BbVariant::bb1 ? "bb1" : "bb2"; }

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::converged:
      return "converged";
    case Status::max_iter_reached:
      return "max_iter_reached";
    case Status::breakdown_denominator:
      return "breakdown_denominator";
    case Status::diverged_nonfinite:
      return "diverged_nonfinite";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [key, text] : kMethods) {
    if (text == name) return key;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "' (valid: ss1, ss2, ss3, ss2s, ss3s, bb, cg)");
}

StepRule parse_step_rule(std::string_view name) {
  if (name == "primal") return StepRule::primal;
  if (name == "dual") return StepRule::dual;
  throw std::invalid_argument("unknown step rule '" + std::string(name) + "' (valid: primal, dual)");
}

BbVariant parse_bb_variant(std::string_view name) {
  if (name == "bb1") return BbVariant::bb1;
  if (name == "bb2") return BbVariant::bb2;
  throw std::invalid_argument("unknown BB variant '" + std::string(name) + "' (valid: bb1, bb2)");
}

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
  if (acoc_mode && !(acoc_tol > 0.0)) throw std::invalid_argument("SolverConfig: acoc_tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be at least 1");
  if (!(denom_floor >= 0.0) || !(denom_relative >= 0.0)) {
    throw std::invalid_argument("SolverConfig: guard thresholds must be nonnegative");
  }
}

std::vector<double> RunResult::residuals() const {
  std::vector<double> out;
  out.reserve(trace.size());
  for (const auto& rec : trace) out.push_back(rec.residual_norm);
  return out;
}

RunResult run_ss1(const Problem& problem, const SolverConfig& cfg) {
  require_method(cfg, Method::ss1);
  VectorXd gw(problem.dim());
  return drive(problem, cfg, [&](const VectorXd& x, const VectorXd& gx, VectorXd& next, IterationRecord& rec) {
    if (!probe(problem, x, gx, gw)) return false;
    const double alpha = step_size(gx, gw, cfg);
    rec.alpha = alpha;
    next = x - alpha * gx;
    return std::isfinite(alpha);
  });
}

namespace {

// Shared body of the two- and three-step schemes. alpha is computed once at
// x_k and reused by every corrected sub-step.
RunResult run_multistep(const Problem& problem, const SolverConfig& cfg, int corrections) {
  const Index n = problem.dim();
  VectorXd gw(n), gy(n), y(n);
  return drive(problem, cfg, [&](const VectorXd& x, const VectorXd& gx, VectorXd& next, IterationRecord& rec) {
    if (!probe(problem, x, gx, gw)) return false;
    const double alpha = step_size(gx, gw, cfg);
    rec.alpha = alpha;
    if (!std::isfinite(alpha)) return false;
    y = x - alpha * gx;
    if (!problem.gradient(y, gy)) return false;
    const double t = t_scalar(gx, gw, gy, cfg.guard());
    rec.t_factor = t;
    if (!std::isfinite(t)) return false;
    next = y - (alpha * t) * gy;
    for (int c = 1; c < corrections; ++c) {
      y.swap(next);
      if (!problem.gradient(y, gy)) return false;
      next = y - (alpha * t) * gy;
    }
    return true;
  });
}

}  // namespace

RunResult run_ss2(const Problem& problem, const SolverConfig& cfg) {
  require_method(cfg, Method::ss2);
  return run_multistep(problem, cfg, 1);
}

RunResult run_ss3(const Problem& problem, const SolverConfig& cfg) {
  require_method(cfg, Method::ss3);
  return run_multistep(problem, cfg, 2);
}

namespace {

RunResult run_scalar(const Problem& problem, const SolverConfig& cfg, bool three_step) {
  const Index n = problem.dim();
  VectorXd gw(n), gy(n), gz(n), d(n);
  return drive(problem, cfg, [&](const VectorXd& x, const VectorXd& gx, VectorXd& next, IterationRecord& rec) {
    if (!probe(problem, x, gx, gw)) return false;
    const double alpha = step_size(gx, gw, cfg);
    rec.alpha = alpha;
    if (!std::isfinite(alpha)) return false;
    d = -alpha * gx;
    if (!problem.gradient(x + d, gy)) return false;
    const double beta = beta_coeff(gx, gw, gy, cfg.guard());
    rec.beta = beta;
    if (!std::isfinite(beta)) return false;
    if (!three_step) {
      next = x + (1.0 + beta) * d;
      return true;
    }
    if (!problem.gradient(x + (1.0 + beta) * d, gz)) return false;
    const double gamma = gamma_coeff(gy, gz, cfg.guard());
    rec.gamma = gamma;
    next = x + (1.0 + beta + beta * gamma) * d;
    return std::isfinite(gamma);
  });
}

}  // namespace

RunResult run_ss2_scalar(const Problem& problem, const SolverConfig& cfg) {
  require_method(cfg, Method::ss2s);
  return run_scalar(problem, cfg, false);
}

RunResult run_ss3_scalar(const Problem& problem, const SolverConfig& cfg) {
  require_method(cfg, Method::ss3s);
  return run_scalar(problem, cfg, true);
}

RunResult run_bb(const Problem& problem, const SolverConfig& cfg) {
  require_method(cfg, Method::bb);
  const Index n = problem.dim();
  VectorXd gw(n), x_prev(n), g_prev(n);
  bool have_previous = false;
  return drive(problem, cfg, [&](const VectorXd& x, const VectorXd& gx, VectorXd& next, IterationRecord& rec) {
    double alpha = std::numeric_limits<double>::quiet_NaN();
    if (have_previous) alpha = bb_step(x - x_prev, gx - g_prev, cfg.bb_variant, cfg.guard());
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      if (!probe(problem, x, gx, gw)) return false;
      alpha = step_size(gx, gw, cfg);
    }
    rec.alpha = alpha;
    x_prev = x;
    g_prev = gx;
    have_previous = true;
    next = x - alpha * gx;
    return std::isfinite(alpha);
  });
}

RunResult run_cg_quadratic(const QuadraticOperator& op, const SolverConfig& cfg, std::optional<VectorXd> x0) {
  require_method(cfg, Method::cg);
  const Index n = op.dim();
  const double tol = cfg.effective_tol();
  Stopwatch clock;
  RunResult result;
  result.method = Method::cg;
  result.problem_id = "quadratic";
  result.dim = n;

  VectorXd x = x0 ? std::move(*x0) : VectorXd::Zero(n);
  if (x.size() != n) throw std::invalid_argument("run_cg_quadratic: x0 has wrong dimension");
  VectorXd r = op.rhs() - op.matvec(x);
  VectorXd p = r;
  VectorXd ap(n);
  double rr = r.squaredNorm();

  for (int k = 0;; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.residual_norm = stop_norm(r, cfg.stop_norm);
    if (rec.residual_norm <= tol) {
      // The recursive residual drifts; confirm against b - Ax before stopping.
      r = op.rhs() - op.matvec(x);
      rr = r.squaredNorm();
      rec.residual_norm = stop_norm(r, cfg.stop_norm);
    }
    const bool finite = std::isfinite(rec.residual_norm);
    if (!finite || rec.residual_norm <= tol || k == cfg.max_iter) {
      result.status = !finite                         ? Status::diverged_nonfinite
                      : rec.residual_norm <= tol ? Status::converged
                                                      : Status::max_iter_reached;
      rec.elapsed = clock.seconds();
      result.trace.push_back(rec);
      break;
    }
    op.matvec(p, ap);
    const double curvature = p.dot(ap);
    if (!(curvature > 0.0)) {
      rec.elapsed = clock.seconds();
      result.trace.push_back(rec);
      result.status = Status::breakdown_denominator;
      result.breakdown_term = "p'Ap";
      break;
    }
    const double alpha = rr / curvature;
    x += alpha * p;
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    const double beta = rr_next / rr;
    p = r + beta * p;
    rr = rr_next;
    rec.alpha = alpha;
    rec.beta = beta;
    rec.elapsed = clock.seconds();
    result.trace.push_back(rec);
  }
  result.iterations = result.trace.back().k;
  result.x_final = std::move(x);
  return result;
}

RunResult solve(const Problem& problem, const SolverConfig& cfg) {
  switch (cfg.method) {
    case Method::ss1:
      return run_ss1(problem, cfg);
    case Method::ss2:
      return run_ss2(problem, cfg);
    case Method::ss3:
      return run_ss3(problem, cfg);
    case Method::ss2s:
      return run_ss2_scalar(problem, cfg);
    case Method::ss3s:
      return run_ss3_scalar(problem, cfg);
    case Method::bb:
      return run_bb(problem, cfg);
    case Method::cg: {
      const QuadraticOperator* op = problem.quadratic();
      if (op == nullptr) {
        throw std::invalid_argument("method 'cg' needs a quadratic problem (ex8 or ex9), got '" + problem.id() + "'");
      }
      RunResult result = run_cg_quadratic(*op, cfg, problem.x0());
      result.problem_id = problem.id();
      return result;
    }
  }
  throw std::invalid_argument("solve: unhandled method");
}

}  // namespace superschemes
