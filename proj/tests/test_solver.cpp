#include "oracles.hpp"

#include "superschemes/examples.hpp"
#include "superschemes/solver.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cstdint>

using namespace superschemes;

namespace {

SolverConfig config(Method m, int max_iter = 2000) {
  SolverConfig cfg;
  cfg.method = m;
  cfg.max_iter = max_iter;
  return cfg;
}

Problem identity_problem(Index n) {
  return Problem::from_quadratic("identity", QuadraticOperator::diagonal(VectorXd::Ones(n), VectorXd::Zero(n)),
                                 VectorXd::LinSpaced(n, 1.0, 2.0));
}

// Linear field g(x) = M x with sym(M) = -I and a skew part: g(x)'g(w) = 0
// exactly at x0 = (1, 0), while g(y) stays off both axes.
Problem orthogonal_probe_problem() {
  Eigen::Matrix2d m;
  m << -1, 1, -1, -1;
  return Problem("rotating", (VectorXd(2) << 1, 0).finished(),
                 [m](const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> g) { g = m * x; });
}

void expect_invariants(const RunResult& r, const SolverConfig& cfg) {
  ASSERT_FALSE(r.trace.empty());
  EXPECT_LE(r.trace.size(), static_cast<std::size_t>(cfg.max_iter) + 1);
  EXPECT_EQ(r.iterations, r.trace.back().k);
  for (const auto& rec : r.trace) EXPECT_GE(rec.residual_norm, 0.0);
  if (r.status == Status::converged) EXPECT_LE(r.final_residual(), cfg.effective_tol());
}

TEST(Ss1, Ex1) {
  const auto cfg = config(Method::ss1);
  const RunResult r = run_ss1(make_example("ex1", 1000), cfg);
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_EQ(r.iterations, 7);
  expect_invariants(r, cfg);
}

TEST(Ss1, IdentityInOneStep) {
  const RunResult r = run_ss1(identity_problem(5), config(Method::ss1));
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_DOUBLE_EQ(*r.trace[0].alpha, 1.0);
}

TEST(Ss1, Ex8) {
  const auto cfg = config(Method::ss1);
  const RunResult r = run_ss1(make_example("ex8", 100), cfg);
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_NEAR(r.iterations, 690, 2);
  expect_invariants(r, cfg);
}

TEST(Ss1, CapGivesMaxIterStatus) {
  const auto cfg = config(Method::ss1, 10);
  const RunResult r = run_ss1(make_example("ex8", 100), cfg);
  EXPECT_EQ(r.status, Status::max_iter_reached);
  EXPECT_EQ(r.iterations, 10);
  EXPECT_EQ(r.trace.size(), 11u);
}

TEST(Ss2, Ex1) {
  const RunResult r = run_ss2(make_example("ex1", 1000), config(Method::ss2));
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_EQ(r.iterations, 4);
}

TEST(Ss2, Ex8) {
  const auto cfg = config(Method::ss2);
  const RunResult r = run_ss2(make_example("ex8", 100), cfg);
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_NEAR(r.iterations, 46, 2);
  expect_invariants(r, cfg);
}

TEST(Ss2, StationaryStartTakesNoSteps) {
  const Problem p = make_example("ex1", 10).with_start(VectorXd::Zero(10));
  for (Method m : {Method::ss1, Method::ss2, Method::ss3, Method::ss2s, Method::ss3s, Method::bb}) {
    const RunResult r = solve(p, config(m));
    EXPECT_EQ(r.status, Status::converged) << to_string(m);
    EXPECT_EQ(r.iterations, 0) << to_string(m);
    EXPECT_EQ(r.trace.size(), 1u);
  }
}

TEST(Ss2, TraceCarriesAlphaAndT) {
  const RunResult r = run_ss2(make_example("ex1", 50), config(Method::ss2));
  ASSERT_GE(r.trace.size(), 2u);
  for (std::size_t i = 0; i + 1 < r.trace.size(); ++i) {
    EXPECT_TRUE(r.trace[i].alpha.has_value());
    EXPECT_TRUE(r.trace[i].t_factor.has_value());
    EXPECT_FALSE(r.trace[i].beta.has_value());
  }
  EXPECT_FALSE(r.trace.back().alpha.has_value());
}

// Observed golden value. The t1 acceptance band asks for 4-5 (criterion c1).
TEST(Ss3, Ex1) {
  const RunResult r = run_ss3(make_example("ex1", 10000), config(Method::ss3));
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_EQ(r.iterations, 3);
}

TEST(Ss3, Ex8) {
  const auto cfg = config(Method::ss3);
  const RunResult r = run_ss3(make_example("ex8", 100), cfg);
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_NEAR(r.iterations, 37, 2);
  EXPECT_LE(r.final_residual(), 1e-6);
  expect_invariants(r, cfg);
}

TEST(Ss3, Ex8DualRule) {
  auto cfg = config(Method::ss3);
  cfg.step_rule = StepRule::dual;
  const RunResult r = run_ss3(make_example("ex8", 100), cfg);
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_NEAR(r.iterations, 37, 2);
  EXPECT_NEAR(r.final_residual(), 8.02e-08, 0.01e-08);
}

TEST(Ss2Scalar, Ex1MatchesVectorScheme) {
  const Problem p = make_example("ex1", 1000);
  const RunResult scalar = run_ss2_scalar(p, config(Method::ss2s));
  const RunResult vector = run_ss2(p, config(Method::ss2));
  EXPECT_EQ(scalar.status, Status::converged);
  EXPECT_NEAR(scalar.iterations, vector.iterations, 2);
  EXPECT_TRUE(scalar.trace[0].beta.has_value());
}

TEST(Ss2Scalar, BetaBreakdownReturnsLastIterate) {
  const Problem p = orthogonal_probe_problem();
  const RunResult r = run_ss2_scalar(p, config(Method::ss2s));
  EXPECT_EQ(r.status, Status::breakdown_denominator);
  EXPECT_EQ(r.breakdown_term, "g(x)'g(w)");
  EXPECT_EQ(r.x_final, p.x0());
  EXPECT_EQ(r.iterations, 0);
}

TEST(Ss3Scalar, Ex1MatchesVectorScheme) {
  const Problem p = make_example("ex1", 1000);
  const RunResult scalar = run_ss3_scalar(p, config(Method::ss3s));
  const RunResult vector = run_ss3(p, config(Method::ss3));
  EXPECT_EQ(scalar.status, Status::converged);
  EXPECT_NEAR(scalar.iterations, vector.iterations, 2);
}

TEST(Ss3Scalar, IdentityInOneStep) {
  const RunResult r = run_ss3_scalar(identity_problem(4), config(Method::ss3s));
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(*r.trace[0].beta, 0.0);
  EXPECT_EQ(*r.trace[0].gamma, 0.0);
}

// Observed golden outcome: on ex6 the scalar three-step variant does not
// reach the tolerance within the default cap.
TEST(Ss3Scalar, Ex6DoesNotConverge) {
  const auto cfg = config(Method::ss3s);
  const RunResult r = run_ss3_scalar(make_example("ex6", 1000), cfg);
  EXPECT_EQ(r.status, Status::max_iter_reached);
  EXPECT_GT(r.final_residual(), 1e3);
  expect_invariants(r, cfg);
}

TEST(Ss3Scalar, DivergenceKeepsLastFiniteIterate) {
  const RunResult r = run_ss3_scalar(make_example("ex8", 100), config(Method::ss3s));
  EXPECT_EQ(r.status, Status::diverged_nonfinite);
  EXPECT_TRUE(r.x_final.allFinite());
  EXPECT_TRUE(std::isfinite(r.final_residual()));
}

TEST(Bb, Ex1) {
  const RunResult r = run_bb(make_example("ex1", 1000), config(Method::bb));
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_EQ(r.iterations, 7);
}

TEST(Bb, Ex8WithinBand) {
  const RunResult r = run_bb(make_example("ex8", 100), config(Method::bb));
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_GE(r.iterations, 82);
  EXPECT_LE(r.iterations, 122);
}

TEST(Bb, IdentityInAtMostTwo) {
  const RunResult r = run_bb(identity_problem(3), config(Method::bb));
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_LE(r.iterations, 2);
}

TEST(Bb, Bb1VariantConvergesOnEx8) {
  auto cfg = config(Method::bb);
  cfg.bb_variant = BbVariant::bb1;
  EXPECT_EQ(run_bb(make_example("ex8", 100), cfg).status, Status::converged);
}

TEST(Cg, StencilNeedsAboutNIterations) {
  const auto cfg = config(Method::cg, 100000);
  const Problem p = make_example("ex9", 500, 1);
  const RunResult r = solve(p, cfg);
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_GE(r.iterations, 400);
  EXPECT_LE(r.iterations, 600);
  EXPECT_LE((p.gradient(r.x_final)).norm(), 1e-6);
}

TEST(Cg, IdentityInOne) {
  const RunResult r = run_cg_quadratic(QuadraticOperator::diagonal(VectorXd::Ones(4), VectorXd::Ones(4)),
                                       config(Method::cg));
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_EQ(r.iterations, 1);
}

TEST(Cg, TwoEigenvaluesInTwo) {
  const auto op = QuadraticOperator::diagonal((VectorXd(2) << 1, 2).finished(), (VectorXd(2) << 1, 2).finished());
  const RunResult r = run_cg_quadratic(op, config(Method::cg));
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_LE(r.iterations, 2);
  EXPECT_NEAR(r.x_final[0], 1.0, 1e-12);
  EXPECT_NEAR(r.x_final[1], 1.0, 1e-12);
}

TEST(Cg, RejectsNonQuadraticProblem) {
  EXPECT_THROW(solve(make_example("ex1", 10), config(Method::cg)), std::invalid_argument);
}

TEST(Config, Validation) {
  auto cfg = config(Method::ss1);
  cfg.tol = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = config(Method::ss1, 0);
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_THROW(solve(make_example("ex1", 10), cfg), std::invalid_argument);
}

TEST(Config, MethodMismatchIsRejected) {
  EXPECT_THROW(run_ss2(make_example("ex1", 10), config(Method::ss1)), std::invalid_argument);
}

TEST(Config, NamesRoundTrip) {
  for (Method m : {Method::ss1, Method::ss2, Method::ss3, Method::ss2s, Method::ss3s, Method::bb, Method::cg}) {
    EXPECT_EQ(parse_method(to_string(m)), m);
  }
  EXPECT_EQ(parse_step_rule("dual"), StepRule::dual);
  EXPECT_EQ(parse_bb_variant("bb1"), BbVariant::bb1);
  EXPECT_THROW(parse_method("newton"), std::invalid_argument);
  EXPECT_THROW(parse_step_rule("armijo"), std::invalid_argument);
}

TEST(Config, AcocModeTightensTolerance) {
  auto cfg = config(Method::ss2);
  cfg.acoc_mode = true;
  EXPECT_EQ(cfg.effective_tol(), 1e-13);
  const RunResult r = run_ss2(make_example("ex1", 15), cfg);
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_LE(r.final_residual(), 1e-13);
}

TEST(Config, MaxNormStopping) {
  auto cfg = config(Method::ss1);
  cfg.stop_norm = StopNorm::max;
  const Problem p = make_example("ex8", 100);
  const RunResult r = run_ss1(p, cfg);
  EXPECT_EQ(r.status, Status::converged);
  EXPECT_LE(p.gradient(r.x_final).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Preconditioning, Ex4preFarFasterThanEx4) {
  const auto cfg = config(Method::ss2);
  EXPECT_LE(run_ss2(make_example("ex4pre", 1000), cfg).iterations, 10);
  EXPECT_GE(run_ss2(make_example("ex4", 1000), cfg).iterations, 100);
}

// SS1 residual norms decrease strictly on SPD diagonal quadratics and every
// step is positive.
TEST(SolverProperties, Ss1MonotoneOnRandomSpdDiagonals) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 5 + trial;
    const VectorXd d = oracles::random_diagonal(rng, n, 0.5, 50.0);
    const VectorXd b = oracles::random_vector(rng, n, -10, 10);
    const Problem p = Problem::from_quadratic("rand", QuadraticOperator::diagonal(d, b),
                                              oracles::random_vector(rng, n, -10, 10));
    const auto cfg = config(Method::ss1, 20000);
    const RunResult r = run_ss1(p, cfg);
    ASSERT_EQ(r.status, Status::converged) << "trial " << trial;
    for (std::size_t k = 0; k + 1 < r.trace.size(); ++k) {
      EXPECT_LT(r.trace[k + 1].residual_norm, r.trace[k].residual_norm) << "trial " << trial << " k " << k;
      EXPECT_GT(*r.trace[k].alpha, 0.0);
    }
  }
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same_bits(const std::optional<double>& a, const std::optional<double>& b) {
  return a.has_value() == b.has_value() && (!a || same_bits(*a, *b));
}

bool same_trace(const IterationTrace& a, const IterationTrace& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.k != y.k || !same_bits(x.residual_norm, y.residual_norm) || !same_bits(x.alpha, y.alpha) ||
        !same_bits(x.t_factor, y.t_factor) || !same_bits(x.beta, y.beta) || !same_bits(x.gamma, y.gamma)) {
      return false;
    }
  }
  return true;
}

TEST(SolverProperties, RerunsAreBitIdentical) {
  const Problem ex9 = make_example("ex9", 200, 5);
  const Problem ex9_again = make_example("ex9", 200, 5);
  for (Method m : {Method::ss1, Method::ss2, Method::ss3, Method::ss2s, Method::ss3s, Method::bb, Method::cg}) {
    const auto cfg = config(m, 300);
    const RunResult a = solve(ex9, cfg);
    const RunResult b = solve(ex9_again, cfg);
    EXPECT_TRUE(same_trace(a.trace, b.trace)) << to_string(m);
    EXPECT_EQ(a.x_final, b.x_final) << to_string(m);
  }
  for (Method m : {Method::ss1, Method::ss2, Method::ss3, Method::bb}) {
    const RunResult a = solve(make_example("ex3", 100), config(m));
    const RunResult b = solve(make_example("ex3", 100), config(m));
    EXPECT_TRUE(same_trace(a.trace, b.trace)) << to_string(m);
  }
}

}  // namespace
