#include "oracles.hpp"

#include "superschemes/step_rules.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace superschemes;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

TEST(StepPrimal, IdentityGivesUnitStep) { EXPECT_DOUBLE_EQ(step_size_primal(vec({1, 1}), vec({2, 2})), 1.0); }

TEST(StepPrimal, Diag12) { EXPECT_DOUBLE_EQ(step_size_primal(vec({1, 2}), vec({2, 6})), 9.0 / 17.0); }

TEST(StepPrimal, EqualGradientsBreakDown) {
  EXPECT_THROW(step_size_primal(vec({1, 2}), vec({1, 2})), BreakdownError);
  try {
    step_size_primal(vec({1, 2}), vec({1, 2}));
  } catch (const BreakdownError& e) {
    EXPECT_EQ(e.term(), "|g(w)-g(x)|^2");
  }
}

TEST(StepDual, IdentityGivesUnitStep) { EXPECT_DOUBLE_EQ(step_size_dual(vec({1, 1}), vec({2, 2})), 1.0); }

TEST(StepDual, Diag12) {
  const double dual = step_size_dual(vec({1, 2}), vec({2, 6}));
  EXPECT_DOUBLE_EQ(dual, 5.0 / 9.0);
  EXPECT_GE(dual, step_size_primal(vec({1, 2}), vec({2, 6})));
}

TEST(StepDual, OrthogonalDifferenceBreaksDown) {
  EXPECT_THROW(step_size_dual(vec({1, 0}), vec({1, 1})), BreakdownError);
}

TEST(StepRules, WorkOnFloatVectors) {
  const Eigen::VectorXf gx = Eigen::Vector2f(1, 2);
  const Eigen::VectorXf gw = Eigen::Vector2f(2, 6);
  EXPECT_FLOAT_EQ(step_size_primal(gx, gw), 9.0f / 17.0f);
}

TEST(TScalar, ZeroGyGivesOne) {
  EXPECT_EQ(t_scalar(vec({1, 3}), vec({-2, 5}), vec({0, 0})), 1.0);
}

TEST(TScalar, HandValues) {
  EXPECT_DOUBLE_EQ(t_scalar(vec({1, 0}), vec({0, 1}), vec({1, 1})), 3.0);
  EXPECT_DOUBLE_EQ(t_scalar(vec({1, 1}), vec({2, 2}), vec({-1, -1})), -0.5);
}

TEST(TScalar, ZeroGxBreaksDown) { EXPECT_THROW(t_scalar(vec({0, 0}), vec({1, 1}), vec({1, 1})), BreakdownError); }

TEST(Beta, ZeroGyGivesZeroEvenWithDegenerateDenominators) {
  EXPECT_EQ(beta_coeff(vec({1, 0}), vec({0, 1}), vec({0, 0})), 0.0);
}

TEST(Beta, HandValue) { EXPECT_DOUBLE_EQ(beta_coeff(vec({1, 0}), vec({1, 0}), vec({1, 0})), 3.0); }

TEST(Beta, OrthogonalGxGwBreaksDown) {
  try {
    beta_coeff(vec({1, 0}), vec({0, 1}), vec({1, 0}));
    FAIL() << "expected breakdown";
  } catch (const BreakdownError& e) {
    EXPECT_EQ(e.term(), "g(x)'g(w)");
  }
}

TEST(Gamma, ZeroGzGivesZero) {
  EXPECT_EQ(gamma_coeff(vec({1, 1}), vec({0, 0})), 0.0);
  EXPECT_EQ(gamma_coeff(vec({0, 0}), vec({0, 0})), 0.0);
}

TEST(Gamma, HandValues) {
  EXPECT_DOUBLE_EQ(gamma_coeff(vec({1, 1}), vec({1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(gamma_coeff(vec({1, 1}), vec({2, 0})), 2.0);
}

TEST(Gamma, OrthogonalBreaksDown) { EXPECT_THROW(gamma_coeff(vec({1, 0}), vec({0, 1})), BreakdownError); }

TEST(Bb, BothVariants) {
  EXPECT_DOUBLE_EQ(bb_step(vec({1, 1}), vec({1, 2}), BbVariant::bb2), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(bb_step(vec({1, 1}), vec({1, 2}), BbVariant::bb1), 3.0 / 5.0);
  EXPECT_THROW(bb_step(vec({1, 0}), vec({0, 1}), BbVariant::bb2), BreakdownError);
}

TEST(Guard, RelativeAndAbsoluteFloors) {
  const Guard g;
  EXPECT_TRUE(g.degenerate(0.0, 1.0));
  EXPECT_TRUE(g.degenerate(1e-31, 0.0));
  EXPECT_FALSE(g.degenerate(1e-29, 0.0));
  EXPECT_TRUE(g.degenerate(1e-17, 1.0));
  EXPECT_FALSE(g.degenerate(1e-15, 1.0));
  EXPECT_TRUE(g.degenerate(std::nan(""), 1.0));
}

// Random SPD diagonal quadratic g(x) = D x - b with a random iterate.
struct QuadraticSample {
  VectorXd d, b, x, gx, gw;
};

QuadraticSample sample(std::mt19937_64& rng, Index n) {
  QuadraticSample s;
  s.d = oracles::random_diagonal(rng, n);
  s.b = oracles::random_vector(rng, n, -10, 10);
  s.x = oracles::random_vector(rng, n, -10, 10);
  s.gx = s.d.cwiseProduct(s.x) - s.b;
  const VectorXd w = s.x + s.gx;
  s.gw = s.d.cwiseProduct(w) - s.b;
  return s;
}

TEST(StepProperties, PositiveAndOrderedOnSpdQuadratics) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const QuadraticSample s = sample(rng, 1 + trial % 40);
    const double primal = step_size_primal(s.gx, s.gw);
    const double dual = step_size_dual(s.gx, s.gw);
    EXPECT_GT(primal, 0.0);
    EXPECT_GT(dual, 0.0);
    EXPECT_GE(dual, primal * (1 - 1e-14));
  }
}

TEST(StepProperties, QuadraticModelIsExact) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const QuadraticSample s = sample(rng, 20);
    const VectorXd diff = s.gw - s.gx;
    for (double alpha : {-1.0, 0.0, 0.01, 0.1, 0.3, 1.0, 2.5}) {
      const VectorXd y = s.x - alpha * s.gx;
      const double direct = (s.d.cwiseProduct(y) - s.b).squaredNorm();
      const double model = s.gx.squaredNorm() - 2 * alpha * s.gx.dot(diff) + alpha * alpha * diff.squaredNorm();
      EXPECT_NEAR(direct, model, 1e-10 * std::max(direct, s.gx.squaredNorm())) << "alpha " << alpha;
    }
  }
}

TEST(StepProperties, PrimalStepMatchesLineSearchOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const QuadraticSample s = sample(rng, 10);
    const auto residual2 = [&](long double alpha) {
      long double acc = 0;
      for (Index i = 0; i < s.d.size(); ++i) {
        const long double yi = static_cast<long double>(s.x[i]) - alpha * s.gx[i];
        const long double gi = static_cast<long double>(s.d[i]) * yi - s.b[i];
        acc += gi * gi;
      }
      return acc;
    };
    const long double hi = 2.0L / s.d.minCoeff();
    const double oracle = static_cast<double>(oracles::golden_section(residual2, 0.0L, hi, 1e-13L));
    EXPECT_NEAR(step_size_primal(s.gx, s.gw), oracle, 1e-8);
  }
}

}  // namespace
