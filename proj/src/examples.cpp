#include "superschemes/examples.hpp"

#include "superschemes/random.hpp"

#include <array>
#include <cmath>
#include <string>

namespace superschemes {
namespace {

using ConstRef = const Eigen::Ref<const VectorXd>&;
using Ref = Eigen::Ref<VectorXd>;

constexpr std::array<std::pair<ProblemId, std::string_view>, 9> kNames{{
    {ProblemId::ex1, "ex1"},
    {ProblemId::ex2, "ex2"},
    {ProblemId::ex3, "ex3"},
    {ProblemId::ex4, "ex4"},
    {ProblemId::ex4pre, "ex4pre"},
    {ProblemId::ex5, "ex5"},
    {ProblemId::ex6, "ex6"},
    {ProblemId::ex8, "ex8"},
    {ProblemId::ex9, "ex9"},
}};

VectorXd repeating(Index n, std::initializer_list<double> pattern) {
  VectorXd v(n);
  const auto period = static_cast<Index>(pattern.size());
  for (Index i = 0; i < n; ++i) v[i] = *(pattern.begin() + i % period);
  return v;
}

// sum_i (e^{x_i} - x_i)
double exp_minus_linear(ConstRef x) { return (x.array().exp() - x.array()).sum(); }

void expm1_gradient(ConstRef x, Ref g) {
  for (Index i = 0; i < x.size(); ++i) g[i] = std::expm1(x[i]);
}

VectorXd index_weights(Index n) {
  return VectorXd::LinSpaced(n, 1.0, static_cast<double>(n)) / 10.0;
}

// r_i = (5 - 3 x_i - x_i^2) x_i - x_{i-1} - 3 x_{i+1} + 1, with x_0 = x_{n+1} = 0.
void tridiagonal_residual(ConstRef x, Ref r) {
  const Index n = x.size();
  for (Index i = 0; i < n; ++i) {
    const double left = i > 0 ? x[i - 1] : 0.0;
    const double right = i + 1 < n ? x[i + 1] : 0.0;
    r[i] = (5.0 - 3.0 * x[i] - x[i] * x[i]) * x[i] - left - 3.0 * right + 1.0;
  }
}

Problem make_ex1(Index n) {
  return Problem("ex1", VectorXd::Ones(n), expm1_gradient, exp_minus_linear, VectorXd::Zero(n));
}

Problem make_ex2(Index n) {
  auto gradient = [](ConstRef x, Ref g) {
    const Index n = x.size();
    VectorXd r(n);
    tridiagonal_residual(x, r);
    for (Index j = 0; j < n; ++j) {
      double gj = 2.0 * r[j] * (5.0 - 6.0 * x[j] - 3.0 * x[j] * x[j]);
      if (j + 1 < n) gj -= 2.0 * r[j + 1];  // x_j enters r_{j+1} as -x_j
      if (j > 0) gj -= 6.0 * r[j - 1];      // and r_{j-1} as -3 x_j
      g[j] = gj;
    }
  };
  auto objective = [](ConstRef x) {
    VectorXd r(x.size());
    tridiagonal_residual(x, r);
    return r.squaredNorm();
  };
  return Problem("ex2", VectorXd::Constant(n, -0.8), gradient, objective);
}

// sum_{i<n} (x_{i+1} - x_i^p)^2 + (1 - x_i)^2 for p = 2 (ex3) or p = 3 (ex5).
template <int Power>
Problem make_chained(std::string id, VectorXd x0) {
  const Index n = x0.size();
  auto gradient = [](ConstRef x, Ref g) {
    const Index n = x.size();
    g.setZero();
    for (Index i = 0; i + 1 < n; ++i) {
      const double xp = Power == 2 ? x[i] * x[i] : x[i] * x[i] * x[i];
      const double dxp = Power == 2 ? 2.0 * x[i] : 3.0 * x[i] * x[i];
      const double a = x[i + 1] - xp;
      g[i] += -2.0 * a * dxp - 2.0 * (1.0 - x[i]);
      g[i + 1] += 2.0 * a;
    }
  };
  auto objective = [](ConstRef x) {
    double f = 0.0;
    for (Index i = 0; i + 1 < x.size(); ++i) {
      const double xp = Power == 2 ? x[i] * x[i] : x[i] * x[i] * x[i];
      const double a = x[i + 1] - xp;
      f += a * a + (1.0 - x[i]) * (1.0 - x[i]);
    }
    return f;
  };
  return Problem(std::move(id), std::move(x0), gradient, objective, VectorXd::Ones(n));
}

Problem make_ex4(Index n) {
  const VectorXd w = index_weights(n);
  auto gradient = [w](ConstRef x, Ref g) {
    for (Index i = 0; i < x.size(); ++i) g[i] = w[i] * std::expm1(x[i]);
  };
  auto objective = [w](ConstRef x) { return w.dot((x.array().exp() - x.array()).matrix()); };
  return Problem("ex4", VectorXd::Constant(n, 0.3), gradient, objective, VectorXd::Zero(n));
}

// ex4 with its gradient premultiplied by diag(i/10)^{-1}: the ex1 system.
Problem make_ex4pre(Index n) {
  return Problem("ex4pre", VectorXd::Constant(n, 0.3), expm1_gradient, exp_minus_linear, VectorXd::Zero(n));
}

Problem make_ex6(Index n) {
  auto gradient = [](ConstRef x, Ref g) {
    for (Index i = 0; i + 1 < x.size(); i += 2) {
      const double u = x[i];
      const double v = x[i + 1];
      const double q = u * u + v * v + u * v;
      g[i] = 2.0 * q * (2.0 * u + v) + std::sin(2.0 * u);
      g[i + 1] = 2.0 * q * (2.0 * v + u) - std::sin(2.0 * v);
    }
  };
  auto objective = [](ConstRef x) {
    double f = 0.0;
    for (Index i = 0; i + 1 < x.size(); i += 2) {
      const double u = x[i];
      const double v = x[i + 1];
      const double q = u * u + v * v + u * v;
      const double s = std::sin(u);
      const double c = std::cos(v);
      f += q * q + s * s + c * c;
    }
    return f;
  };
  return Problem("ex6", repeating(n, {3.0, 0.1}), gradient, objective);
}

Problem make_ex8() {
  const Index n = 100;
  VectorXd diag = VectorXd::LinSpaced(n, 1.0, 100.0);
  VectorXd solution = diag.cwiseInverse();
  return Problem::from_quadratic("ex8", QuadraticOperator::diagonal(std::move(diag), VectorXd::Ones(n)),
                                 VectorXd::Zero(n), std::move(solution));
}

}  // namespace

std::string_view to_string(ProblemId id) noexcept {
  for (const auto& [key, name] : kNames) {
    if (key == id) return name;
  }
  return "unknown";
}

ProblemId parse_problem_id(std::string_view name) {
  for (const auto& [key, text] : kNames) {
    if (text == name) return key;
  }
  std::string valid;
  for (const auto& entry : kNames) valid += (valid.empty() ? "" : ", ") + std::string(entry.second);
  throw std::invalid_argument("unknown problem '" + std::string(name) + "' (valid: " + valid + ")");
}

const std::vector<ProblemId>& all_problem_ids() {
  static const std::vector<ProblemId> ids = [] {
    std::vector<ProblemId> out;
    for (const auto& entry : kNames) out.push_back(entry.first);
    return out;
  }();
  return ids;
}

std::pair<QuadraticOperator, VectorXd> stencil_system(Index n, std::uint64_t seed, Ex9Spacing spacing) {
  if (n < 2) throw std::invalid_argument("stencil_system: n must be at least 2");
  const double h = (spacing == Ex9Spacing::eleven_over_n ? 11.0 : 1.0) / static_cast<double>(n);
  const double inv_h2 = 1.0 / (h * h);
  Xoshiro256 rng(seed);
  VectorXd solution(n);
  for (Index i = 0; i < n; ++i) solution[i] = rng.uniform(-10.0, 10.0);
  auto op = QuadraticOperator::tridiagonal(VectorXd::Constant(n, 2.0 * inv_h2),
                                           VectorXd::Constant(n - 1, -inv_h2), VectorXd::Zero(n));
  VectorXd rhs = op.matvec(solution);
  op = QuadraticOperator::tridiagonal(VectorXd::Constant(n, 2.0 * inv_h2), VectorXd::Constant(n - 1, -inv_h2),
                                      std::move(rhs));
  return {std::move(op), std::move(solution)};
}

Problem make_example(ProblemId id, Index n, const ExampleOptions& options) {
  if (n < 2) throw std::invalid_argument("make_example: n must be at least 2");
  switch (id) {
    case ProblemId::ex1:
      return make_ex1(n);
    case ProblemId::ex2:
      return make_ex2(n);
    case ProblemId::ex3:
      return make_chained<2>("ex3", VectorXd::Constant(n, -1.2));
    case ProblemId::ex4:
      return make_ex4(n);
    case ProblemId::ex4pre:
      return make_ex4pre(n);
    case ProblemId::ex5:
      return make_chained<3>("ex5", options.ex5_start == Ex5Start::repeating_triple
                                        ? repeating(n, {-1.0, 2.0, 1.0})
                                        : repeating(n, {-1.2, 1.0}));
    case ProblemId::ex6:
      if (n % 2 != 0) throw std::invalid_argument("make_example: ex6 needs an even n, got " + std::to_string(n));
      return make_ex6(n);
    case ProblemId::ex8:
      if (n != 100) throw std::invalid_argument("make_example: ex8 is defined for n = 100 only, got " + std::to_string(n));
      return make_ex8();
    case ProblemId::ex9: {
      if (!options.seed) throw std::invalid_argument("make_example: ex9 requires a seed");
      auto [op, solution] = stencil_system(n, *options.seed, options.ex9_spacing);
      return Problem::from_quadratic("ex9", std::move(op), VectorXd::Zero(n), std::move(solution));
    }
  }
  throw std::invalid_argument("make_example: unhandled problem id");
}

Problem make_example(std::string_view id, Index n, std::optional<std::uint64_t> seed) {
  ExampleOptions options;
  options.seed = seed;
  return make_example(parse_problem_id(id), n, options);
}

}  // namespace superschemes
