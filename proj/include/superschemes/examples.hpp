#pragma once

#include "superschemes/problem.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace superschemes {

/// Test problems by their stable CLI identifiers.
enum class ProblemId { ex1, ex2, ex3, ex4, ex4pre, ex5, ex6, ex8, ex9 };

std::string_view to_string(ProblemId id) noexcept;
/// Throws std::invalid_argument listing the valid identifiers.
ProblemId parse_problem_id(std::string_view name);
const std::vector<ProblemId>& all_problem_ids();

/// ex5 start point: repeating (-1, 2, 1) or the alternative reading (-1.2, 1).
enum class Ex5Start { repeating_triple, alternating_pair };

/// ex9 grid spacing h = 11/n (as printed) or h = 1/n.
enum class Ex9Spacing { eleven_over_n, one_over_n };

struct ExampleOptions {
  std::optional<std::uint64_t> seed;
  Ex5Start ex5_start = Ex5Start::repeating_triple;
  Ex9Spacing ex9_spacing = Ex9Spacing::eleven_over_n;
};

Problem make_example(ProblemId id, Index n, const ExampleOptions& options = {});
Problem make_example(std::string_view id, Index n, std::optional<std::uint64_t> seed = std::nullopt);

/// The tridiagonal stencil operator of ex9 with b = A x*, x* ~ U(-10, 10)^n.
/// Returns the operator and x*.
std::pair<QuadraticOperator, VectorXd> stencil_system(Index n, std::uint64_t seed,
                                                      Ex9Spacing spacing = Ex9Spacing::eleven_over_n);

}  // namespace superschemes
