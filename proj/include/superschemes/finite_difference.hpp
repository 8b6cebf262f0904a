#pragma once

#include "superschemes/problem.hpp"

namespace superschemes {

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h of the problem's
/// objective. Throws std::logic_error when the problem has no objective.
VectorXd finite_diff_gradient(const Problem& problem, const Eigen::Ref<const VectorXd>& x, double h);

struct GradientCheck {
  double max_relative_error = 0.0;
  Index worst_component = 0;
};

/// Component-wise |g_i - fd_i| / max(|g_i|, |fd_i|, floor).
GradientCheck compare_gradients(const Eigen::Ref<const VectorXd>& analytic,
                                const Eigen::Ref<const VectorXd>& numeric, double absolute_floor = 1e-8);

GradientCheck gradcheck(const Problem& problem, const Eigen::Ref<const VectorXd>& x, double h);

}  // namespace superschemes
