#include "superschemes/finite_difference.hpp"

#include <algorithm>
#include <cmath>

namespace superschemes {

VectorXd finite_diff_gradient(const Problem& problem, const Eigen::Ref<const VectorXd>& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff_gradient: h must be positive");
  if (!problem.has_objective()) {
    throw std::logic_error("finite_diff_gradient: problem " + problem.id() + " has no objective");
  }
  VectorXd probe = x;
  VectorXd out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double xi = probe[i];
    probe[i] = xi + h;
    const double fp = problem.objective(probe);
    probe[i] = xi - h;
    const double fm = problem.objective(probe);
    probe[i] = xi;
    out[i] = (fp - fm) / (2.0 * h);
  }
  return out;
}

GradientCheck compare_gradients(const Eigen::Ref<const VectorXd>& analytic,
                                const Eigen::Ref<const VectorXd>& numeric, double absolute_floor) {
  if (analytic.size() != numeric.size()) throw std::invalid_argument("compare_gradients: size mismatch");
  GradientCheck result;
  for (Index i = 0; i < analytic.size(); ++i) {
    const double scale = std::max({std::abs(analytic[i]), std::abs(numeric[i]), absolute_floor});
    const double err = std::abs(analytic[i] - numeric[i]) / scale;
    if (err > result.max_relative_error || std::isnan(err)) {
      result.max_relative_error = err;
      result.worst_component = i;
    }
  }
  return result;
}

GradientCheck gradcheck(const Problem& problem, const Eigen::Ref<const VectorXd>& x, double h) {
  return compare_gradients(problem.gradient(x), finite_diff_gradient(problem, x, h));
}

}  // namespace superschemes
