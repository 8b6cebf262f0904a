#pragma once

#include "superschemes/quadratic.hpp"
#include "superschemes/types.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace superschemes {

/// Gradient oracle for min f(x): dimension, default start point, analytic
/// gradient, and optionally the objective and a known minimiser.
///
/// Instances are immutable once built; copies share the underlying callables
/// and operator data, so a Problem may be evaluated from several threads.
class Problem {
 public:
  using GradientFn = std::function<void(const Eigen::Ref<const VectorXd>&, Eigen::Ref<VectorXd>)>;
  using ObjectiveFn = std::function<double(const Eigen::Ref<const VectorXd>&)>;

  Problem(std::string id, VectorXd x0, GradientFn gradient, ObjectiveFn objective = {},
          std::optional<VectorXd> solution = std::nullopt);

  /// g(x) = Ax - b.
  static Problem from_quadratic(std::string id, QuadraticOperator op, VectorXd x0,
                                std::optional<VectorXd> solution = std::nullopt);

  const std::string& id() const noexcept { return id_; }
  Index dim() const noexcept { return x0_.size(); }
  const VectorXd& x0() const noexcept { return x0_; }

  /// Writes g(x) into `out`. Returns false when any component is nonfinite;
  /// the caller decides how to treat divergence.
  bool gradient(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> out) const;
  VectorXd gradient(const Eigen::Ref<const VectorXd>& x) const;

  bool has_objective() const noexcept { return static_cast<bool>(objective_); }
  double objective(const Eigen::Ref<const VectorXd>& x) const;

  const std::optional<VectorXd>& solution() const noexcept { return solution_; }

  /// Non-null for problems whose gradient is an affine map Ax - b.
  const QuadraticOperator* quadratic() const noexcept { return quadratic_.get(); }

  /// Same problem started from a different point.
  Problem with_start(VectorXd x0) const;

 private:
  void check_dim(Index got) const;

  std::string id_;
  VectorXd x0_;
  GradientFn gradient_;
  ObjectiveFn objective_;
  std::optional<VectorXd> solution_;
  std::shared_ptr<const QuadraticOperator> quadratic_;
};

}  // namespace superschemes
