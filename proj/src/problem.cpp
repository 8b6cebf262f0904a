#include "superschemes/problem.hpp"

namespace superschemes {

Problem::Problem(std::string id, VectorXd x0, GradientFn gradient, ObjectiveFn objective,
                 std::optional<VectorXd> solution)
    : id_(std::move(id)),
      x0_(std::move(x0)),
      gradient_(std::move(gradient)),
      objective_(std::move(objective)),
      solution_(std::move(solution)) {
  if (x0_.size() < 1) throw std::invalid_argument("Problem: dimension must be positive");
  if (!gradient_) throw std::invalid_argument("Problem: gradient is required");
  if (solution_ && solution_->size() != x0_.size()) {
    throw std::invalid_argument("Problem: solution has wrong dimension");
  }
}

Problem Problem::from_quadratic(std::string id, QuadraticOperator op, VectorXd x0,
                                std::optional<VectorXd> solution) {
  if (op.dim() != x0.size()) throw std::invalid_argument("Problem: x0 does not match operator");
  auto shared = std::make_shared<const QuadraticOperator>(std::move(op));
  Problem p(
      std::move(id), std::move(x0),
      [shared](const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> g) { shared->residual(x, g); },
      [shared](const Eigen::Ref<const VectorXd>& x) { return shared->objective(x); },
      std::move(solution));
  p.quadratic_ = std::move(shared);
  return p;
}

void Problem::check_dim(Index got) const {
  if (got != dim()) {
    throw std::invalid_argument("Problem " + id_ + ": expected vector of length " +
                                std::to_string(dim()) + ", got " + std::to_string(got));
  }
}

bool Problem::gradient(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> out) const {
  check_dim(x.size());
  check_dim(out.size());
  gradient_(x, out);
  return out.allFinite();
}

VectorXd Problem::gradient(const Eigen::Ref<const VectorXd>& x) const {
  VectorXd g(dim());
  gradient(x, g);
  return g;
}

double Problem::objective(const Eigen::Ref<const VectorXd>& x) const {
  if (!objective_) throw std::logic_error("Problem " + id_ + " has no objective");
  check_dim(x.size());
  return objective_(x);
}

Problem Problem::with_start(VectorXd x0) const {
  check_dim(x0.size());
  Problem copy = *this;
  copy.x0_ = std::move(x0);
  return copy;
}

}  // namespace superschemes
