#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace superschemes {

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using VectorXd = Eigen::VectorXd;
using MatrixXd = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Raised when a step-size or coefficient formula hits a degenerate
/// denominator. `term()` names the offending quantity.
class BreakdownError : public std::runtime_error {
 public:
  explicit BreakdownError(std::string term)
      : std::runtime_error("degenerate denominator: " + term), term_(std::move(term)) {}

  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.allFinite();
}

}  // namespace superschemes
