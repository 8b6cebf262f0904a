#pragma once

#include "superschemes/types.hpp"

#include <variant>

namespace superschemes {

/// Symmetric positive-definite operator A with right-hand side b, the data of
/// f(x) = 1/2 x'Ax - b'x. Storage is structure-aware so matvec costs O(n) for
/// diagonal and tridiagonal operators.
class QuadraticOperator {
 public:
  enum class Kind { diagonal, tridiagonal, dense };

  struct Diagonal {
    VectorXd diag;
  };
  /// Symmetric tridiagonal: `off` holds the n-1 sub (= super) diagonal entries.
  struct Tridiagonal {
    VectorXd diag;
    VectorXd off;
  };
  struct Dense {
    MatrixXd matrix;
  };

  static QuadraticOperator diagonal(VectorXd diag, VectorXd rhs);
  static QuadraticOperator tridiagonal(VectorXd diag, VectorXd off, VectorXd rhs);
  static QuadraticOperator dense(MatrixXd matrix, VectorXd rhs);

  Kind kind() const noexcept;
  Index dim() const noexcept { return rhs_.size(); }
  const VectorXd& rhs() const noexcept { return rhs_; }

  VectorXd matvec(const Eigen::Ref<const VectorXd>& x) const;
  void matvec(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> out) const;

  /// Ax - b.
  void residual(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> out) const;

  double objective(const Eigen::Ref<const VectorXd>& x) const;

  MatrixXd to_dense() const;

  const std::variant<Diagonal, Tridiagonal, Dense>& storage() const noexcept { return data_; }

 private:
  QuadraticOperator(std::variant<Diagonal, Tridiagonal, Dense> data, VectorXd rhs)
      : data_(std::move(data)), rhs_(std::move(rhs)) {}

  std::variant<Diagonal, Tridiagonal, Dense> data_;
  VectorXd rhs_;
};

}  // namespace superschemes
