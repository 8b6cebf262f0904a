#include "superschemes/quadratic.hpp"

#include <string>

namespace superschemes {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("QuadraticOperator: " + what);
}

void check_dim(Index expected, Index got) {
  if (expected != got) {
    throw std::invalid_argument("QuadraticOperator: dimension mismatch (expected " +
                                std::to_string(expected) + ", got " + std::to_string(got) + ")");
  }
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

QuadraticOperator QuadraticOperator::diagonal(VectorXd diag, VectorXd rhs) {
  require(diag.size() >= 1, "empty operator");
  check_dim(diag.size(), rhs.size());
  require(diag.allFinite() && rhs.allFinite(), "nonfinite entries");
  require((diag.array() > 0.0).all(), "diagonal entries must be positive");
  return QuadraticOperator(Diagonal{std::move(diag)}, std::move(rhs));
}

QuadraticOperator QuadraticOperator::tridiagonal(VectorXd diag, VectorXd off, VectorXd rhs) {
  const Index n = diag.size();
  require(n >= 1, "empty operator");
  check_dim(n, rhs.size());
  check_dim(n - 1, off.size());
  require(diag.allFinite() && off.allFinite() && rhs.allFinite(), "nonfinite entries");
  // LDL' pivots of a symmetric tridiagonal matrix are all positive iff it is SPD.
  double pivot = diag[0];
  require(pivot > 0.0, "not positive definite (pivot 0)");
  for (Index i = 1; i < n; ++i) {
    pivot = diag[i] - off[i - 1] * off[i - 1] / pivot;
    require(pivot > 0.0, "not positive definite (pivot " + std::to_string(i) + ")");
  }
  return QuadraticOperator(Tridiagonal{std::move(diag), std::move(off)}, std::move(rhs));
}

QuadraticOperator QuadraticOperator::dense(MatrixXd matrix, VectorXd rhs) {
  require(matrix.rows() >= 1 && matrix.rows() == matrix.cols(), "matrix must be square");
  check_dim(matrix.rows(), rhs.size());
  require(matrix.allFinite() && rhs.allFinite(), "nonfinite entries");
  const double scale = matrix.cwiseAbs().maxCoeff();
  require((matrix - matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "matrix is not symmetric");
  Eigen::LLT<MatrixXd> llt(matrix);
  require(llt.info() == Eigen::Success, "not positive definite");
  return QuadraticOperator(Dense{std::move(matrix)}, std::move(rhs));
}

QuadraticOperator::Kind QuadraticOperator::kind() const noexcept {
  return std::visit(Overloaded{[](const Diagonal&) { return Kind::diagonal; },
                               [](const Tridiagonal&) { return Kind::tridiagonal; },
                               [](const Dense&) { return Kind::dense; }},
                    data_);
}

VectorXd QuadraticOperator::matvec(const Eigen::Ref<const VectorXd>& x) const {
  VectorXd out(dim());
  matvec(x, out);
  return out;
}

void QuadraticOperator::matvec(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> out) const {
  check_dim(dim(), x.size());
  check_dim(dim(), out.size());
  std::visit(Overloaded{
                 [&](const Diagonal& d) { out = d.diag.cwiseProduct(x); },
                 [&](const Tridiagonal& t) {
                   const Index n = dim();
                   out = t.diag.cwiseProduct(x);
                   if (n > 1) {
                     out.head(n - 1) += t.off.cwiseProduct(x.tail(n - 1));
                     out.tail(n - 1) += t.off.cwiseProduct(x.head(n - 1));
                   }
                 },
                 [&](const Dense& m) { out.noalias() = m.matrix * x; },
             },
             data_);
}

void QuadraticOperator::residual(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> out) const {
  matvec(x, out);
  out -= rhs_;
}

double QuadraticOperator::objective(const Eigen::Ref<const VectorXd>& x) const {
  return 0.5 * x.dot(matvec(x)) - rhs_.dot(x);
}

MatrixXd QuadraticOperator::to_dense() const {
  return std::visit(Overloaded{
                        [](const Diagonal& d) -> MatrixXd { return d.diag.asDiagonal(); },
                        [this](const Tridiagonal& t) -> MatrixXd {
                          const Index n = dim();
                          MatrixXd a = MatrixXd::Zero(n, n);
                          a.diagonal() = t.diag;
                          if (n > 1) {
                            a.diagonal(1) = t.off;
                            a.diagonal(-1) = t.off;
                          }
                          return a;
                        },
                        [](const Dense& m) -> MatrixXd { return m.matrix; },
                    },
                    data_);
}

}  // namespace superschemes
