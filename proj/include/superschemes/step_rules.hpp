#pragma once

#include "superschemes/types.hpp"

#include <algorithm>
#include <cmath>

namespace superschemes {

/// Denominator safeguard. A denominator d is degenerate when
/// |d| <= max(floor, relative * scale), where scale is the squared norm of
/// the gradient(s) it is built from.
struct Guard {
  double floor = 1e-30;
  double relative = 1e-16;

  bool degenerate(double denominator, double scale) const noexcept {
    return !(std::abs(denominator) > std::max(floor, relative * scale));
  }
};

// All rules below take the gradients at the current point x_k, the probe
// point w_k = x_k + g(x_k), and the sub-step points y_k / z_k. They accept any
// Eigen vector expression and throw BreakdownError on a degenerate denominator.

/// alpha = (g_w - g_x)'g_x / |g_w - g_x|^2, the minimiser of the linearised
/// residual |g_x - alpha (g_w - g_x)|^2.
template <class DX, class DW>
typename DX::Scalar step_size_primal(const Eigen::MatrixBase<DX>& gx, const Eigen::MatrixBase<DW>& gw,
                                     const Guard& guard = {}) {
  const auto diff = (gw - gx).eval();
  const auto denom = diff.squaredNorm();
  if (guard.degenerate(denom, gx.squaredNorm())) throw BreakdownError("|g(w)-g(x)|^2");
  return diff.dot(gx) / denom;
}

/// alpha = |g_x|^2 / g_x'(g_w - g_x).
template <class DX, class DW>
typename DX::Scalar step_size_dual(const Eigen::MatrixBase<DX>& gx, const Eigen::MatrixBase<DW>& gw,
                                   const Guard& guard = {}) {
  const auto gx2 = gx.squaredNorm();
  const auto denom = gx.dot(gw - gx);
  if (guard.degenerate(denom, gx2)) throw BreakdownError("g(x)'(g(w)-g(x))");
  return gx2 / denom;
}

/// T = 1 + g_x'g_y / |g_x|^2 + g_w'g_y / |g_w|^2.
template <class DX, class DW, class DY>
typename DX::Scalar t_scalar(const Eigen::MatrixBase<DX>& gx, const Eigen::MatrixBase<DW>& gw,
                             const Eigen::MatrixBase<DY>& gy, const Guard& guard = {}) {
  const auto gx2 = gx.squaredNorm();
  const auto gw2 = gw.squaredNorm();
  if (guard.degenerate(gx2, gx2)) throw BreakdownError("|g(x)|^2");
  if (guard.degenerate(gw2, gw2)) throw BreakdownError("|g(w)|^2");
  return typename DX::Scalar(1) + gx.dot(gy) / gx2 + gw.dot(gy) / gw2;
}

/// beta = |g_y|^2 (1/g_y'g_x + 1/|g_x|^2 + 1/g_x'g_w). Zero whenever g_y = 0,
/// even if a denominator degenerates: the sub-step is then already exact.
template <class DX, class DW, class DY>
typename DX::Scalar beta_coeff(const Eigen::MatrixBase<DX>& gx, const Eigen::MatrixBase<DW>& gw,
                               const Eigen::MatrixBase<DY>& gy, const Guard& guard = {}) {
  using Scalar = typename DX::Scalar;
  const Scalar gy2 = gy.squaredNorm();
  if (gy2 == Scalar(0)) return Scalar(0);
  const Scalar nx = gx.norm();
  const Scalar yx = gy.dot(gx);
  const Scalar xx = nx * nx;
  const Scalar xw = gx.dot(gw);
  if (guard.degenerate(yx, std::sqrt(gy2) * nx)) throw BreakdownError("g(y)'g(x)");
  if (guard.degenerate(xx, xx)) throw BreakdownError("|g(x)|^2");
  if (guard.degenerate(xw, nx * gw.norm())) throw BreakdownError("g(x)'g(w)");
  return gy2 * (Scalar(1) / yx + Scalar(1) / xx + Scalar(1) / xw);
}

/// gamma = |g_z|^2 / g_z'g_y, zero when g_z = 0.
template <class DY, class DZ>
typename DY::Scalar gamma_coeff(const Eigen::MatrixBase<DY>& gy, const Eigen::MatrixBase<DZ>& gz,
                                const Guard& guard = {}) {
  using Scalar = typename DY::Scalar;
  const Scalar gz2 = gz.squaredNorm();
  if (gz2 == Scalar(0)) return Scalar(0);
  const Scalar zy = gz.dot(gy);
  if (guard.degenerate(zy, std::sqrt(gz2) * gy.norm())) throw BreakdownError("g(z)'g(y)");
  return gz2 / zy;
}

/// Barzilai-Borwein steps from the secant pair s = x_k - x_{k-1},
/// y = g_k - g_{k-1}: bb1 = s'y / |y|^2, bb2 = |s|^2 / s'y.
enum class BbVariant { bb1, bb2 };

template <class DS, class DY>
typename DS::Scalar bb_step(const Eigen::MatrixBase<DS>& s, const Eigen::MatrixBase<DY>& y, BbVariant variant,
                            const Guard& guard = {}) {
  const auto sy = s.dot(y);
  const auto ns = s.norm();
  const auto ny = y.norm();
  if (guard.degenerate(sy, ns * ny)) throw BreakdownError("s'y");
  if (variant == BbVariant::bb1) {
    const auto yy = ny * ny;
    if (guard.degenerate(yy, yy)) throw BreakdownError("|y|^2");
    return sy / yy;
  }
  return ns * ns / sy;
}

}  // namespace superschemes
