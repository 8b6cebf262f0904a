#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace superschemes {

/// Residuals below this are too close to underflow for a meaningful log ratio.
inline constexpr double kAcocResidualFloor = 1e-290;

/// Approximate computational order of convergence,
///   rho_k = log(r_{k+1} / r_k) / log(r_k / r_{k-1}),  k = 1 .. len - 2.
struct AcocReport {
  /// rho[k - 1] holds rho_k; empty optional where it is undefined.
  std::vector<std::optional<double>> rho;
  std::optional<double> rho_final;
  std::vector<double> residuals;
  /// "ok", or the reason no estimate could be formed.
  std::string status = "ok";
};

AcocReport acoc(std::span<const double> residuals);

}  // namespace superschemes
