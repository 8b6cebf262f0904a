#include "superschemes/acoc.hpp"

#include <algorithm>
#include <cmath>

namespace superschemes {
namespace {

bool usable(double r) { return std::isfinite(r) && r >= kAcocResidualFloor; }

}  // namespace

AcocReport acoc(std::span<const double> residuals) {
  AcocReport report;
  report.residuals.assign(residuals.begin(), residuals.end());
  const auto count = std::count_if(residuals.begin(), residuals.end(), usable);
  if (count < 3) {
    report.status = "fewer than 3 usable residuals (need positive values above 1e-290)";
    return report;
  }
  for (std::size_t k = 1; k + 1 < residuals.size(); ++k) {
    const double prev = residuals[k - 1];
    const double cur = residuals[k];
    const double next = residuals[k + 1];
    std::optional<double> rho;
    if (usable(prev) && usable(cur) && usable(next)) {
      const double denom = std::log(cur / prev);
      const double value = std::log(next / cur) / denom;
      if (denom != 0.0 && std::isfinite(value)) rho = value;
    }
    report.rho.push_back(rho);
    if (rho) report.rho_final = rho;
  }
  if (!report.rho_final) report.status = "no defined ratio (consecutive residuals equal or unusable)";
  return report;
}

}  // namespace superschemes
