#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ghzsim/estimators.hpp"

namespace ghzsim {

/// Bell-violation summary for one qubit count. v_hat is the magnitude |V|
/// of the sampled statistic; significances are in units of v_se.
struct BellReport {
  int qubits = 0;
  double v_hat = 0.0;
  double v_se = 0.0;
  double mabk_bound = 0.0;
  double qm_v = 0.0;
  double svetlichny_bound = 0.0;
  double sigma_mabk = 0.0;
  std::optional<double> sigma_svetlichny;  // even M only
  std::optional<bool> genuine;             // even M only: v_hat / qm_v > 1/sqrt(2)
  double relative_error = 0.0;             // v_se / qm_v
  bool zero_se = false;                    // sigmas are 0 or +-inf
};

BellReport bell_report(const MomentEstimate& est, int qubits);

struct ScalingPoint {
  int qubits = 0;
  double relative_error = 0.0;
};

/// Ordinary least squares of log2(relative error) against M.
struct ScalingFit {
  std::vector<ScalingPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS residual in log2 units
};

ScalingFit fit_error_exponent(std::span<const ScalingPoint> points);

}  // namespace ghzsim
