#include "ghzsim/bell.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ghzsim {

namespace {

double significance(double value, double bound, double se) {
  if (se > 0.0) return (value - bound) / se;
  if (value == bound) return 0.0;
  return value > bound ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
}

}  // namespace

BellReport bell_report(const MomentEstimate& est, int qubits) {
  const ReferenceValues ref = reference_values(qubits);
  const VEstimate v = v_from_A(est, qubits);

  BellReport r;
  r.qubits = qubits;
  r.v_hat = std::abs(v.value);
  r.v_se = v.se;
  r.mabk_bound = ref.mabk_bound;
  r.qm_v = ref.qm_v;
  r.svetlichny_bound = ref.svetlichny_bound;
  r.zero_se = !(v.se > 0.0);
  r.sigma_mabk = significance(r.v_hat, r.mabk_bound, r.v_se);
  if (qubits % 2 == 0) {
    r.sigma_svetlichny = significance(r.v_hat, r.svetlichny_bound, r.v_se);
    r.genuine = r.v_hat / r.qm_v > 1.0 / std::numbers::sqrt2;
  }
  r.relative_error = r.v_se / r.qm_v;
  return r;
}

ScalingFit fit_error_exponent(std::span<const ScalingPoint> points) {
  if (points.size() < 4) throw std::invalid_argument("scaling fit needs at least 4 points");
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    if (!(p.relative_error > 0.0) || !std::isfinite(p.relative_error)) {
      throw std::invalid_argument("scaling fit needs positive finite relative errors");
    }
    sx += p.qubits;
    sy += std::log2(p.relative_error);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = p.qubits - mx;
    sxx += dx * dx;
    sxy += dx * (std::log2(p.relative_error) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("scaling fit needs distinct qubit counts");

  ScalingFit fit;
  fit.points.assign(points.begin(), points.end());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (const auto& p : points) {
    const double e = std::log2(p.relative_error) - (fit.intercept + fit.slope * p.qubits);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace ghzsim
