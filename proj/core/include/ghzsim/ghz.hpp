#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ghzsim {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 64;

/// GHZ register (|up...up> + e^{i phase} |down...down>) / sqrt(2).
struct GhzSpec {
  int qubits = 0;
  double phase = 0.0;  // radians, in [0, 2pi)
};

/// Builds a validated spec. Throws std::invalid_argument unless 1 <= qubits <= 64.
GhzSpec make_ghz(int qubits, double phase);

/// Analyzer setting for one site. The site operator is
/// sigma^theta + i*sign*sigma^(theta + pi/2), i.e. 2 sigma_+ e^{-i theta}
/// for sign = +1 and 2 sigma_- e^{+i theta} for sign = -1.
struct SiteSetting {
  double theta = 0.0;
  int sign = +1;
};

class MeasurementPlan {
 public:
  MeasurementPlan() = default;
  explicit MeasurementPlan(std::vector<SiteSetting> settings);

  /// Same (theta, sign) on every site.
  static MeasurementPlan uniform(int qubits, double theta, int sign);

  std::size_t size() const { return settings_.size(); }
  const SiteSetting& operator[](std::size_t j) const { return settings_[j]; }
  std::span<const SiteSetting> settings() const { return settings_; }

  /// +1 or -1 when all sites agree, 0 for a mixed plan.
  int common_sign() const;

 private:
  std::vector<SiteSetting> settings_;
};

struct Preset {
  GhzSpec spec;
  MeasurementPlan plan;
};

enum class PresetKind { mermin, ardehali, automatic };

PresetKind parse_preset(std::string_view name);
std::string_view to_string(PresetKind kind);

/// Odd M >= 3: phase pi/2, theta = 0, sign +1 everywhere. Im<A> = 2^{M-1}.
Preset mermin_preset(int qubits);

/// Even M >= 2: phase pi, sign -1 everywhere, theta = 0 except theta_M = pi/4.
/// Gives Re<A> + Im<A> = -2^{M-1/2}; the Bell statistic is taken in magnitude.
Preset ardehali_preset(int qubits);

/// Mermin for odd M, Ardehali for even M. Explicit kinds are checked for parity.
Preset make_preset(PresetKind kind, int qubits);

/// Exact <A> on the GHZ state, from the two-branch ladder-operator algebra.
Complex closed_form_A(const GhzSpec& spec, const MeasurementPlan& plan);

struct ReferenceValues {
  Complex qm_A;             // exact <A> for the parity-appropriate preset
  double qm_v = 0.0;        // 2^{M-1/2}
  double mabk_bound = 0.0;  // 2^{M/2}
  double svetlichny_bound = 0.0;  // 2^{M-1}
};

ReferenceValues reference_values(int qubits);

/// Bell statistic from a complex moment: Re+Im for even M, sqrt(2) Im for odd M.
double v_statistic(Complex a, int qubits);

}  // namespace ghzsim
