#include "ghzsim/ghz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ghzsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phase) {
  if (!std::isfinite(phase)) {
    throw std::invalid_argument("GHZ phase must be finite");
  }
  double wrapped = std::fmod(phase, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod of a value just below 2pi can round up to exactly 2pi.
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

void check_qubits(int qubits, int lo) {
  if (qubits < lo || qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(qubits) +
                                " outside [" + std::to_string(lo) + ", " +
                                std::to_string(kMaxQubits) + "]");
  }
}

}  // namespace

GhzSpec make_ghz(int qubits, double phase) {
  check_qubits(qubits, 1);
  return GhzSpec{qubits, wrap_phase(phase)};
}

MeasurementPlan::MeasurementPlan(std::vector<SiteSetting> settings)
    : settings_(std::move(settings)) {
  for (const auto& s : settings_) {
    if (s.sign != 1 && s.sign != -1) {
      throw std::invalid_argument("measurement sign must be +1 or -1");
    }
    if (!std::isfinite(s.theta)) {
      throw std::invalid_argument("measurement angle must be finite");
    }
  }
}

MeasurementPlan MeasurementPlan::uniform(int qubits, double theta, int sign) {
  return MeasurementPlan(std::vector<SiteSetting>(static_cast<std::size_t>(qubits),
                                                  SiteSetting{theta, sign}));
}

int MeasurementPlan::common_sign() const {
  if (settings_.empty()) return 0;
  const int first = settings_.front().sign;
  for (const auto& s : settings_) {
    if (s.sign != first) return 0;
  }
  return first;
}

PresetKind parse_preset(std::string_view name) {
  if (name == "mermin") return PresetKind::mermin;
  if (name == "ardehali") return PresetKind::ardehali;
  if (name == "auto") return PresetKind::automatic;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

std::string_view to_string(PresetKind kind) {
  switch (kind) {
    case PresetKind::mermin: return "mermin";
    case PresetKind::ardehali: return "ardehali";
    case PresetKind::automatic: return "auto";
  }
  return "?";
}

Preset mermin_preset(int qubits) {
  if (qubits % 2 == 0) {
    throw std::invalid_argument("Mermin preset requires odd M");
  }
  check_qubits(qubits, 3);
  return Preset{make_ghz(qubits, std::numbers::pi / 2.0),
                MeasurementPlan::uniform(qubits, 0.0, +1)};
}

Preset ardehali_preset(int qubits) {
  if (qubits % 2 != 0) {
    throw std::invalid_argument("Ardehali preset requires even M");
  }
  check_qubits(qubits, 2);
  std::vector<SiteSetting> sites(static_cast<std::size_t>(qubits), SiteSetting{0.0, -1});
  sites.back().theta = std::numbers::pi / 4.0;
  return Preset{make_ghz(qubits, std::numbers::pi), MeasurementPlan(std::move(sites))};
}

Preset make_preset(PresetKind kind, int qubits) {
  switch (kind) {
    case PresetKind::mermin: return mermin_preset(qubits);
    case PresetKind::ardehali: return ardehali_preset(qubits);
    case PresetKind::automatic:
      return qubits % 2 == 0 ? ardehali_preset(qubits) : mermin_preset(qubits);
  }
  throw std::invalid_argument("unknown preset kind");
}

Complex closed_form_A(const GhzSpec& spec, const MeasurementPlan& plan) {
  if (plan.size() != static_cast<std::size_t>(spec.qubits)) {
    throw std::invalid_argument("plan length does not match qubit count");
  }
  // prod sigma_+ maps |down...down> to |up...up>; prod sigma_- the reverse.
  // Any mixed product annihilates both branches.
  const int sign = plan.common_sign();
  if (sign == 0) return {0.0, 0.0};
  double theta_sum = 0.0;
  for (const auto& s : plan.settings()) theta_sum += s.theta;
  const double magnitude = std::ldexp(1.0, spec.qubits - 1);
  return std::polar(magnitude, sign * (spec.phase - theta_sum));
}

ReferenceValues reference_values(int qubits) {
  check_qubits(qubits, 2);
  const Preset preset = make_preset(PresetKind::automatic, qubits);
  ReferenceValues ref;
  ref.qm_A = closed_form_A(preset.spec, preset.plan);
  ref.qm_v = std::pow(2.0, qubits - 0.5);
  ref.mabk_bound = std::pow(2.0, qubits / 2.0);
  ref.svetlichny_bound = std::ldexp(1.0, qubits - 1);
  return ref;
}

double v_statistic(Complex a, int qubits) {
  return qubits % 2 == 0 ? a.real() + a.imag() : std::numbers::sqrt2 * a.imag();
}

}  // namespace ghzsim
