#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ghzsim/ghz.hpp"

namespace ghzsim {

inline constexpr int kDefaultOracleCap = 14;

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense 2^M amplitude vector. Site j is bit j of the basis index, up = 1.
class StateVector {
 public:
  explicit StateVector(int qubits);

  int qubits() const { return qubits_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  double norm_squared() const;

 private:
  int qubits_;
  std::vector<Complex> amps_;
};

StateVector build_state(const GhzSpec& spec, int cap = kDefaultOracleCap);

/// Single-site operator in the {down=0, up=1} basis, row-major: m[2*out + in].
using SiteMatrix = std::array<Complex, 4>;

enum class Pauli { I, X, Y, Z };

/// One site of an operator string: a Pauli or sigma^theta = cos(theta) X + sin(theta) Y.
struct SiteOperator {
  enum class Kind { I, X, Y, Z, Theta } kind = Kind::I;
  double angle = 0.0;

  static SiteOperator pauli(Pauli p);
  static SiteOperator rotated(double angle) { return {Kind::Theta, angle}; }
  SiteMatrix matrix() const;
};

/// Parses "XZIY"-style strings; throws std::invalid_argument on unknown letters.
std::vector<Pauli> parse_pauli_string(std::string_view text);

/// Applies `op` to site `site` of `state` in place.
void apply_site(std::span<Complex> state, int qubits, int site, const SiteMatrix& op);

Complex expect_pauli_string(const StateVector& state, std::span<const SiteOperator> ops);
Complex expect_pauli_string(const StateVector& state, std::span<const Pauli> ops);

/// Exact <prod_j (sigma^theta_j + i s_j sigma^(theta_j + pi/2))> by direct application.
Complex oracle_A(const StateVector& state, const MeasurementPlan& plan);

}  // namespace ghzsim
