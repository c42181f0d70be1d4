#include "ghzsim/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ghzsim {

namespace {

constexpr Complex kI{0.0, 1.0};

SiteMatrix add(const SiteMatrix& a, const SiteMatrix& b, Complex scale) {
  SiteMatrix out{};
  for (std::size_t k = 0; k < 4; ++k) out[k] = a[k] + scale * b[k];
  return out;
}

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < bra.size(); ++k) acc += std::conj(bra[k]) * ket[k];
  return acc;
}

}  // namespace

StateVector::StateVector(int qubits) : qubits_(qubits) {
  if (qubits < 1 || qubits > 30) {
    throw ResourceLimitError("state vector size 2^" + std::to_string(qubits) +
                             " is not supported");
  }
  amps_.assign(std::size_t{1} << qubits, Complex{0.0, 0.0});
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

StateVector build_state(const GhzSpec& spec, int cap) {
  if (spec.qubits > cap) {
    throw ResourceLimitError("oracle cap is M <= " + std::to_string(cap) + ", got M = " +
                             std::to_string(spec.qubits));
  }
  StateVector state(spec.qubits);
  auto amps = state.amplitudes();
  const double h = 1.0 / std::numbers::sqrt2;
  amps.back() = Complex{h, 0.0};                 // all up
  amps.front() = std::polar(h, spec.phase);      // all down
  return state;
}

SiteOperator SiteOperator::pauli(Pauli p) {
  switch (p) {
    case Pauli::I: return {Kind::I, 0.0};
    case Pauli::X: return {Kind::X, 0.0};
    case Pauli::Y: return {Kind::Y, 0.0};
    case Pauli::Z: return {Kind::Z, 0.0};
  }
  return {};
}

SiteMatrix SiteOperator::matrix() const {
  // Index 0 = down, 1 = up. sigma_z = diag(-1, +1); sigma_y |up> = i |down>.
  static constexpr SiteMatrix id{1.0, 0.0, 0.0, 1.0};
  static const SiteMatrix sx{0.0, 1.0, 1.0, 0.0};
  static const SiteMatrix sy{0.0, kI, -kI, 0.0};
  static constexpr SiteMatrix sz{-1.0, 0.0, 0.0, 1.0};
  switch (kind) {
    case Kind::I: return id;
    case Kind::X: return sx;
    case Kind::Y: return sy;
    case Kind::Z: return sz;
    case Kind::Theta: {
      SiteMatrix out{};
      for (std::size_t k = 0; k < 4; ++k) {
        out[k] = std::cos(angle) * sx[k] + std::sin(angle) * sy[k];
      }
      return out;
    }
  }
  return id;
}

std::vector<Pauli> parse_pauli_string(std::string_view text) {
  std::vector<Pauli> out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'I': case 'i': out.push_back(Pauli::I); break;
      case 'X': case 'x': out.push_back(Pauli::X); break;
      case 'Y': case 'y': out.push_back(Pauli::Y); break;
      case 'Z': case 'z': out.push_back(Pauli::Z); break;
      default:
        throw std::invalid_argument(std::string("unknown Pauli selector '") + c + "'");
    }
  }
  return out;
}

void apply_site(std::span<Complex> state, int qubits, int site, const SiteMatrix& op) {
  if (site < 0 || site >= qubits) throw std::invalid_argument("site index out of range");
  const std::size_t stride = std::size_t{1} << site;
  const std::size_t dim = std::size_t{1} << qubits;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Complex lo = state[k];
      const Complex hi = state[k + stride];
      state[k] = op[0] * lo + op[1] * hi;
      state[k + stride] = op[2] * lo + op[3] * hi;
    }
  }
}

Complex expect_pauli_string(const StateVector& state, std::span<const SiteOperator> ops) {
  if (ops.size() != static_cast<std::size_t>(state.qubits())) {
    throw std::invalid_argument("operator string length does not match qubit count");
  }
  std::vector<Complex> work(state.amplitudes().begin(), state.amplitudes().end());
  for (int j = 0; j < state.qubits(); ++j) {
    if (ops[static_cast<std::size_t>(j)].kind == SiteOperator::Kind::I) continue;
    apply_site(work, state.qubits(), j, ops[static_cast<std::size_t>(j)].matrix());
  }
  return inner(state.amplitudes(), work);
}

Complex expect_pauli_string(const StateVector& state, std::span<const Pauli> ops) {
  std::vector<SiteOperator> site_ops;
  site_ops.reserve(ops.size());
  for (Pauli p : ops) site_ops.push_back(SiteOperator::pauli(p));
  return expect_pauli_string(state, site_ops);
}

Complex oracle_A(const StateVector& state, const MeasurementPlan& plan) {
  if (plan.size() != static_cast<std::size_t>(state.qubits())) {
    throw std::invalid_argument("plan length does not match qubit count");
  }
  std::vector<Complex> work(state.amplitudes().begin(), state.amplitudes().end());
  for (int j = 0; j < state.qubits(); ++j) {
    const SiteSetting& s = plan[static_cast<std::size_t>(j)];
    const SiteMatrix x = SiteOperator::rotated(s.theta).matrix();
    const SiteMatrix y = SiteOperator::rotated(s.theta + std::numbers::pi / 2.0).matrix();
    apply_site(work, state.qubits(), j, add(x, y, kI * static_cast<double>(s.sign)));
  }
  return inner(state.amplitudes(), work);
}

}  // namespace ghzsim
