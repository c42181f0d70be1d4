#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ghzsim/oracle.hpp"

using namespace ghzsim;

namespace {

// Independent route: full 2^M x 2^M Kronecker product of site matrices.
// Basis index bit j is site j; a site matrix element is m[2*out + in].
Complex dense_expectation(const StateVector& state, const std::vector<SiteMatrix>& ops) {
  const int m = state.qubits();
  const std::size_t dim = std::size_t{1} << m;
  const auto amps = state.amplitudes();
  Complex acc{0.0, 0.0};
  for (std::size_t out = 0; out < dim; ++out) {
    for (std::size_t in = 0; in < dim; ++in) {
      Complex element{1.0, 0.0};
      for (int j = 0; j < m; ++j) {
        const std::size_t o = (out >> j) & 1u;
        const std::size_t i = (in >> j) & 1u;
        element *= ops[static_cast<std::size_t>(j)][2 * o + i];
      }
      acc += std::conj(amps[out]) * element * amps[in];
    }
  }
  return acc;
}

SiteMatrix ladder(const SiteSetting& s) {
  // sigma^theta + i s sigma^(theta + pi/2), written from the Pauli matrices.
  const SiteMatrix x = SiteOperator::rotated(s.theta).matrix();
  const SiteMatrix y = SiteOperator::rotated(s.theta + std::numbers::pi / 2).matrix();
  SiteMatrix out{};
  for (std::size_t k = 0; k < 4; ++k) out[k] = x[k] + Complex{0.0, double(s.sign)} * y[k];
  return out;
}

}  // namespace

TEST_CASE("build_state") {
  const StateVector s = build_state(make_ghz(2, 0.0));
  const auto a = s.amplitudes();
  CHECK(a[0].real() == doctest::Approx(1 / std::numbers::sqrt2));
  CHECK(a[3].real() == doctest::Approx(1 / std::numbers::sqrt2));
  CHECK(std::abs(a[1]) == 0.0);
  CHECK(std::abs(a[2]) == 0.0);

  const StateVector p = build_state(make_ghz(2, std::numbers::pi));
  CHECK(p.amplitudes()[0].real() == doctest::Approx(-1 / std::numbers::sqrt2));

  for (int m = 1; m <= 14; ++m) {
    const StateVector g = build_state(make_ghz(m, 1.234));
    CHECK(std::abs(g.norm_squared() - 1.0) < 1e-12);
    int nonzero = 0;
    for (Complex c : g.amplitudes()) nonzero += std::abs(c) > 0.0;
    CHECK(nonzero == 2);
  }
  CHECK_THROWS_AS(build_state(make_ghz(15, 0.0)), ResourceLimitError);
  CHECK(build_state(make_ghz(15, 0.0), 16).qubits() == 15);
}

TEST_CASE("Pauli string expectations") {
  const StateVector ghz2pi = build_state(make_ghz(2, std::numbers::pi));
  const auto xx = parse_pauli_string("XX");
  CHECK(expect_pauli_string(ghz2pi, xx).real() == doctest::Approx(-1.0));

  for (int m = 1; m <= 6; ++m) {
    const StateVector g = build_state(make_ghz(m, 0.4 * m));
    const std::vector<Pauli> zs(static_cast<std::size_t>(m), Pauli::Z);
    const Complex z = expect_pauli_string(g, zs);
    CHECK(z.real() == doctest::Approx(m % 2 == 0 ? 1.0 : 0.0));
  }
  // Even number of Z's: both branches contribute the same sign.
  const StateVector g2 = build_state(make_ghz(2, 0.9));
  CHECK(expect_pauli_string(g2, parse_pauli_string("ZZ")).real() == doctest::Approx(1.0));
  CHECK(std::abs(expect_pauli_string(g2, parse_pauli_string("ZI"))) < 1e-15);

  // <XX> = cos(phi), <YY> = -cos(phi), <XY> = sin(phi) for the two-qubit GHZ
  // with sigma_y|up> = i|down>.
  for (double phi : {0.0, 0.5, 2.0, 4.0}) {
    const StateVector g = build_state(make_ghz(2, phi));
    CHECK(expect_pauli_string(g, parse_pauli_string("XX")).real() == doctest::Approx(std::cos(phi)));
    CHECK(expect_pauli_string(g, parse_pauli_string("YY")).real() ==
          doctest::Approx(-std::cos(phi)));
    CHECK(expect_pauli_string(g, parse_pauli_string("XY")).real() ==
          doctest::Approx(std::sin(phi)));
  }

  CHECK_THROWS_AS(parse_pauli_string("XQ"), std::invalid_argument);
  CHECK_THROWS_AS(expect_pauli_string(g2, parse_pauli_string("XXX")), std::invalid_argument);
}

TEST_CASE("Hermitian strings have real expectations and match the dense route") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::uniform_int_distribution<int> pick(0, 4);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + trial % 5;
    const StateVector g = build_state(make_ghz(m, angle(gen)));
    std::vector<SiteOperator> ops;
    std::vector<SiteMatrix> mats;
    for (int j = 0; j < m; ++j) {
      const int k = pick(gen);
      const SiteOperator op = k == 4 ? SiteOperator::rotated(angle(gen))
                                     : SiteOperator::pauli(static_cast<Pauli>(k));
      ops.push_back(op);
      mats.push_back(op.matrix());
    }
    const Complex fast = expect_pauli_string(g, ops);
    CHECK(std::abs(fast.imag()) < 1e-12);
    CHECK(std::abs(fast - dense_expectation(g, mats)) < 1e-12);
  }
}

TEST_CASE("oracle_A") {
  const Preset p3 = mermin_preset(3);
  const Complex a3 = oracle_A(build_state(p3.spec), p3.plan);
  CHECK(std::abs(a3.real()) < 1e-12);
  CHECK(a3.imag() == doctest::Approx(4.0));

  for (int m = 3; m <= 13; m += 2) {
    const Preset p = mermin_preset(m);
    const Complex a = oracle_A(build_state(p.spec), p.plan);
    CHECK(std::abs(a.real()) < 1e-14 * std::ldexp(1.0, m - 1));
    CHECK(std::abs(a.imag() - std::ldexp(1.0, m - 1)) < 1e-10);
  }
  for (int m = 2; m <= 12; m += 2) {
    const Preset p = ardehali_preset(m);
    const Complex a = oracle_A(build_state(p.spec), p.plan);
    CHECK(std::abs(std::abs(a.real() + a.imag()) - std::pow(2.0, m - 0.5)) < 1e-10);
  }
}

TEST_CASE("oracle_A agrees with the dense route and the closed form") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 4;
    const GhzSpec spec = make_ghz(m, angle(gen));
    std::vector<SiteSetting> sites;
    for (int j = 0; j < m; ++j) sites.push_back({angle(gen), gen() % 2 ? 1 : -1});
    const MeasurementPlan plan(sites);
    const StateVector g = build_state(spec);
    std::vector<SiteMatrix> mats;
    for (const auto& s : sites) mats.push_back(ladder(s));
    const Complex a = oracle_A(g, plan);
    CHECK(std::abs(a - dense_expectation(g, mats)) < 1e-12);
    if (plan.common_sign() == 0) CHECK(std::abs(a) < 1e-12);
  }

  // 100 random uniform-sign plans for each M <= 12.
  for (int m = 1; m <= 12; ++m) {
    for (int trial = 0; trial < 100; ++trial) {
      const GhzSpec spec = make_ghz(m, angle(gen));
      const int sign = trial % 2 == 0 ? 1 : -1;
      std::vector<SiteSetting> sites;
      for (int j = 0; j < m; ++j) sites.push_back({angle(gen), sign});
      const MeasurementPlan plan(sites);
      const Complex exact = oracle_A(build_state(spec), plan);
      const Complex closed = closed_form_A(spec, plan);
      CHECK(std::abs(exact - closed) <= 1e-10 * std::abs(closed));
    }
  }
}
