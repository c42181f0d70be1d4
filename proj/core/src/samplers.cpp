#include "ghzsim/samplers.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ghzsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_unit_interval(double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::invalid_argument("radial inverse requires u in [0, 1)");
  }
}

/// Squared radius and phase of one proposal coordinate; z = sqrt(r2) e^{i angle}.
struct PolarDraw {
  double r2;
  double angle;
  Complex value() const { return std::polar(std::sqrt(r2), angle); }
};

/// Acceptance ratio |P + e^{-i phi}|^2 / (2(|P|^2 + 1)) for P = e^{L/2 + i theta},
/// rewritten as 1/2 + cos(theta + phi) / (2 cosh(L/2)) so it never overflows.
double acceptance(double log_r2, double theta, double phase) {
  const double p = 0.5 + std::cos(theta + phase) / (2.0 * std::cosh(0.5 * log_r2));
  if (!(p <= 1.0 + 1e-12) || !(p >= -1e-12)) {
    throw std::logic_error("rejection envelope violated: acceptance " + std::to_string(p));
  }
  return p;
}

PolarDraw draw_f1(RngStream& rng) {
  const double u = rng.uniform();
  return {std::expm1(-0.5 * std::log1p(-u)), kTwoPi * rng.uniform()};
}

PolarDraw draw_f2(RngStream& rng) {
  const double s = std::sqrt(rng.uniform());
  return {s / (1.0 - s), kTwoPi * rng.uniform()};
}

// |mu|^2 ~ Gamma(2, 1): density |mu|^2 e^{-|mu|^2} / pi.
PolarDraw draw_gamma_mode(RngStream& rng) {
  const double r2 = rng.gamma2();
  return {r2, kTwoPi * rng.uniform()};
}

// Standard complex Gaussian: |mu|^2 ~ Exp(1).
PolarDraw draw_gauss_mode(RngStream& rng) {
  const double r2 = -std::log(rng.uniform());
  return {r2, kTwoPi * rng.uniform()};
}

double ratio(std::uint64_t accepted, std::uint64_t proposals) {
  return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
}

void write_rows(std::ostream& out, const ComplexRows& rows, std::string_view name) {
  char buf[128];
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    const auto row = rows.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.*s,%.17g,%.17g\n", i, j,
                    static_cast<int>(name.size()), name.data(), row[j].real(), row[j].imag());
      out << buf;
    }
  }
}

}  // namespace

Representation parse_representation(std::string_view name) {
  if (name == "su2q") return Representation::su2q;
  if (name == "pp-number") return Representation::pp_number;
  if (name == "pp-schwinger") return Representation::pp_schwinger;
  throw std::invalid_argument("unknown representation '" + std::string(name) + "'");
}

std::string_view to_string(Representation rep) {
  switch (rep) {
    case Representation::su2q: return "su2q";
    case Representation::pp_number: return "pp-number";
    case Representation::pp_schwinger: return "pp-schwinger";
  }
  return "?";
}

double SampleBatchQ::acceptance_rate() const { return ratio(size(), proposals); }
double SampleBatchP::acceptance_rate() const { return ratio(size(), proposals); }
double SampleBatchSchwinger::acceptance_rate() const { return ratio(size(), proposals); }

double radial_inverse_f1(double u) {
  check_unit_interval(u);
  return std::sqrt(std::expm1(-0.5 * std::log1p(-u)));
}

double radial_inverse_f2(double u) {
  check_unit_interval(u);
  const double s = std::sqrt(u);
  return std::sqrt(s / (1.0 - s));
}

SampleBatchQ sample_q(const GhzSpec& spec, std::size_t n, RngStream& rng) {
  const auto m = static_cast<std::size_t>(spec.qubits);
  SampleBatchQ batch{spec.qubits, ComplexRows(spec.qubits), 0};
  batch.z.reserve(n);
  std::vector<PolarDraw> draws(m);
  std::vector<Complex> row(m);
  while (batch.size() < n) {
    ++batch.proposals;
    const bool up_branch = rng.coin();
    double log_r2 = 0.0;
    double theta = 0.0;
    for (auto& d : draws) {
      d = up_branch ? draw_f2(rng) : draw_f1(rng);
      log_r2 += std::log(d.r2);
      theta += d.angle;
    }
    if (rng.uniform() >= acceptance(log_r2, theta, spec.phase)) continue;
    for (std::size_t j = 0; j < m; ++j) row[j] = draws[j].value();
    batch.z.append(row);
  }
  return batch;
}

SampleBatchP sample_pp_number(const GhzSpec& spec, std::size_t n, RngStream& rng) {
  const auto m = static_cast<std::size_t>(spec.qubits);
  SampleBatchP batch{spec.qubits, ComplexRows(spec.qubits), ComplexRows(spec.qubits), 0};
  batch.mu.reserve(n);
  batch.nu.reserve(n);
  std::vector<PolarDraw> draws(m);
  std::vector<Complex> row(m);
  while (batch.size() < n) {
    ++batch.proposals;
    const bool up_branch = rng.coin();
    double log_r2 = 0.0;
    double theta = 0.0;
    for (auto& d : draws) {
      d = up_branch ? draw_gamma_mode(rng) : draw_gauss_mode(rng);
      log_r2 += std::log(d.r2);
      theta += d.angle;
    }
    if (rng.uniform() >= acceptance(log_r2, theta, spec.phase)) continue;
    for (std::size_t j = 0; j < m; ++j) row[j] = draws[j].value();
    batch.mu.append(row);
    for (std::size_t j = 0; j < m; ++j) row[j] = rng.complex_normal();
    batch.nu.append(row);
  }
  return batch;
}

SampleBatchSchwinger sample_pp_schwinger(const GhzSpec& spec, std::size_t n, RngStream& rng) {
  const auto m = static_cast<std::size_t>(spec.qubits);
  SampleBatchSchwinger batch{spec.qubits,
                             ComplexRows(spec.qubits), ComplexRows(spec.qubits),
                             ComplexRows(spec.qubits), ComplexRows(spec.qubits), 0};
  for (auto* rows : {&batch.mu1, &batch.mu2, &batch.nu1, &batch.nu2}) rows->reserve(n);
  std::vector<PolarDraw> up(m), down(m);
  std::vector<Complex> row(m);
  while (batch.size() < n) {
    ++batch.proposals;
    const bool up_branch = rng.coin();
    double log_ratio = 0.0;  // ln prod|mu1|^2 - ln prod|mu2|^2
    double theta = 0.0;      // arg prod mu1 - arg prod mu2
    for (std::size_t j = 0; j < m; ++j) {
      if (up_branch) {
        up[j] = draw_gamma_mode(rng);
        down[j] = draw_gauss_mode(rng);
      } else {
        up[j] = draw_gauss_mode(rng);
        down[j] = draw_gamma_mode(rng);
      }
      log_ratio += std::log(up[j].r2) - std::log(down[j].r2);
      theta += up[j].angle - down[j].angle;
    }
    if (rng.uniform() >= acceptance(log_ratio, theta, spec.phase)) continue;
    for (std::size_t j = 0; j < m; ++j) row[j] = up[j].value();
    batch.mu1.append(row);
    for (std::size_t j = 0; j < m; ++j) row[j] = down[j].value();
    batch.mu2.append(row);
    for (std::size_t j = 0; j < m; ++j) row[j] = rng.complex_normal();
    batch.nu1.append(row);
    for (std::size_t j = 0; j < m; ++j) row[j] = rng.complex_normal();
    batch.nu2.append(row);
  }
  return batch;
}

void write_batch_csv(std::ostream& out, const SampleBatchQ& batch) {
  out << "sample,qubit,coordinate,re,im\n";
  write_rows(out, batch.z, "z");
}

void write_batch_csv(std::ostream& out, const SampleBatchP& batch) {
  out << "sample,qubit,coordinate,re,im\n";
  write_rows(out, batch.mu, "mu");
  write_rows(out, batch.nu, "nu");
}

void write_batch_csv(std::ostream& out, const SampleBatchSchwinger& batch) {
  out << "sample,qubit,coordinate,re,im\n";
  write_rows(out, batch.mu1, "mu1");
  write_rows(out, batch.mu2, "mu2");
  write_rows(out, batch.nu1, "nu1");
  write_rows(out, batch.nu2, "nu2");
}

}  // namespace ghzsim
