#include "ghzsim/estimators.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace ghzsim {

namespace {

void require_finite(Complex c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw std::invalid_argument("non-finite phase-space coordinate");
  }
}

void require_row(std::size_t row, const MeasurementPlan& plan) {
  if (row != plan.size()) {
    throw std::invalid_argument("sample row length does not match plan length");
  }
}

/// Running product kept as (log|.|, arg) so intermediate magnitudes never overflow.
class LogPolarProduct {
 public:
  void multiply(Complex factor) {
    log_mag_ += std::log(std::abs(factor));
    phase_ += std::arg(factor);
  }
  void scale(double log_mag, double phase) {
    log_mag_ += log_mag;
    phase_ += phase;
  }
  Complex value() const { return std::polar(std::exp(log_mag_), phase_); }

 private:
  double log_mag_ = 0.0;
  double phase_ = 0.0;
};

const double kLog2 = std::log(2.0);
const double kLog6 = std::log(6.0);

Complex sigma_theta(Complex wx, Complex wy, double theta) {
  return std::cos(theta) * wx + std::sin(theta) * wy;
}

// Normally ordered single-site weights of sigma_x and sigma_y.
struct XY {
  Complex x, y;
};

XY number_site(Complex mu, Complex nu) {
  const Complex alpha = mu + nu;
  const Complex beta = std::conj(mu - nu);
  return {alpha + beta, Complex{0.0, 1.0} * (alpha - beta)};
}

XY schwinger_site(Complex mu1, Complex mu2, Complex nu1, Complex nu2) {
  const Complex a1 = mu1 + nu1, b1 = std::conj(mu1 - nu1);
  const Complex a2 = mu2 + nu2, b2 = std::conj(mu2 - nu2);
  const Complex raise = b1 * a2;  // sigma_+
  const Complex lower = b2 * a1;  // sigma_-
  return {raise + lower, Complex{0.0, -1.0} * (raise - lower)};
}

void check_sites(std::pair<int, int> sites, int qubits) {
  if (sites.first < 0 || sites.second < 0 || sites.first >= qubits || sites.second >= qubits ||
      sites.first == sites.second) {
    throw std::invalid_argument("scatter site pair must be two distinct valid sites");
  }
}

template <class SiteFn>
std::vector<std::pair<double, double>> scatter_impl(std::size_t n, const MeasurementPlan& plan,
                                                    std::pair<int, int> sites, SiteFn site) {
  const auto a = static_cast<std::size_t>(sites.first);
  const auto b = static_cast<std::size_t>(sites.second);
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const XY wa = site(i, a);
    const XY wb = site(i, b);
    out.emplace_back(sigma_theta(wa.x, wa.y, plan[a].theta).real(),
                     sigma_theta(wb.x, wb.y, plan[b].theta).real());
  }
  return out;
}

template <class SiteFn>
std::vector<std::pair<double, double>> terms_impl(std::size_t n, std::pair<int, int> sites,
                                                  SiteFn site) {
  const auto a = static_cast<std::size_t>(sites.first);
  const auto b = static_cast<std::size_t>(sites.second);
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const XY wa = site(i, a);
    const XY wb = site(i, b);
    out.emplace_back(-(wa.x * wb.x).real(), (wa.y * wb.y).real());
  }
  return out;
}

}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

void MomentAccumulator::add(Complex w) {
  ++count_;
  sum_re_.add(w.real());
  sum_im_.add(w.imag());
  const double n = static_cast<double>(count_);
  const double dre = w.real() - mean_re_;
  const double dim = w.imag() - mean_im_;
  mean_re_ += dre / n;
  mean_im_ += dim / n;
  m2_re_ += dre * (w.real() - mean_re_);
  m2_im_ += dim * (w.imag() - mean_im_);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double dre = other.mean_re_ - mean_re_;
  const double dim = other.mean_im_ - mean_im_;
  mean_re_ += dre * nb / n;
  mean_im_ += dim * nb / n;
  m2_re_ += other.m2_re_ + dre * dre * na * nb / n;
  m2_im_ += other.m2_im_ + dim * dim * na * nb / n;
  sum_re_.add(other.sum_re_.value());
  sum_im_.add(other.sum_im_.value());
  count_ += other.count_;
}

Complex MomentAccumulator::mean() const {
  if (count_ == 0) return {0.0, 0.0};
  return sum() / static_cast<double>(count_);
}

double MomentAccumulator::variance_re() const {
  return count_ < 2 ? 0.0 : m2_re_ / static_cast<double>(count_ - 1);
}

double MomentAccumulator::variance_im() const {
  return count_ < 2 ? 0.0 : m2_im_ / static_cast<double>(count_ - 1);
}

double MomentEstimate::iid_se_re() const {
  return n == 0 ? 0.0 : sd_re / std::sqrt(static_cast<double>(n));
}

double MomentEstimate::iid_se_im() const {
  return n == 0 ? 0.0 : sd_im / std::sqrt(static_cast<double>(n));
}

std::vector<std::uint64_t> split_counts(std::uint64_t n, std::size_t parts) {
  if (parts == 0) throw std::invalid_argument("sub-batch count must be positive");
  std::vector<std::uint64_t> counts(parts, n / parts);
  for (std::size_t b = 0; b < n % parts; ++b) ++counts[b];
  return counts;
}

MomentEstimate combine(std::span<const MomentAccumulator> parts) {
  MomentAccumulator pooled;
  CompensatedSum mean_re, mean_im;
  std::size_t used = 0;
  for (const auto& p : parts) {
    if (p.count() == 0) continue;
    pooled.merge(p);
    mean_re.add(p.mean().real());
    mean_im.add(p.mean().imag());
    ++used;
  }
  if (used == 0) throw std::invalid_argument("cannot estimate a moment from zero samples");

  MomentEstimate est;
  est.n = pooled.count();
  est.mean = pooled.mean();
  est.sub_batches = used;
  est.sd_re = std::sqrt(pooled.variance_re());
  est.sd_im = std::sqrt(pooled.variance_im());
  if (used == 1) {
    est.se_re = est.iid_se_re();
    est.se_im = est.iid_se_im();
    return est;
  }
  const double b = static_cast<double>(used);
  const double centre_re = mean_re.value() / b;
  const double centre_im = mean_im.value() / b;
  double ss_re = 0.0, ss_im = 0.0;
  for (const auto& p : parts) {
    if (p.count() == 0) continue;
    const double dre = p.mean().real() - centre_re;
    const double dim = p.mean().imag() - centre_im;
    ss_re += dre * dre;
    ss_im += dim * dim;
  }
  est.se_re = std::sqrt(ss_re / (b - 1.0) / b);
  est.se_im = std::sqrt(ss_im / (b - 1.0) / b);
  return est;
}

MomentEstimate estimate_from_weights(std::span<const Complex> weights, std::size_t sub_batches) {
  if (weights.empty()) throw std::invalid_argument("cannot estimate a moment from zero samples");
  if (sub_batches == 0) throw std::invalid_argument("sub-batch count must be positive");
  if (weights.size() < sub_batches) {
    std::clog << "warning: " << weights.size() << " samples < " << sub_batches
              << " sub-batches; using " << weights.size() << '\n';
    sub_batches = weights.size();
  }
  const auto counts = split_counts(weights.size(), sub_batches);
  std::vector<MomentAccumulator> parts(sub_batches);
  std::size_t offset = 0;
  for (std::size_t b = 0; b < sub_batches; ++b) {
    for (std::uint64_t k = 0; k < counts[b]; ++k) parts[b].add(weights[offset++]);
  }
  return combine(parts);
}

Complex weight_A_q(std::span<const Complex> z, const MeasurementPlan& plan) {
  require_row(z.size(), plan);
  LogPolarProduct product;
  for (std::size_t j = 0; j < z.size(); ++j) {
    require_finite(z[j]);
    const double r2 = std::norm(z[j]);
    const int s = plan[j].sign;
    const double arg = s > 0 ? -std::arg(z[j]) : std::arg(z[j]);
    product.scale(kLog6 + 0.5 * std::log(r2) - std::log1p(r2), arg - s * plan[j].theta);
  }
  return product.value();
}

Complex weight_A_pp_number(std::span<const Complex> mu, std::span<const Complex> nu,
                           const MeasurementPlan& plan) {
  require_row(mu.size(), plan);
  require_row(nu.size(), plan);
  LogPolarProduct product;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    require_finite(mu[j]);
    require_finite(nu[j]);
    const int s = plan[j].sign;
    product.multiply(s > 0 ? std::conj(mu[j] - nu[j]) : mu[j] + nu[j]);
    product.scale(kLog2, -s * plan[j].theta);
  }
  return product.value();
}

Complex weight_A_pp_schwinger(std::span<const Complex> mu1, std::span<const Complex> mu2,
                              std::span<const Complex> nu1, std::span<const Complex> nu2,
                              const MeasurementPlan& plan) {
  for (auto len : {mu1.size(), mu2.size(), nu1.size(), nu2.size()}) require_row(len, plan);
  LogPolarProduct product;
  for (std::size_t j = 0; j < mu1.size(); ++j) {
    for (Complex c : {mu1[j], mu2[j], nu1[j], nu2[j]}) require_finite(c);
    const int s = plan[j].sign;
    if (s > 0) {
      product.multiply(std::conj(mu1[j] - nu1[j]));
      product.multiply(mu2[j] + nu2[j]);
    } else {
      product.multiply(std::conj(mu2[j] - nu2[j]));
      product.multiply(mu1[j] + nu1[j]);
    }
    product.scale(kLog2, -s * plan[j].theta);
  }
  return product.value();
}

std::vector<Complex> weights_A(const SampleBatchQ& batch, const MeasurementPlan& plan) {
  std::vector<Complex> w(batch.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = weight_A_q(batch.z.row(i), plan);
  return w;
}

std::vector<Complex> weights_A(const SampleBatchP& batch, const MeasurementPlan& plan) {
  std::vector<Complex> w(batch.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = weight_A_pp_number(batch.mu.row(i), batch.nu.row(i), plan);
  }
  return w;
}

std::vector<Complex> weights_A(const SampleBatchSchwinger& batch, const MeasurementPlan& plan) {
  std::vector<Complex> w(batch.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = weight_A_pp_schwinger(batch.mu1.row(i), batch.mu2.row(i), batch.nu1.row(i),
                                 batch.nu2.row(i), plan);
  }
  return w;
}

VEstimate v_from_A(const MomentEstimate& est, int qubits) {
  if (qubits % 2 == 0) {
    return {est.mean.real() + est.mean.imag(), std::hypot(est.se_re, est.se_im)};
  }
  return {std::numbers::sqrt2 * est.mean.imag(), std::numbers::sqrt2 * est.se_im};
}

double weight_pauli_q(Complex z, Pauli p) {
  const double r2 = std::norm(z);
  switch (p) {
    case Pauli::I: return 1.0;
    case Pauli::X: return 6.0 * z.real() / (1.0 + r2);
    case Pauli::Y: return -6.0 * z.imag() / (1.0 + r2);
    case Pauli::Z: return 3.0 * (r2 - 1.0) / (1.0 + r2);
  }
  throw std::invalid_argument("unknown Pauli selector");
}

MomentEstimate estimate_pauli_string_q(const SampleBatchQ& batch, std::span<const Pauli> string,
                                       std::size_t sub_batches) {
  if (string.size() != static_cast<std::size_t>(batch.qubits)) {
    throw std::invalid_argument("Pauli string length does not match qubit count");
  }
  std::vector<Complex> w(batch.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto row = batch.z.row(i);
    double prod = 1.0;
    for (std::size_t j = 0; j < row.size(); ++j) prod *= weight_pauli_q(row[j], string[j]);
    w[i] = prod;
  }
  return estimate_from_weights(w, sub_batches);
}

double weight_number_q(std::span<const Complex> z) {
  double total = 0.0;
  for (Complex zj : z) total += 0.5 * (weight_pauli_q(zj, Pauli::Z) + 1.0);
  return total;
}

MomentEstimate estimate_number_q(const SampleBatchQ& batch, std::size_t sub_batches) {
  std::vector<Complex> w(batch.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = weight_number_q(batch.z.row(i));
  return estimate_from_weights(w, sub_batches);
}

std::vector<std::pair<double, double>> scatter_points(const SampleBatchQ& batch,
                                                      const MeasurementPlan& plan,
                                                      std::pair<int, int> sites) {
  check_sites(sites, batch.qubits);
  return scatter_impl(batch.size(), plan, sites, [&](std::size_t i, std::size_t j) {
    const Complex z = batch.z.row(i)[j];
    return XY{weight_pauli_q(z, Pauli::X), weight_pauli_q(z, Pauli::Y)};
  });
}

std::vector<std::pair<double, double>> scatter_points(const SampleBatchP& batch,
                                                      const MeasurementPlan& plan,
                                                      std::pair<int, int> sites) {
  check_sites(sites, batch.qubits);
  return scatter_impl(batch.size(), plan, sites, [&](std::size_t i, std::size_t j) {
    return number_site(batch.mu.row(i)[j], batch.nu.row(i)[j]);
  });
}

std::vector<std::pair<double, double>> scatter_points(const SampleBatchSchwinger& batch,
                                                      const MeasurementPlan& plan,
                                                      std::pair<int, int> sites) {
  check_sites(sites, batch.qubits);
  return scatter_impl(batch.size(), plan, sites, [&](std::size_t i, std::size_t j) {
    return schwinger_site(batch.mu1.row(i)[j], batch.mu2.row(i)[j], batch.nu1.row(i)[j],
                          batch.nu2.row(i)[j]);
  });
}

std::vector<std::pair<double, double>> correlation_terms(const SampleBatchQ& batch,
                                                         std::pair<int, int> sites) {
  check_sites(sites, batch.qubits);
  return terms_impl(batch.size(), sites, [&](std::size_t i, std::size_t j) {
    const Complex z = batch.z.row(i)[j];
    return XY{weight_pauli_q(z, Pauli::X), weight_pauli_q(z, Pauli::Y)};
  });
}

std::vector<std::pair<double, double>> correlation_terms(const SampleBatchP& batch,
                                                         std::pair<int, int> sites) {
  check_sites(sites, batch.qubits);
  return terms_impl(batch.size(), sites, [&](std::size_t i, std::size_t j) {
    return number_site(batch.mu.row(i)[j], batch.nu.row(i)[j]);
  });
}

std::vector<std::pair<double, double>> correlation_terms(const SampleBatchSchwinger& batch,
                                                         std::pair<int, int> sites) {
  check_sites(sites, batch.qubits);
  return terms_impl(batch.size(), sites, [&](std::size_t i, std::size_t j) {
    return schwinger_site(batch.mu1.row(i)[j], batch.mu2.row(i)[j], batch.nu1.row(i)[j],
                          batch.nu2.row(i)[j]);
  });
}

}  // namespace ghzsim
