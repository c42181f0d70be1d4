#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ghzsim/ghz.hpp"
#include "ghzsim/oracle.hpp"
#include "ghzsim/samplers.hpp"

namespace ghzsim {

inline constexpr std::size_t kDefaultSubBatches = 64;

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Streaming moments of complex per-sample weights for one sub-batch:
/// compensated sums for the mean, Welford second moments for the spread.
class MomentAccumulator {
 public:
  void add(Complex w);
  /// Chan-style pooled merge; deterministic for a fixed merge order.
  void merge(const MomentAccumulator& other);

  std::uint64_t count() const { return count_; }
  Complex sum() const { return {sum_re_.value(), sum_im_.value()}; }
  Complex mean() const;
  /// Per-sample sample variance of the real and imaginary parts.
  double variance_re() const;
  double variance_im() const;

 private:
  std::uint64_t count_ = 0;
  CompensatedSum sum_re_, sum_im_;
  double mean_re_ = 0.0, mean_im_ = 0.0;
  double m2_re_ = 0.0, m2_im_ = 0.0;
};

struct MomentEstimate {
  Complex mean;
  double se_re = 0.0;  // sub-batch-means standard errors
  double se_im = 0.0;
  std::uint64_t n = 0;
  std::size_t sub_batches = 0;
  double sd_re = 0.0;  // per-sample standard deviations; sd / sqrt(n) is the i.i.d. SE
  double sd_im = 0.0;

  double iid_se_re() const;
  double iid_se_im() const;
};

/// Sizes of `parts` near-equal contiguous groups of n items (first n % parts get one more).
std::vector<std::uint64_t> split_counts(std::uint64_t n, std::size_t parts);

/// Mean over all sub-batches; SE = stddev of sub-batch means / sqrt(B).
/// Empty accumulators are ignored. Throws std::invalid_argument if all are empty.
MomentEstimate combine(std::span<const MomentAccumulator> parts);

/// Splits weights into `sub_batches` contiguous groups (reduced, with a
/// warning, when fewer weights than groups) and combines them.
MomentEstimate estimate_from_weights(std::span<const Complex> weights,
                                     std::size_t sub_batches = kDefaultSubBatches);

// Per-sample Mermin-product weights. Products are accumulated as log-magnitude
// plus phase so large M cannot overflow intermediate terms.

/// [3^M / prod(1+|z|^2)] prod((1+s) z* + (1-s) z) e^{-i s theta}.
Complex weight_A_q(std::span<const Complex> z, const MeasurementPlan& plan);

/// prod 2 beta_j (s=+1) or 2 alpha_j (s=-1), times e^{-i s theta};
/// alpha = mu + nu, beta = conj(mu - nu).
Complex weight_A_pp_number(std::span<const Complex> mu, std::span<const Complex> nu,
                           const MeasurementPlan& plan);

/// prod 2 beta1_j alpha2_j (s=+1) or 2 beta2_j alpha1_j (s=-1), times e^{-i s theta}.
Complex weight_A_pp_schwinger(std::span<const Complex> mu1, std::span<const Complex> mu2,
                              std::span<const Complex> nu1, std::span<const Complex> nu2,
                              const MeasurementPlan& plan);

std::vector<Complex> weights_A(const SampleBatchQ& batch, const MeasurementPlan& plan);
std::vector<Complex> weights_A(const SampleBatchP& batch, const MeasurementPlan& plan);
std::vector<Complex> weights_A(const SampleBatchSchwinger& batch, const MeasurementPlan& plan);

template <class Batch>
MomentEstimate estimate_A(const Batch& batch, const MeasurementPlan& plan,
                          std::size_t sub_batches = kDefaultSubBatches) {
  return estimate_from_weights(weights_A(batch, plan), sub_batches);
}

struct VEstimate {
  double value = 0.0;
  double se = 0.0;
};

/// Even M: Re + Im with se = hypot(se_re, se_im). Odd M: sqrt(2) Im, sqrt(2) se_im.
VEstimate v_from_A(const MomentEstimate& est, int qubits);

/// Single-site Q weight from the integration-by-parts identity:
/// X -> 6 Re z/(1+|z|^2), Y -> -6 Im z/(1+|z|^2), Z -> 3(|z|^2-1)/(1+|z|^2).
double weight_pauli_q(Complex z, Pauli p);

MomentEstimate estimate_pauli_string_q(const SampleBatchQ& batch, std::span<const Pauli> string,
                                       std::size_t sub_batches = kDefaultSubBatches);

/// Number of up spins, sum_j (w_Z + 1) / 2.
double weight_number_q(std::span<const Complex> z);

MomentEstimate estimate_number_q(const SampleBatchQ& batch,
                                 std::size_t sub_batches = kDefaultSubBatches);

/// Real part of the per-sample weight of sigma^theta_j (theta from the plan) at
/// sites (a, b); these values are not confined to the eigenvalue range [-1, 1].
std::vector<std::pair<double, double>> scatter_points(const SampleBatchQ& batch,
                                                      const MeasurementPlan& plan,
                                                      std::pair<int, int> sites);
std::vector<std::pair<double, double>> scatter_points(const SampleBatchP& batch,
                                                      const MeasurementPlan& plan,
                                                      std::pair<int, int> sites);
std::vector<std::pair<double, double>> scatter_points(const SampleBatchSchwinger& batch,
                                                      const MeasurementPlan& plan,
                                                      std::pair<int, int> sites);

/// Per-sample (-Re w_XX, Re w_YY) at sites (a, b): the two terms of -<XX> + <YY>.
std::vector<std::pair<double, double>> correlation_terms(const SampleBatchQ& batch,
                                                         std::pair<int, int> sites);
std::vector<std::pair<double, double>> correlation_terms(const SampleBatchP& batch,
                                                         std::pair<int, int> sites);
std::vector<std::pair<double, double>> correlation_terms(const SampleBatchSchwinger& batch,
                                                         std::pair<int, int> sites);

}  // namespace ghzsim
