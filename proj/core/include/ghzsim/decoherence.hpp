#pragma once

#include <vector>

#include "ghzsim/estimators.hpp"
#include "ghzsim/pipeline.hpp"
#include "ghzsim/rng.hpp"

namespace ghzsim {

struct DecayPoint {
  int tau = 0;
  double v_hat = 0.0;  // V oriented by the sign of its tau = 0 value
  double v_se = 0.0;
};

struct DecoherenceRun {
  GhzSpec spec;
  MeasurementPlan plan;
  double epsilon = 0.0;
  int n_steps = 0;
  std::vector<DecayPoint> series;  // n_steps + 1 entries, tau = 0..n_steps
};

/// Collective dephasing of per-sample weights. Each sample carries one phase
/// Theta_k = sum_{t<=k} epsilon zeta_t shared by all M qubits, so its weight at
/// step k is w e^{i M Theta_k}. Returns one accumulator per step (index = tau).
std::vector<MomentAccumulator> dephase_trajectories(std::span<const Complex> weights, int qubits,
                                                    double epsilon, int n_steps, RngStream& rng);

/// Evolves a materialized batch. Weights are split into `sub_batches` groups,
/// dephased in order with `rng`, and reduced per step.
template <class Batch>
DecoherenceRun evolve_v(const GhzSpec& spec, const MeasurementPlan& plan, double epsilon,
                        int n_steps, const Batch& batch, RngStream& rng,
                        std::size_t sub_batches = kDefaultSubBatches);

/// Streaming version over a sampled pipeline; sub-batch b uses noise stream (seed, noise/b).
DecoherenceRun evolve_v_sampled(Representation rep, const GhzSpec& spec,
                                const MeasurementPlan& plan, double epsilon, int n_steps,
                                const PipelineConfig& config);

/// exp(-epsilon^2 M^2 tau / 2).
double analytic_decay(double epsilon, int qubits, double tau);

/// Decay rate from a least-squares line through ln v_hat versus tau, using the
/// leading run of points with v_hat > 5 v_se. Throws if fewer than 10 qualify.
double fit_decay_rate(const std::vector<DecayPoint>& series);

namespace detail {
DecoherenceRun assemble_run(const GhzSpec& spec, const MeasurementPlan& plan, double epsilon,
                            int n_steps, const std::vector<std::vector<MomentAccumulator>>& parts);
void check_decoherence_args(double epsilon, int n_steps);
}  // namespace detail

template <class Batch>
DecoherenceRun evolve_v(const GhzSpec& spec, const MeasurementPlan& plan, double epsilon,
                        int n_steps, const Batch& batch, RngStream& rng, std::size_t sub_batches) {
  detail::check_decoherence_args(epsilon, n_steps);
  const std::vector<Complex> w = weights_A(batch, plan);
  if (w.empty()) throw std::invalid_argument("decoherence needs a non-empty batch");
  if (w.size() < sub_batches) sub_batches = w.size();
  const auto counts = split_counts(w.size(), sub_batches);
  std::vector<std::vector<MomentAccumulator>> parts;
  parts.reserve(sub_batches);
  std::size_t offset = 0;
  for (auto c : counts) {
    const std::span<const Complex> group(w.data() + offset, c);
    parts.push_back(dephase_trajectories(group, spec.qubits, epsilon, n_steps, rng));
    offset += c;
  }
  return detail::assemble_run(spec, plan, epsilon, n_steps, parts);
}

}  // namespace ghzsim
