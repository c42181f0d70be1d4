#include "ghzsim/decoherence.hpp"

#include <cmath>
#include <stdexcept>

namespace ghzsim {

namespace detail {

void check_decoherence_args(double epsilon, int n_steps) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("decoherence strength epsilon must be finite and >= 0");
  }
  if (n_steps < 0) throw std::invalid_argument("step count must be non-negative");
}

DecoherenceRun assemble_run(const GhzSpec& spec, const MeasurementPlan& plan, double epsilon,
                            int n_steps,
                            const std::vector<std::vector<MomentAccumulator>>& parts) {
  DecoherenceRun run{spec, plan, epsilon, n_steps, {}};
  run.series.reserve(static_cast<std::size_t>(n_steps) + 1);
  std::vector<MomentAccumulator> step_parts(parts.size());
  double orientation = 1.0;
  for (int k = 0; k <= n_steps; ++k) {
    for (std::size_t b = 0; b < parts.size(); ++b) {
      step_parts[b] = parts[b][static_cast<std::size_t>(k)];
    }
    const VEstimate v = v_from_A(combine(step_parts), spec.qubits);
    if (k == 0 && v.value < 0.0) orientation = -1.0;
    run.series.push_back({k, orientation * v.value, v.se});
  }
  return run;
}

}  // namespace detail

std::vector<MomentAccumulator> dephase_trajectories(std::span<const Complex> weights, int qubits,
                                                    double epsilon, int n_steps, RngStream& rng) {
  detail::check_decoherence_args(epsilon, n_steps);
  std::vector<MomentAccumulator> steps(static_cast<std::size_t>(n_steps) + 1);
  const double m = static_cast<double>(qubits);
  for (Complex w : weights) {
    steps[0].add(w);
    double phase = 0.0;
    for (int k = 1; k <= n_steps; ++k) {
      phase += epsilon * rng.normal();
      const Complex factor = std::polar(1.0, m * phase);
      if (std::abs(std::abs(factor) - 1.0) > 1e-12) {
        throw std::logic_error("dephasing factor left the unit circle");
      }
      steps[static_cast<std::size_t>(k)].add(w * factor);
    }
  }
  return steps;
}

DecoherenceRun evolve_v_sampled(Representation rep, const GhzSpec& spec,
                                const MeasurementPlan& plan, double epsilon, int n_steps,
                                const PipelineConfig& config) {
  detail::check_decoherence_args(epsilon, n_steps);
  std::vector<std::vector<MomentAccumulator>> parts(config.sub_batches);
  for_each_sub_batch(rep, spec, config, [&](std::size_t b, const AnyBatch& batch) {
    RngStream noise(config.seed, stream_id(StreamDomain::noise, b));
    const std::vector<Complex> w = weights_A(batch, plan);
    parts[b] = dephase_trajectories(w, spec.qubits, epsilon, n_steps, noise);
  });
  return detail::assemble_run(spec, plan, epsilon, n_steps, parts);
}

double analytic_decay(double epsilon, int qubits, double tau) {
  const double m = static_cast<double>(qubits);
  return std::exp(-0.5 * epsilon * epsilon * m * m * tau);
}

double fit_decay_rate(const std::vector<DecayPoint>& series) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t used = 0;
  for (const auto& p : series) {
    if (!(p.v_hat > 0.0) || !(p.v_hat > 5.0 * p.v_se)) break;
    const double x = p.tau;
    const double y = std::log(p.v_hat);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 10) {
    throw std::invalid_argument("decay fit needs at least 10 points above the noise floor, got " +
                                std::to_string(used));
  }
  const double n = static_cast<double>(used);
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  return -slope;
}

}  // namespace ghzsim
