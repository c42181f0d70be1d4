#include "ghzsim/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace ghzsim {

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& task) {
  const auto threads =
      static_cast<std::size_t>(std::min<std::size_t>(resolve_workers(workers), count));
  std::vector<std::exception_ptr> errors(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

AnyBatch sample_batch(Representation rep, const GhzSpec& spec, std::size_t n, RngStream& rng) {
  switch (rep) {
    case Representation::su2q: return sample_q(spec, n, rng);
    case Representation::pp_number: return sample_pp_number(spec, n, rng);
    case Representation::pp_schwinger: return sample_pp_schwinger(spec, n, rng);
  }
  throw std::invalid_argument("unknown representation");
}

std::vector<Complex> weights_A(const AnyBatch& batch, const MeasurementPlan& plan) {
  return std::visit([&](const auto& b) { return weights_A(b, plan); }, batch);
}

std::uint64_t proposals(const AnyBatch& batch) {
  return std::visit([](const auto& b) { return b.proposals; }, batch);
}

void for_each_sub_batch(Representation rep, const GhzSpec& spec, const PipelineConfig& config,
                        const std::function<void(std::size_t, const AnyBatch&)>& visit) {
  if (config.samples == 0) throw std::invalid_argument("sample count must be positive");
  if (config.sub_batches == 0) throw std::invalid_argument("sub-batch count must be positive");
  if (config.samples < config.sub_batches) {
    throw std::invalid_argument("sample count must be at least the sub-batch count");
  }
  const auto counts = split_counts(config.samples, config.sub_batches);
  parallel_for(counts.size(), config.workers, [&](std::size_t b) {
    RngStream rng(config.seed, stream_id(StreamDomain::sampling, b));
    const AnyBatch batch = sample_batch(rep, spec, counts[b], rng);
    visit(b, batch);
  });
}

double SampledEstimate::acceptance_rate() const {
  return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
}

SampledEstimate sample_and_estimate_A(Representation rep, const GhzSpec& spec,
                                      const MeasurementPlan& plan, const PipelineConfig& config) {
  std::vector<MomentAccumulator> parts(config.sub_batches);
  std::vector<std::uint64_t> drawn(config.sub_batches, 0);
  for_each_sub_batch(rep, spec, config, [&](std::size_t b, const AnyBatch& batch) {
    for (Complex w : weights_A(batch, plan)) parts[b].add(w);
    drawn[b] = proposals(batch);
  });
  SampledEstimate out;
  out.estimate = combine(parts);
  out.accepted = out.estimate.n;
  for (auto p : drawn) out.proposals += p;
  return out;
}

}  // namespace ghzsim
