#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <variant>
#include <vector>

#include "ghzsim/estimators.hpp"
#include "ghzsim/samplers.hpp"

namespace ghzsim {

/// How a large sample is partitioned. Sub-batch b draws from stream
/// (seed, sampling/b), so results do not depend on `workers`.
struct PipelineConfig {
  std::uint64_t samples = 0;
  std::size_t sub_batches = kDefaultSubBatches;
  unsigned workers = 0;  // 0: hardware concurrency
  std::uint64_t seed = 0;
};

unsigned resolve_workers(unsigned requested);

/// Runs task(i) for i in [0, count) on up to `workers` threads. The first
/// exception by index is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task);

using AnyBatch = std::variant<SampleBatchQ, SampleBatchP, SampleBatchSchwinger>;

AnyBatch sample_batch(Representation rep, const GhzSpec& spec, std::size_t n, RngStream& rng);
std::vector<Complex> weights_A(const AnyBatch& batch, const MeasurementPlan& plan);
std::uint64_t proposals(const AnyBatch& batch);

/// Samples every sub-batch (in parallel) and hands it to `visit(index, batch)`.
/// `visit` may run concurrently for different indices.
void for_each_sub_batch(Representation rep, const GhzSpec& spec, const PipelineConfig& config,
                        const std::function<void(std::size_t, const AnyBatch&)>& visit);

struct SampledEstimate {
  MomentEstimate estimate;
  std::uint64_t accepted = 0;
  std::uint64_t proposals = 0;
  double acceptance_rate() const;
};

/// Streaming <A> estimate: one MomentAccumulator per sub-batch, combined in index order.
SampledEstimate sample_and_estimate_A(Representation rep, const GhzSpec& spec,
                                      const MeasurementPlan& plan, const PipelineConfig& config);

}  // namespace ghzsim
