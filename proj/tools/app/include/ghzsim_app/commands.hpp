#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghzsim/ghz.hpp"
#include "ghzsim/samplers.hpp"
#include "ghzsim_app/report.hpp"
#include "ghzsim_app/svg.hpp"

namespace ghzsim::app {

struct RunConfig {
  std::vector<int> qubits;
  std::uint64_t samples = std::uint64_t{1} << 20;
  std::vector<Representation> representations;  // empty: subcommand default
  PresetKind preset = PresetKind::automatic;
  std::optional<double> phi;                     // overrides the preset phase
  std::uint64_t seed = 1;
  std::size_t sub_batches = 64;
  unsigned workers = 0;  // 0: hardware concurrency
  double epsilon = 0.1;
  int steps = 100;
  std::pair<int, int> pair{0, 1};
  bool timing = false;       // adds wall_time_s values (breaks byte-reproducibility)
  std::string dump_samples;  // scatter: raw coordinate dump path
};

/// Accepts a plain integer or "2^k".
std::uint64_t parse_samples(const std::string& text);

/// Comma list of counts or ranges: "3,5", "2..12", "4..14:2".
std::vector<int> parse_qubits(const std::string& text);

std::vector<Representation> parse_representations(const std::string& text);

/// "a,b" with distinct non-negative sites.
std::pair<int, int> parse_pair(const std::string& text);

/// Preset for M with the optional phase override applied.
Preset resolve_preset(const RunConfig& config, int qubits);

/// Config echo embedded in every output file (no worker count, no paths).
nlohmann::ordered_json echo_config(const RunConfig& config, const std::string& subcommand);

RunResult run_violations(const RunConfig& config);
RunResult run_scaling(const RunConfig& config);
RunResult run_scatter(const RunConfig& config);
RunResult run_decohere(const RunConfig& config);
RunResult run_oracle(const RunConfig& config);

/// Dispatches on the subcommand name.
RunResult run_subcommand(const std::string& subcommand, const RunConfig& config);

/// A chart of the primary table of a result.
Plot make_plot(const RunResult& result);

}  // namespace ghzsim::app
