#include "ghzsim_app/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "ghzsim/bell.hpp"
#include "ghzsim/decoherence.hpp"
#include "ghzsim/estimators.hpp"
#include "ghzsim/oracle.hpp"
#include "ghzsim/pipeline.hpp"

namespace ghzsim::app {
namespace {

template <class Int>
Int parse_int(std::string_view text, const char* what) {
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw std::invalid_argument(std::string("invalid ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<Representation> representations_or(const RunConfig& config,
                                               std::vector<Representation> fallback) {
  return config.representations.empty() ? fallback : config.representations;
}

std::vector<int> qubits_or(const RunConfig& config, std::vector<int> fallback) {
  return config.qubits.empty() ? fallback : config.qubits;
}

PipelineConfig pipeline_config(const RunConfig& config) {
  return {config.samples, config.sub_batches, config.workers, config.seed};
}

Cell opt(const std::optional<double>& v) {
  return v ? Cell{*v} : Cell{};
}

Cell opt(const std::optional<bool>& v) {
  return v ? Cell{*v} : Cell{};
}

Cell rep_cell(Representation rep) { return std::string(to_string(rep)); }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<Representation> all_representations() {
  return {Representation::su2q, Representation::pp_number, Representation::pp_schwinger};
}

}  // namespace

std::uint64_t parse_samples(const std::string& raw) {
  const std::string_view text = trim(raw);
  if (text.starts_with("2^")) {
    const auto k = parse_int<unsigned>(text.substr(2), "sample exponent");
    if (k > 62) throw std::invalid_argument("sample exponent must be at most 62");
    return std::uint64_t{1} << k;
  }
  const auto n = parse_int<std::uint64_t>(text, "sample count");
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  return n;
}

std::vector<int> parse_qubits(const std::string& text) {
  std::vector<int> out;
  for (auto part : split(text, ',')) {
    part = trim(part);
    const auto dots = part.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_int<int>(part, "qubit count"));
      continue;
    }
    std::string_view hi_part = part.substr(dots + 2);
    int step = 1;
    if (const auto colon = hi_part.find(':'); colon != std::string_view::npos) {
      step = parse_int<int>(hi_part.substr(colon + 1), "qubit step");
      hi_part = hi_part.substr(0, colon);
    }
    const int lo = parse_int<int>(part.substr(0, dots), "qubit count");
    const int hi = parse_int<int>(hi_part, "qubit count");
    if (step <= 0 || hi < lo) throw std::invalid_argument("invalid qubit range '" + std::string(part) + "'");
    for (int m = lo; m <= hi; m += step) out.push_back(m);
  }
  for (int m : out) {
    if (m < 1 || m > kMaxQubits) {
      throw std::invalid_argument("qubit count " + std::to_string(m) + " outside [1, " +
                                  std::to_string(kMaxQubits) + "]");
    }
  }
  return out;
}

std::vector<Representation> parse_representations(const std::string& text) {
  std::vector<Representation> out;
  for (auto part : split(text, ',')) {
    part = trim(part);
    if (part == "all") {
      for (auto r : all_representations()) out.push_back(r);
      continue;
    }
    out.push_back(parse_representation(part));
  }
  return out;
}

std::pair<int, int> parse_pair(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw std::invalid_argument("site pair must look like 'a,b'");
  const int a = parse_int<int>(trim(parts[0]), "site index");
  const int b = parse_int<int>(trim(parts[1]), "site index");
  if (a == b) throw std::invalid_argument("site pair must name two different sites");
  return {a, b};
}

Preset resolve_preset(const RunConfig& config, int qubits) {
  Preset p = make_preset(config.preset, qubits);
  if (config.phi) p.spec = make_ghz(qubits, *config.phi);
  return p;
}

nlohmann::ordered_json echo_config(const RunConfig& config, const std::string& subcommand) {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["qubits"] = config.qubits;
  j["samples"] = config.samples;
  std::vector<std::string> reps;
  for (auto r : config.representations) reps.emplace_back(to_string(r));
  j["representations"] = reps;
  j["preset"] = std::string(to_string(config.preset));
  j["phi"] = config.phi ? nlohmann::ordered_json(*config.phi) : nlohmann::ordered_json(nullptr);
  j["seed"] = config.seed;
  j["sub_batches"] = config.sub_batches;
  if (subcommand == "decohere") {
    j["epsilon"] = config.epsilon;
    j["steps"] = config.steps;
  }
  if (subcommand == "scatter") j["pair"] = {config.pair.first, config.pair.second};
  j["timing"] = config.timing;
  return j;
}

RunResult run_violations(const RunConfig& config) {
  const auto reps = representations_or(config, {Representation::su2q});
  const auto qubits = qubits_or(config, {2, 3, 4, 5, 6});
  RunResult result{"violations", echo_config(config, "violations"), {}, {}};
  result.config["qubits"] = qubits;

  Table t{"violations",
          {"representation", "M", "v_hat", "v_se", "mabk_bound", "qm_v", "svetlichny_bound",
           "sigma_mabk", "sigma_svetlichny", "genuine", "relative_error", "acceptance_rate",
           "wall_time_s", "re_A", "im_A"},
          {}};
  auto runs = nlohmann::ordered_json::array();
  for (Representation rep : reps) {
    for (int m : qubits) {
      const Preset p = resolve_preset(config, m);
      const Stopwatch clock;
      const SampledEstimate s = sample_and_estimate_A(rep, p.spec, p.plan, pipeline_config(config));
      const double wall = clock.seconds();
      const BellReport r = bell_report(s.estimate, m);
      t.add_row({rep_cell(rep), std::int64_t{m}, r.v_hat, r.v_se, r.mabk_bound, r.qm_v,
                 r.svetlichny_bound, r.sigma_mabk, opt(r.sigma_svetlichny), opt(r.genuine),
                 r.relative_error, s.acceptance_rate(), config.timing ? Cell{wall} : Cell{},
                 s.estimate.mean.real(), s.estimate.mean.imag()});
      runs.push_back({{"representation", to_string(rep)},
                      {"M", m},
                      {"accepted", s.accepted},
                      {"proposals", s.proposals},
                      {"sub_batches", s.estimate.sub_batches},
                      {"iid_se_re", s.estimate.iid_se_re()},
                      {"iid_se_im", s.estimate.iid_se_im()},
                      {"zero_se", r.zero_se}});
    }
  }
  result.tables.push_back(std::move(t));
  result.diagnostics["runs"] = std::move(runs);
  return result;
}

RunResult run_scaling(const RunConfig& config) {
  const auto reps = representations_or(config, {Representation::su2q, Representation::pp_number});
  const auto qubits = qubits_or(config, {4, 6, 8, 10, 12, 14});
  if (qubits.size() < 4) throw std::invalid_argument("scaling needs at least four qubit counts");
  RunResult result{"scaling", echo_config(config, "scaling"), {}, {}};
  result.config["qubits"] = qubits;

  Table points{"points",
               {"representation", "M", "v_hat", "v_se", "v_relative_error", "n_mean", "n_se",
                "n_iid_se", "n_relative_se", "acceptance_rate", "wall_time_s"},
               {}};
  Table fits{"fits", {"representation", "observable", "slope", "intercept", "residual"}, {}};

  const PipelineConfig pc = pipeline_config(config);
  for (Representation rep : reps) {
    std::vector<ScalingPoint> v_points, n_points;
    for (int m : qubits) {
      const Preset p = resolve_preset(config, m);
      const Stopwatch clock;
      std::vector<MomentAccumulator> a_parts(pc.sub_batches), n_parts(pc.sub_batches);
      std::vector<std::uint64_t> props(pc.sub_batches);
      for_each_sub_batch(rep, p.spec, pc, [&](std::size_t b, const AnyBatch& batch) {
        for (Complex w : weights_A(batch, p.plan)) a_parts[b].add(w);
        props[b] = proposals(batch);
        if (const auto* q = std::get_if<SampleBatchQ>(&batch)) {
          for (std::size_t i = 0; i < q->size(); ++i) n_parts[b].add(weight_number_q(q->z.row(i)));
        }
      });
      const double wall = clock.seconds();
      const MomentEstimate a = combine(a_parts);
      const BellReport r = bell_report(a, m);
      std::uint64_t total = 0;
      for (auto x : props) total += x;
      const double acceptance = static_cast<double>(a.n) / static_cast<double>(total);
      v_points.push_back({m, r.relative_error});

      Cell n_mean, n_se, n_iid, n_rel;
      if (rep == Representation::su2q) {
        const MomentEstimate n = combine(n_parts);
        n_mean = n.mean.real();
        n_se = n.se_re;
        n_iid = n.iid_se_re();
        n_rel = n.iid_se_re() / (0.5 * m);
        n_points.push_back({m, n.iid_se_re() / (0.5 * m)});
      }
      points.add_row({rep_cell(rep), std::int64_t{m}, r.v_hat, r.v_se, r.relative_error, n_mean,
                      n_se, n_iid, n_rel, acceptance, config.timing ? Cell{wall} : Cell{}});
    }
    const ScalingFit fv = fit_error_exponent(v_points);
    fits.add_row({rep_cell(rep), std::string("v"), fv.slope, fv.intercept, fv.residual});
    if (!n_points.empty()) {
      const ScalingFit fn = fit_error_exponent(n_points);
      fits.add_row({rep_cell(rep), std::string("number"), fn.slope, fn.intercept, fn.residual});
    }
  }
  result.tables.push_back(std::move(points));
  result.tables.push_back(std::move(fits));
  return result;
}

namespace {

template <class Batch>
void append_batch(Batch& into, const Batch& from) {
  into.qubits = from.qubits;
  into.proposals += from.proposals;
  if constexpr (std::is_same_v<Batch, SampleBatchQ>) {
    if (into.z.cols() == 0) into.z = ComplexRows(from.qubits);
    into.z.append(from.z);
  } else if constexpr (std::is_same_v<Batch, SampleBatchP>) {
    if (into.mu.cols() == 0) into.mu = into.nu = ComplexRows(from.qubits);
    into.mu.append(from.mu);
    into.nu.append(from.nu);
  } else {
    if (into.mu1.cols() == 0) into.mu1 = into.mu2 = into.nu1 = into.nu2 = ComplexRows(from.qubits);
    into.mu1.append(from.mu1);
    into.mu2.append(from.mu2);
    into.nu1.append(from.nu1);
    into.nu2.append(from.nu2);
  }
}

/// Materializes the full pipeline sample in sub-batch order.
AnyBatch collect(Representation rep, const GhzSpec& spec, const PipelineConfig& pc) {
  std::vector<std::optional<AnyBatch>> parts(pc.sub_batches);
  for_each_sub_batch(rep, spec, pc, [&](std::size_t b, const AnyBatch& batch) { parts[b] = batch; });
  AnyBatch merged = std::move(*parts[0]);
  for (std::size_t b = 1; b < parts.size(); ++b) {
    std::visit(
        [&](auto& into) {
          append_batch(into, std::get<std::decay_t<decltype(into)>>(*parts[b]));
        },
        merged);
  }
  return merged;
}

std::string dump_path(const std::string& base, Representation rep, bool several) {
  if (!several) return base;
  const auto dot = base.find_last_of('.');
  const auto slash = base.find_last_of('/');
  const std::string tag = "-" + std::string(to_string(rep));
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return base + tag;
  return base.substr(0, dot) + tag + base.substr(dot);
}

}  // namespace

RunResult run_scatter(const RunConfig& config) {
  const auto reps = representations_or(config, {Representation::su2q, Representation::pp_number});
  const auto qubits = qubits_or(config, {2});
  if (qubits.size() != 1) throw std::invalid_argument("scatter takes exactly one qubit count");
  const int m = qubits[0];
  if (config.pair.first < 0 || config.pair.second < 0 || config.pair.first >= m ||
      config.pair.second >= m) {
    throw std::invalid_argument("scatter site pair outside [0, M)");
  }
  RunResult result{"scatter", echo_config(config, "scatter"), {}, {}};
  result.config["qubits"] = qubits;
  const Preset p = resolve_preset(config, m);

  Table pts{"points", {"representation", "sample", "x", "y", "neg_xx", "yy"}, {}};
  Table summary{"summary",
                {"representation", "points", "fraction_outside", "mean_x", "mean_y", "mean_neg_xx",
                 "mean_yy", "acceptance_rate"},
                {}};
  for (Representation rep : reps) {
    const AnyBatch batch = collect(rep, p.spec, pipeline_config(config));
    const auto xy = std::visit([&](const auto& b) { return scatter_points(b, p.plan, config.pair); }, batch);
    const auto terms = std::visit([&](const auto& b) { return correlation_terms(b, config.pair); }, batch);
    std::size_t outside = 0;
    double sx = 0, sy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xy.size(); ++i) {
      const auto [x, y] = xy[i];
      const auto [nxx, yy] = terms[i];
      outside += std::abs(x) > 1.0 || std::abs(y) > 1.0;
      sx += x, sy += y, sxx += nxx, syy += yy;
      pts.add_row({rep_cell(rep), static_cast<std::int64_t>(i), x, y, nxx, yy});
    }
    const double n = static_cast<double>(xy.size());
    const double acc = std::visit([](const auto& b) { return b.acceptance_rate(); }, batch);
    summary.add_row({rep_cell(rep), static_cast<std::int64_t>(xy.size()),
                     static_cast<double>(outside) / n, sx / n, sy / n, sxx / n, syy / n, acc});
    if (!config.dump_samples.empty()) {
      const std::string path = dump_path(config.dump_samples, rep, reps.size() > 1);
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
      std::visit([&](const auto& b) { write_batch_csv(out, b); }, batch);
      if (!out) throw std::runtime_error("failed writing '" + path + "'");
    }
  }
  result.tables.push_back(std::move(pts));
  result.tables.push_back(std::move(summary));
  return result;
}

RunResult run_decohere(const RunConfig& config) {
  const auto reps = representations_or(config, {Representation::su2q});
  const auto qubits = qubits_or(config, {2, 3, 4, 6});
  RunResult result{"decohere", echo_config(config, "decohere"), {}, {}};
  result.config["qubits"] = qubits;

  Table series{"series",
               {"representation", "M", "tau", "v_hat", "v_se", "v_ratio", "analytic"},
               {}};
  Table fits{"fits",
             {"representation", "M", "fitted_rate", "expected_rate", "relative_deviation",
              "wall_time_s"},
             {}};
  auto warnings = nlohmann::ordered_json::array();
  for (Representation rep : reps) {
    for (int m : qubits) {
      const Preset p = resolve_preset(config, m);
      const Stopwatch clock;
      const DecoherenceRun run = evolve_v_sampled(rep, p.spec, p.plan, config.epsilon, config.steps,
                                                  pipeline_config(config));
      const double wall = clock.seconds();
      const double v0 = run.series.front().v_hat;
      for (const auto& pt : run.series) {
        series.add_row({rep_cell(rep), std::int64_t{m}, std::int64_t{pt.tau}, pt.v_hat, pt.v_se,
                        v0 != 0.0 ? Cell{pt.v_hat / v0} : Cell{},
                        analytic_decay(config.epsilon, m, pt.tau)});
      }
      const double expected = config.epsilon * config.epsilon * m * m / 2.0;
      Cell fitted, deviation;
      try {
        const double rate = fit_decay_rate(run.series);
        fitted = rate;
        if (expected > 0) deviation = rate / expected - 1.0;
      } catch (const std::invalid_argument& e) {
        warnings.push_back(std::string(to_string(rep)) + " M=" + std::to_string(m) +
                           ": decay fit skipped (" + e.what() + ")");
      }
      fits.add_row({rep_cell(rep), std::int64_t{m}, fitted, expected, deviation,
                    config.timing ? Cell{wall} : Cell{}});
    }
  }
  result.tables.push_back(std::move(series));
  result.tables.push_back(std::move(fits));
  result.diagnostics["warnings"] = std::move(warnings);
  return result;
}

RunResult run_oracle(const RunConfig& config) {
  const auto qubits = qubits_or(config, {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13});
  RunResult result{"oracle", echo_config(config, "oracle"), {}, {}};
  result.config["qubits"] = qubits;
  Table t{"oracle",
          {"preset", "M", "phi", "re_A", "im_A", "v", "qm_v", "mabk_bound", "svetlichny_bound",
           "closed_form_deviation", "hermitian_residue"},
          {}};
  for (int m : qubits) {
    if (m < 2) throw std::invalid_argument("oracle table needs M >= 2");
    const Preset p = resolve_preset(config, m);
    const StateVector state = build_state(p.spec);
    const Complex a = oracle_A(state, p.plan);
    const ReferenceValues ref = reference_values(m);
    const Complex closed = closed_form_A(p.spec, p.plan);
    // Product of the Hermitian site operators sigma^theta_j has a real expectation.
    std::vector<SiteOperator> ops;
    for (const auto& s : p.plan.settings()) ops.push_back(SiteOperator::rotated(s.theta));
    const double residue = std::abs(expect_pauli_string(state, ops).imag());
    const std::string preset =
        std::string(to_string(p.plan.common_sign() > 0 ? PresetKind::mermin : PresetKind::ardehali));
    t.add_row({config.preset == PresetKind::automatic ? preset : std::string(to_string(config.preset)),
               std::int64_t{m}, p.spec.phase, a.real(), a.imag(), v_statistic(a, m), ref.qm_v,
               ref.mabk_bound, ref.svetlichny_bound, std::abs(a - closed), residue});
  }
  result.tables.push_back(std::move(t));
  return result;
}

RunResult run_subcommand(const std::string& subcommand, const RunConfig& config) {
  if (subcommand == "violations") return run_violations(config);
  if (subcommand == "scaling") return run_scaling(config);
  if (subcommand == "scatter") return run_scatter(config);
  if (subcommand == "decohere") return run_decohere(config);
  if (subcommand == "oracle") return run_oracle(config);
  throw std::invalid_argument("unknown subcommand '" + subcommand + "'");
}

namespace {

double as_real(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::nan("");
}

std::string as_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return {};
}

/// One series per distinct value of the key columns, in first-seen order.
std::vector<PlotSeries> group(const Table& t, const std::vector<std::string>& keys,
                              const std::string& x, const std::string& y, bool points,
                              const std::string& suffix = {}) {
  std::vector<PlotSeries> out;
  std::map<std::string, std::size_t> index;
  const auto xi = t.column(x), yi = t.column(y);
  for (const auto& row : t.rows) {
    std::string label;
    for (const auto& k : keys) label += (label.empty() ? "" : " M=") + as_text(row[t.column(k)]);
    label += suffix;
    auto [it, inserted] = index.emplace(label, out.size());
    if (inserted) out.push_back({label, {}, {}, points});
    out[it->second].x.push_back(as_real(row[xi]));
    out[it->second].y.push_back(as_real(row[yi]));
  }
  return out;
}

}  // namespace

Plot make_plot(const RunResult& result) {
  Plot plot;
  if (result.subcommand == "violations") {
    const Table& t = result.table("violations");
    plot = {"Sampled Bell statistic", "M", "|V|", true, group(t, {"representation"}, "M", "v_hat", false), {}};
    auto bounds = group(t, {}, "M", "mabk_bound", false, "MABK bound");
    auto qm = group(t, {}, "M", "qm_v", false, "quantum value");
    plot.series.insert(plot.series.end(), qm.begin(), qm.end());
    plot.series.insert(plot.series.end(), bounds.begin(), bounds.end());
  } else if (result.subcommand == "scaling") {
    const Table& t = result.table("points");
    plot = {"Relative error of V", "M", "relative error", true,
            group(t, {"representation"}, "M", "v_relative_error", false), {}};
  } else if (result.subcommand == "scatter") {
    const Table& t = result.table("points");
    plot = {"Per-sample site weights", "x (site a)", "x (site b)", false,
            group(t, {"representation"}, "x", "y", true), PlotBox{-1, -1, 1, 1}};
  } else if (result.subcommand == "decohere") {
    const Table& t = result.table("series");
    plot = {"Decay of V", "tau", "V(tau) / V(0)", false,
            group(t, {"representation", "M"}, "tau", "v_ratio", false), {}};
  } else if (result.subcommand == "oracle") {
    const Table& t = result.table("oracle");
    plot = {"Exact Bell statistic", "M", "|V|", true, group(t, {}, "M", "qm_v", false, "quantum value"), {}};
    auto bounds = group(t, {}, "M", "mabk_bound", false, "MABK bound");
    plot.series.insert(plot.series.end(), bounds.begin(), bounds.end());
  } else {
    throw std::invalid_argument("no plot for subcommand '" + result.subcommand + "'");
  }
  return plot;
}

}  // namespace ghzsim::app
