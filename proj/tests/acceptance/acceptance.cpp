// Acceptance suite: one PASS/FAIL line per criterion.
//   ghzsim_acceptance            run everything
//   ghzsim_acceptance <name>...  run selected checks (oracle, equivalence, ...)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ghzsim/bell.hpp"
#include "ghzsim/decoherence.hpp"
#include "ghzsim/oracle.hpp"
#include "ghzsim/pipeline.hpp"
#include "ghzsim_app/commands.hpp"

using namespace ghzsim;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Exact state-vector values against 2^{M-1} and 2^{M-1/2}.
Outcome oracle_exactness() {
  double worst = 0.0;
  for (int m = 3; m <= 13; m += 2) {
    const Preset p = mermin_preset(m);
    const double im = oracle_A(build_state(p.spec), p.plan).imag();
    worst = std::max(worst, std::abs(im - std::ldexp(1.0, m - 1)) / std::ldexp(1.0, m - 1));
  }
  for (int m = 2; m <= 12; m += 2) {
    const Preset p = ardehali_preset(m);
    const Complex a = oracle_A(build_state(p.spec), p.plan);
    const double target = std::pow(2.0, m - 0.5);
    worst = std::max(worst, std::abs(std::abs(a.real() + a.imag()) - target) / target);
  }
  return {worst < 1e-10, fmt("worst relative error %.3g (limit 1e-10)", worst)};
}

// 2. 50 random uniform-sign configurations, three representations, n = 2^20.
Outcome representation_equivalence() {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_int_distribution<int> qubits(1, 6);
  int failures = 0, checks = 0;
  double worst = 0.0;
  for (int c = 0; c < 50; ++c) {
    const int m = qubits(gen);
    const GhzSpec spec = make_ghz(m, angle(gen));
    const int sign = gen() % 2 ? 1 : -1;
    std::vector<SiteSetting> sites;
    for (int j = 0; j < m; ++j) sites.push_back({angle(gen), sign});
    const MeasurementPlan plan(sites);
    const Complex exact = oracle_A(build_state(spec), plan);
    for (Representation rep :
         {Representation::su2q, Representation::pp_number, Representation::pp_schwinger}) {
      const PipelineConfig pc{std::uint64_t{1} << 20, 64, 0, 1000 + static_cast<std::uint64_t>(c)};
      const MomentEstimate e = sample_and_estimate_A(rep, spec, plan, pc).estimate;
      const double zr = std::abs(e.mean.real() - exact.real()) / e.se_re;
      const double zi = std::abs(e.mean.imag() - exact.imag()) / e.se_im;
      const double z = std::max(zr, zi);
      worst = std::max(worst, z);
      ++checks;
      if (!(z <= 4.0)) ++failures;
    }
  }
  return {failures <= 2,
          fmt("%d of %d estimates outside 4 SE (max %.2f SE); at most 2 allowed", failures, checks, worst)};
}

// 3. M = 8 Ardehali, SU(2)-Q, n = 2^24.
Outcome bell_violation() {
  const Preset p = ardehali_preset(8);
  const PipelineConfig pc{std::uint64_t{1} << 24, 64, 0, 8};
  const BellReport r = bell_report(sample_and_estimate_A(Representation::su2q, p.spec, p.plan, pc).estimate, 8);
  const double qm = std::pow(2.0, 7.5);
  const double mabk_sigma = (r.v_hat - 16.0) / r.v_se;
  const double qm_sigma = std::abs(r.v_hat - qm) / r.v_se;
  const double svet_sigma = (r.v_hat - 128.0) / r.v_se;
  const bool genuine = r.v_hat / qm > 1.0 / std::numbers::sqrt2;
  const bool pass = mabk_sigma >= 5.0 && qm_sigma <= 3.0 && genuine && svet_sigma >= 3.0;
  return {pass, fmt("V=%.4f +- %.4f: %.1f SE over MABK 16, %.2f SE from 2^7.5, %.1f SE over Svetlichny 128",
                    r.v_hat, r.v_se, mabk_sigma, qm_sigma, svet_sigma)};
}

// Shared SU(2)-Q scaling run over M = 2..14 at n = 2^22 (used by criteria 4 and 5).
const app::RunResult& q_scaling() {
  static const app::RunResult result = [] {
    app::RunConfig cfg;
    cfg.qubits = app::parse_qubits("2..14");
    cfg.samples = std::uint64_t{1} << 22;
    cfg.representations = {Representation::su2q};
    cfg.seed = 4;
    return app::run_scaling(cfg);
  }();
  return result;
}

double cell(const app::Table& t, std::size_t row, const std::string& col) {
  return std::get<double>(t.rows[row][t.column(col)]);
}

int cell_int(const app::Table& t, std::size_t row, const std::string& col) {
  return static_cast<int>(std::get<std::int64_t>(t.rows[row][t.column(col)]));
}

// 4. Fitted per-qubit exponent of the relative V error.
Outcome error_scaling() {
  const app::Table& q = q_scaling().table("points");
  std::vector<ScalingPoint> qpts;
  for (std::size_t i = 0; i < q.rows.size(); ++i) {
    const int m = cell_int(q, i, "M");
    if (m >= 4 && m % 2 == 0) qpts.push_back({m, cell(q, i, "v_relative_error")});
  }
  const double q_slope = fit_error_exponent(qpts).slope;

  app::RunConfig cfg;
  cfg.qubits = app::parse_qubits("4..14:2");
  cfg.samples = std::uint64_t{1} << 22;
  cfg.representations = {Representation::pp_number};
  cfg.seed = 4;
  const app::RunResult pp = app::run_scaling(cfg);
  const app::Table& fits = pp.table("fits");
  const double p_slope = cell(fits, 0, "slope");
  const bool pass = std::abs(q_slope - 1.0 / 3.0) <= 0.15 && p_slope > q_slope;
  return {pass, fmt("SU(2)-Q slope %.4f (target 1/3 +- 0.15), number-state positive-P slope %.4f",
                    q_slope, p_slope)};
}

// 5. Number observable: relative SE non-increasing, mean M/2 within 4 SE.
Outcome low_order_flatness() {
  const app::Table& q = q_scaling().table("points");
  bool monotone = true, unbiased = true;
  double worst_z = 0.0, prev = INFINITY;
  std::string series;
  for (std::size_t i = 0; i < q.rows.size(); ++i) {
    const int m = cell_int(q, i, "M");
    const double rel = cell(q, i, "n_relative_se");
    monotone = monotone && rel <= prev;
    prev = rel;
    const double z = std::abs(cell(q, i, "n_mean") - m / 2.0) / cell(q, i, "n_se");
    worst_z = std::max(worst_z, z);
    unbiased = unbiased && z <= 4.0;
    series += fmt("%s%.3g", series.empty() ? "" : ",", rel);
  }
  return {monotone && unbiased,
          fmt("relative SE M=2..14: %s; %s; max |<N>-M/2| = %.2f SE", series.c_str(),
              monotone ? "non-increasing" : "NOT non-increasing", worst_z)};
}

// 6. Acceptance rates at 10^6 accepted samples and KS tests of the radial draws.
Outcome sampler_calibration() {
  const GhzSpec spec = make_ghz(4, 0.7);
  constexpr std::size_t n = 1000000;
  RngStream r1(6, 0), r2(6, 1), r3(6, 2);
  const double a1 = sample_q(spec, n, r1).acceptance_rate();
  const double a2 = sample_pp_number(spec, n, r2).acceptance_rate();
  const double a3 = sample_pp_schwinger(spec, n, r3).acceptance_rate();

  RngStream rng(6, stream_id(StreamDomain::test, 6));
  std::vector<double> f1(n), f2(n);
  for (std::size_t i = 0; i < n; ++i) f1[i] = radial_inverse_f1(rng.uniform());
  for (std::size_t i = 0; i < n; ++i) f2[i] = radial_inverse_f2(rng.uniform());
  std::sort(f1.begin(), f1.end());
  std::sort(f2.begin(), f2.end());
  // Analytic CDFs of 4r/(1+r^2)^3 and 4r^3/(1+r^2)^3.
  auto cdf1 = [](double r) { return 1.0 - 1.0 / ((1.0 + r * r) * (1.0 + r * r)); };
  auto cdf2 = [](double r) { const double t = r * r / (1.0 + r * r); return t * t; };
  auto ks = [&](const std::vector<double>& xs, auto cdf) {
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double f = cdf(xs[i]);
      d = std::max({d, std::abs(f - double(i) / n), std::abs(f - double(i + 1) / n)});
    }
    return d;
  };
  const double d1 = ks(f1, cdf1), d2 = ks(f2, cdf2);
  const bool pass = std::abs(a1 - 0.5) <= 0.01 && std::abs(a2 - 0.5) <= 0.01 &&
                    std::abs(a3 - 0.5) <= 0.01 && d1 < 0.01 && d2 < 0.01;
  return {pass, fmt("acceptance %.4f / %.4f / %.4f; KS distances %.5f, %.5f", a1, a2, a3, d1, d2)};
}

// 7. Per-sample weights escape the eigenvalue box at M = 2.
Outcome range_escape() {
  app::RunConfig cfg;
  cfg.qubits = {2};
  cfg.samples = std::uint64_t{1} << 16;
  cfg.representations = app::parse_representations("all");
  cfg.seed = 7;
  const app::RunResult scatter = app::run_scatter(cfg);
  const app::Table& s = scatter.table("summary");
  bool pass = true;
  std::string text;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const double frac = cell(s, i, "fraction_outside");
    pass = pass && frac > 0.0;
    text += fmt("%s%s %.3f", text.empty() ? "" : ", ",
                std::get<std::string>(s.rows[i][0]).c_str(), frac);
  }
  return {pass, "fraction outside [-1,1]^2: " + text};
}

// 8. Collective dephasing rates eps^2 M^2 / 2 and the M = 6 / M = 3 ratio.
Outcome super_decoherence() {
  constexpr double eps = 0.1;
  std::map<int, double> rates;
  bool pass = true;
  std::string text;
  for (int m : {2, 3, 4, 6}) {
    const Preset p = make_preset(PresetKind::automatic, m);
    const PipelineConfig pc{std::uint64_t{1} << 20, 64, 0, 80 + static_cast<std::uint64_t>(m)};
    const DecoherenceRun run = evolve_v_sampled(Representation::su2q, p.spec, p.plan, eps, 100, pc);
    const double rate = fit_decay_rate(run.series);
    const double expected = eps * eps * m * m / 2.0;
    rates[m] = rate;
    pass = pass && std::abs(rate / expected - 1.0) <= 0.10;
    text += fmt("M=%d %.5f (exp %.3f); ", m, rate, expected);
  }
  const double ratio = rates[6] / rates[3];
  pass = pass && std::abs(ratio / 4.0 - 1.0) <= 0.15;
  return {pass, text + fmt("rate(6)/rate(3) = %.3f", ratio)};
}

// 9. Byte-identical run_violations output for different worker counts.
Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ghzsim_acceptance";
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  app::RunConfig cfg;
  cfg.qubits = app::parse_qubits("2..6");
  cfg.samples = std::uint64_t{1} << 18;
  cfg.representations = app::parse_representations("all");
  cfg.seed = 9;
  bool pass = true;
  std::size_t bytes = 0;
  for (app::Format f : {app::Format::csv, app::Format::json}) {
    cfg.workers = 1;
    const fs::path a = dir / (f == app::Format::csv ? "w1.csv" : "w1.json");
    app::write_result_file(a.string(), app::run_violations(cfg), f);
    cfg.workers = 4;
    const fs::path b = dir / (f == app::Format::csv ? "w4.csv" : "w4.json");
    app::write_result_file(b.string(), app::run_violations(cfg), f);
    const std::string x = slurp(a), y = slurp(b);
    pass = pass && !x.empty() && x == y;
    bytes += x.size();
  }
  fs::remove_all(dir);
  return {pass, fmt("workers 1 vs 4, csv and json: %s (%zu bytes compared)",
                    pass ? "identical" : "DIFFERENT", bytes)};
}

// Smoke run at M = 60: completes and stays finite (no significance claim).
Outcome smoke_m60() {
  const Preset p = ardehali_preset(60);
  bool finite = true;
  std::string text;
  for (Representation rep :
       {Representation::su2q, Representation::pp_number, Representation::pp_schwinger}) {
    const PipelineConfig pc{std::uint64_t{1} << 12, 16, 0, 60};
    const MomentEstimate e = sample_and_estimate_A(rep, p.spec, p.plan, pc).estimate;
    const BellReport r = bell_report(e, 60);
    finite = finite && std::isfinite(r.v_hat) && std::isfinite(r.v_se);
    text += fmt("%s V=%.3g; ", std::string(to_string(rep)).c_str(), r.v_hat);
  }
  return {finite, text + "qm_v=" + fmt("%.3g", reference_values(60).qm_v)};
}

struct Check {
  const char* name;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Check> checks = {
      {"oracle", "1 oracle exactness", oracle_exactness},
      {"equivalence", "2 representation equivalence", representation_equivalence},
      {"bell", "3 Bell violation at M=8", bell_violation},
      {"scaling", "4 error-scaling law", error_scaling},
      {"flatness", "5 low-order flatness", low_order_flatness},
      {"calibration", "6 rejection-sampler calibration", sampler_calibration},
      {"range", "7 weak-value range escape", range_escape},
      {"decoherence", "8 super-decoherence", super_decoherence},
      {"determinism", "9 determinism", determinism},
      {"smoke60", "smoke M=60", smoke_m60},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& c : checks) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s [%s] %s\n", o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no matching checks\n");
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
