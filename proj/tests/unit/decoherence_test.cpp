#include <doctest.h>

#include <cmath>

#include "ghzsim/decoherence.hpp"

using namespace ghzsim;

TEST_CASE("analytic decay") {
  CHECK(analytic_decay(0.02, 10, 50.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(analytic_decay(0.0, 10, 50.0) == 1.0);
  CHECK(analytic_decay(0.1, 4, 0.0) == 1.0);
}

TEST_CASE("zero noise leaves V unchanged") {
  const Preset p = mermin_preset(3);
  RngStream s(1, 0), noise(1, 1);
  const auto batch = sample_q(p.spec, 4096, s);
  const DecoherenceRun run = evolve_v(p.spec, p.plan, 0.0, 20, batch, noise);
  REQUIRE(run.series.size() == 21);
  for (const auto& pt : run.series) {
    CHECK(pt.v_hat == run.series[0].v_hat);
    CHECK(pt.v_se == run.series[0].v_se);
  }
}

TEST_CASE("tau = 0 equals the static estimate") {
  const Preset p = ardehali_preset(4);
  RngStream s(2, 0), noise(2, 1);
  const auto batch = sample_pp_number(p.spec, 5000, s);
  const DecoherenceRun run = evolve_v(p.spec, p.plan, 0.05, 5, batch, noise);
  const VEstimate v = v_from_A(estimate_A(batch, p.plan), 4);
  CHECK(run.series[0].v_hat == std::abs(v.value));
  CHECK(run.series[0].v_se == v.se);

  PipelineConfig cfg{.samples = 4096, .sub_batches = 8, .workers = 3, .seed = 11};
  const auto streamed = evolve_v_sampled(Representation::su2q, p.spec, p.plan, 0.05, 5, cfg);
  const auto stat = sample_and_estimate_A(Representation::su2q, p.spec, p.plan, cfg);
  CHECK(streamed.series[0].v_hat == std::abs(v_from_A(stat.estimate, 4).value));
  cfg.workers = 1;
  const auto again = evolve_v_sampled(Representation::su2q, p.spec, p.plan, 0.05, 5, cfg);
  for (std::size_t k = 0; k < again.series.size(); ++k)
    CHECK(again.series[k].v_hat == streamed.series[k].v_hat);
}

TEST_CASE("noise factors have unit modulus") {
  const std::vector<Complex> w(64, Complex{1.0, 0.0});
  RngStream noise(3, 0);
  const auto acc = dephase_trajectories(w, 6, 0.3, 10, noise);
  REQUIRE(acc.size() == 11);
  for (const auto& a : acc) {
    CHECK(a.count() == 64);
    // |mean| <= 1 since every factor has modulus one.
    CHECK(std::abs(a.mean()) <= 1.0 + 1e-12);
  }
  CHECK(acc[0].mean() == Complex{1.0, 0.0});
}

TEST_CASE("fit_decay_rate") {
  std::vector<DecayPoint> series;
  for (int t = 0; t <= 40; ++t) series.push_back({t, 5.0 * std::exp(-0.02 * t), 0.01});
  CHECK(fit_decay_rate(series) == doctest::Approx(0.02).epsilon(1e-10));

  // Points drowned in noise after the leading run are ignored.
  for (int t = 41; t <= 60; ++t) series.push_back({t, 0.001, 0.01});
  series.push_back({61, 10.0, 0.01});
  CHECK(fit_decay_rate(series) == doctest::Approx(0.02).epsilon(1e-10));

  std::vector<DecayPoint> short_run;
  for (int t = 0; t < 9; ++t) short_run.push_back({t, 1.0, 0.01});
  CHECK_THROWS_AS(fit_decay_rate(short_run), std::invalid_argument);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(detail::check_decoherence_args(-0.1, 5), std::invalid_argument);
  CHECK_THROWS_AS(detail::check_decoherence_args(0.1, -1), std::invalid_argument);
  CHECK_NOTHROW(detail::check_decoherence_args(0.1, 0));
  CHECK_THROWS_AS(detail::check_decoherence_args(NAN, 5), std::invalid_argument);
}
