#include <vector>

#include "doctest.h"
#include "wlansim/metrics.hpp"
#include "wlansim/rng.hpp"

using namespace wlansim;

TEST_CASE("jitter estimator") {
  SUBCASE("first packet leaves jitter at zero") {
    FlowRecord rec;
    rec.record_delivery(0, milliseconds(5));
    CHECK(rec.jitter_ms == 0.0);
    CHECK(rec.jitter_updates == 0);
  }
  SUBCASE("constant transit keeps jitter at zero") {
    FlowRecord rec;
    for (int i = 0; i < 50; ++i) {
      rec.record_delivery(i * milliseconds(20), i * milliseconds(20) + milliseconds(7));
    }
    CHECK(rec.jitter_ms == 0.0);
  }
  SUBCASE("hand-iterated example: transits 5, 9, 5 ms") {
    FlowRecord rec;
    rec.record_delivery(0, milliseconds(5));
    rec.record_delivery(milliseconds(20), milliseconds(29));
    CHECK(rec.jitter_ms == doctest::Approx(0.25));
    rec.record_delivery(milliseconds(40), milliseconds(45));
    CHECK(rec.jitter_ms == doctest::Approx(0.25 + (4.0 - 0.25) / 16.0));
    CHECK(rec.jitter_ms == doctest::Approx(0.484375));
  }
  SUBCASE("EWMA matches an independent step-by-step recomputation") {
    RngStream rng(17, StreamId::kTrafficOffsets);
    FlowRecord rec;
    double oracle = 0.0;
    double prev_ms = -1.0;
    for (int i = 0; i < 300; ++i) {
      const SimTime enq = i * milliseconds(20);
      const SimTime transit = static_cast<SimTime>(rng.uniform_double() * 2e7);
      rec.record_delivery(enq, enq + transit);
      const double t_ms = to_millis(transit);
      if (prev_ms >= 0.0) oracle += (std::abs(t_ms - prev_ms) - oracle) / 16.0;
      prev_ms = t_ms;
      CHECK(rec.jitter_ms == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("flow conservation bookkeeping") {
  FlowRecord rec;
  rec.generated = 100;
  rec.delivered = 80;
  rec.dropped_queue = 5;
  rec.dropped_retry = 10;
  rec.residual_end = 5;
  CHECK(rec.conserved());
  rec.residual_end = 4;
  CHECK_FALSE(rec.conserved());
}

TEST_CASE("batch summary") {
  auto make_run = [](double thpt_mbps, double delay) {
    RunReport r;
    r.scenario = "s";
    r.policy = "method1";
    r.n_sta = 2;
    r.tcp_throughput_bps = thpt_mbps * 1e6;
    r.udp_delay_ms = delay;
    return r;
  };

  SUBCASE("two-run oracle: mean 12, half-width 25.41") {
    const std::vector<RunReport> runs = {make_run(10, 1), make_run(14, 1)};
    const BatchSummary s = summarize(runs);
    const auto& m = s.metric("tcp_throughput_mbps");
    CHECK(m.mean == doctest::Approx(12.0));
    // t(0.975, 1) * s / sqrt(2) = 12.706 * 2.8284 / 1.4142
    CHECK(m.ci95_half_width == doctest::Approx(25.412).epsilon(1e-3));
  }
  SUBCASE("identical runs give zero half-width") {
    const std::vector<RunReport> runs = {make_run(10, 2), make_run(10, 2), make_run(10, 2)};
    const BatchSummary s = summarize(runs);
    CHECK(s.metric("tcp_throughput_mbps").ci95_half_width == doctest::Approx(0.0));
  }
  SUBCASE("mean is invariant under run ordering") {
    const std::vector<RunReport> a = {make_run(10, 1), make_run(14, 2), make_run(30, 3)};
    const std::vector<RunReport> b = {a[2], a[0], a[1]};
    CHECK(summarize(a).metric("tcp_throughput_mbps").mean ==
          doctest::Approx(summarize(b).metric("tcp_throughput_mbps").mean));
    CHECK(summarize(a).metric("udp_delay_ms").ci95_half_width ==
          doctest::Approx(summarize(b).metric("udp_delay_ms").ci95_half_width));
  }
  SUBCASE("single run is flagged as CI-undefined") {
    const std::vector<RunReport> runs = {make_run(10, 1)};
    const BatchSummary s = summarize(runs);
    CHECK_FALSE(s.ci_defined);
  }
}

TEST_CASE("Student-t quantiles") {
  CHECK(student_t_975(1) == doctest::Approx(12.706));
  CHECK(student_t_975(14) == doctest::Approx(2.145));  // 15 realizations
  CHECK(student_t_975(30) == doctest::Approx(2.042));
  CHECK(student_t_975(100) == doctest::Approx(1.984).epsilon(0.01));
  CHECK_THROWS(student_t_975(0));
}

TEST_CASE("CSV rows are stable and fixed-format") {
  RunReport r;
  r.scenario = "single-ap";
  r.seed = 7;
  r.policy = "method1";
  r.n_sta = 2;
  r.tcp_throughput_bps = 31.25e6;
  r.udp_delay_ms = 6.2;
  r.udp_jitter_ms = 1.5;
  r.udp_loss_rate = 0.03;
  CHECK(run_report_csv_row(r) ==
        "single-ap,7,method1,2,31.250000,6.200000,1.500000,0.030000\n");
  CHECK(run_report_csv_row(r) == run_report_csv_row(r));
}
