#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlansim/sim_time.hpp"

namespace wlansim {

enum class FlowKind { kUdp, kTcpData, kTcpAck };

// Per-flow counters and the interarrival-jitter estimator (RFC 3550:
// J += (|D| - J) / 16 over consecutive transit-time differences).
struct FlowRecord {
  int flow = -1;
  FlowKind kind = FlowKind::kUdp;
  int sta = -1;

  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped_queue = 0;
  std::uint64_t dropped_retry = 0;
  std::uint64_t delivered_payload_bytes = 0;

  double delay_sum_ms = 0.0;
  double jitter_ms = 0.0;
  double jitter_sum_ms = 0.0;  // running sum of J after each update
  std::uint64_t jitter_updates = 0;
  bool have_prev_transit = false;
  SimTime prev_transit = 0;

  // Frames still queued or on the air when the run ended.
  std::uint64_t residual_end = 0;

  void record_delivery(SimTime enqueue_t, SimTime deliver_t);

  bool conserved() const {
    return generated == delivered + dropped_queue + dropped_retry + residual_end;
  }
  double mean_delay_ms() const {
    return delivered ? delay_sum_ms / static_cast<double>(delivered) : 0.0;
  }
  double mean_jitter_ms() const {
    return jitter_updates ? jitter_sum_ms / static_cast<double>(jitter_updates) : 0.0;
  }
};

// Aggregated KPIs of one realization.
struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string policy;
  int n_sta = 0;  // 2N total stations

  double tcp_throughput_bps = 0.0;  // goodput: unique delivered payload bits / duration
  double udp_delay_ms = 0.0;
  double udp_jitter_ms = 0.0;
  double udp_loss_rate = 0.0;

  std::uint64_t udp_generated = 0;
  std::uint64_t udp_delivered = 0;
};

struct MetricSummary {
  std::string metric;
  double mean = 0.0;
  double ci95_half_width = 0.0;
};

struct BatchSummary {
  std::string scenario;
  std::string policy;
  int n_sta = 0;
  int runs = 0;
  bool ci_defined = false;  // false when fewer than 2 runs
  std::vector<MetricSummary> metrics;

  const MetricSummary& metric(const std::string& name) const;
};

// Student-t 97.5% quantile for the given degrees of freedom.
double student_t_975(int dof);

// Sample mean and t-based 95% confidence half-width across realizations.
BatchSummary summarize(const std::vector<RunReport>& runs);

// CSV emission. All writers use fixed 6-decimal formatting so identical runs
// produce byte-identical files.
std::string run_report_csv_header();
std::string run_report_csv_row(const RunReport& report);
std::string batch_summary_csv(const BatchSummary& summary);

}  // namespace wlansim
