#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wlansim/config.hpp"
#include "wlansim/controller.hpp"
#include "wlansim/event_queue.hpp"
#include "wlansim/mac_frames.hpp"
#include "wlansim/medium.hpp"
#include "wlansim/metrics.hpp"
#include "wlansim/mobility.hpp"
#include "wlansim/phy.hpp"
#include "wlansim/rng.hpp"
#include "wlansim/tcp.hpp"

namespace wlansim {

struct SimulationOptions {
  bool collect_exchange_trace = false;  // per-exchange records (heavy)
  bool collect_time_series = false;     // 250 ms binned per-station series
};

struct TimeSeriesPoint {
  double time_s = 0.0;
  int sta = 0;
  std::string metric;
  double value = 0.0;
};

struct SimulationResult {
  RunReport report;
  std::vector<FlowRecord> flows;
  std::vector<ControllerTraceEntry> controller_trace;
  std::vector<ExchangeRecord> exchange_trace;
  std::vector<TimeSeriesPoint> time_series;
  std::vector<SimTime> medium_busy;  // per AP
  SimTime duration = 0;
  std::uint64_t handovers = 0;
};

// One deterministic realization: builds the scenario, runs the event loop to
// the horizon and reports per-flow and aggregate KPIs. A Simulation is
// single-use and fully self-contained; independent instances may run on
// different threads concurrently.
class Simulation {
 public:
  Simulation(ScenarioConfig config, std::uint64_t seed, SimulationOptions options = {});
  ~Simulation();

  SimulationResult run();

 private:
  struct Station {
    int device = -1;
    bool is_udp = false;
    RandomWaypoint walk;
    int ap = -1;
  };

  // Device ids: APs are [0, ap_count), stations follow.
  int ap_count() const { return static_cast<int>(config_.ap_positions.size()); }
  bool is_ap(int device) const { return device < ap_count(); }
  int sta_index(int device) const { return device - ap_count(); }
  Edcaf& edcaf(int device, AccessCategory ac);

  Vec2 position_of(int device, SimTime t) const;
  double path_loss_to_ap(const Station& sta, int ap, SimTime t) const;
  LinkEval evaluate_link(int tx, int rx);
  int ampdu_limit(int device, AccessCategory ac);

  void setup_topology(SimulationOptions options);
  void initial_associations();
  void evaluate_associations();
  void handover(int sta, int from_ap, int to_ap);
  void set_occupancy(int ap, int delta);

  void start_udp_flow(int sta_idx);
  void udp_tick(int sta_idx);
  void enqueue_mac(int device, AccessCategory ac, Mpdu frame);

  void on_delivered(const Mpdu& frame, int tx, int rx, SimTime deliver_time);
  void on_dropped(const Mpdu& frame, DropReason reason);

  void controller_tick_chain(SimTime at);
  void time_series_chain(SimTime at);
  void finalize(SimulationResult& result);

  ScenarioConfig config_;
  std::uint64_t seed_;
  SimulationOptions options_;

  EventQueue engine_;
  RngStream mobility_rng_;
  RngStream backoff_rng_;
  RngStream error_rng_;
  RngStream traffic_rng_;

  ChannelPlan channel_plan_;
  std::vector<Station> stations_;
  std::deque<Edcaf> edcafs_;  // stable storage, 2 per device
  std::vector<std::unique_ptr<Medium>> media_;
  std::vector<ApController> controllers_;
  std::vector<int> udp_occupancy_;

  std::vector<FlowRecord> flows_;
  std::vector<std::unique_ptr<TcpFlow>> tcp_flows_;
  std::vector<std::uint64_t> udp_seq_;

  std::vector<ExchangeRecord> exchange_trace_;
  std::uint64_t handovers_ = 0;

  // Time-series accumulators (250 ms bins).
  SimTime bin_width_ = milliseconds(250);
  struct BinAcc {
    double delay_sum_ms = 0.0;
    std::uint64_t delay_count = 0;
    std::uint64_t tcp_unique = 0;
  };
  std::vector<std::vector<BinAcc>> bins_;  // [sta][bin]
  std::vector<TimeSeriesPoint> series_;
};

std::string controller_trace_csv(const std::vector<ControllerTraceEntry>& trace);
std::string time_series_csv(const std::vector<TimeSeriesPoint>& series);

}  // namespace wlansim
