#pragma once

#include <string>
#include <vector>

#include "wlansim/controller.hpp"
#include "wlansim/geometry.hpp"
#include "wlansim/mac_frames.hpp"
#include "wlansim/mobility.hpp"
#include "wlansim/phy.hpp"
#include "wlansim/tcp.hpp"

namespace wlansim {

struct MacConfig {
  EdcaParams edca;
  int queue_capacity = 500;
  int retry_limit = 7;
  int sta_uplink_limit_bytes = kMaxAmpduBytes;
  // When true the controller's per-AP limit also caps station uplink
  // aggregates in that BSS (instead of the fixed sta_uplink_limit_bytes).
  bool policy_applies_to_sta_uplink = false;
  SimTime linkdown_recheck = milliseconds(100);
};

struct UdpConfig {
  int payload_bytes = 60;
  double packets_per_second = 50.0;
  bool uplink = true;
};

struct TrafficConfig {
  int n = 1;  // N UDP stations + N TCP stations
  UdpConfig udp;
  TcpParams tcp;
};

struct ControllerConfig {
  TuningPolicy policy = Method1{};
  double budget_ms = 0.0;  // required for the tuning methods, no silent default
  SimTime interval = milliseconds(250);
};

struct MobilityConfig {
  double speed_mps = 1.5;
  SimTime pause = seconds(2);
  SimTime association_interval = seconds(1);
  double hysteresis_db = 3.0;
  // Optional pinned station positions (index order); used by tests and
  // controlled experiments. Empty: random waypoint start points.
  std::vector<Vec2> static_positions;
};

struct MetricsConfig {
  // Mean UDP latency scope: "per_packet" pools all delivered packets,
  // "per_sta" averages per-station means.
  std::string udp_delay_scope = "per_packet";
};

struct ScenarioConfig {
  int schema_version = 1;
  std::string name = "custom";
  Arena arena;
  std::vector<Vec2> ap_positions = {{25.0, 25.0}};
  int first_channel = 36;
  RadioParams radio;
  MacConfig mac;
  TrafficConfig traffic;
  ControllerConfig controller;
  MobilityConfig mobility;
  MetricsConfig metrics;
  SimTime duration = seconds(60);

  SimTime budget() const { return static_cast<SimTime>(controller.budget_ms * 1e6); }

  // Throws std::invalid_argument with a descriptive message on bad configs.
  void validate() const;
};

// Grid of APs row-major with the given spacing and border margin.
std::vector<Vec2> ap_grid(int nx, int ny, double spacing_m, double margin_m);

// Named experiment presets: "single-ap" (50x50 m, one AP, N=1) and
// "grid-16ap" (200x200 m, 4x4 APs at 50 m spacing, 25 m margins, N=10).
ScenarioConfig preset(const std::string& name);

// Policy spec strings: "method1[:step]", "method2[:down:up]", "method3[:step]",
// "method4[:step]", "disable", "always_on", "no_aggregation".
TuningPolicy parse_policy(const std::string& spec);

std::string config_to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const std::string& text);
ScenarioConfig load_config(const std::string& path);
void save_config(const ScenarioConfig& config, const std::string& path);

}  // namespace wlansim
