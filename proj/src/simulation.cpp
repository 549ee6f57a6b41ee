#include "wlansim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wlansim {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

Simulation::Simulation(ScenarioConfig config, std::uint64_t seed, SimulationOptions options)
    : config_(std::move(config)),
      seed_(seed),
      options_(options),
      mobility_rng_(seed, StreamId::kMobility),
      backoff_rng_(seed, StreamId::kBackoff),
      error_rng_(seed, StreamId::kChannelError),
      traffic_rng_(seed, StreamId::kTrafficOffsets) {
  config_.validate();
  setup_topology(options);
}

Simulation::~Simulation() = default;

Edcaf& Simulation::edcaf(int device, AccessCategory ac) {
  return edcafs_[2 * static_cast<size_t>(device) + static_cast<size_t>(ac)];
}

Vec2 Simulation::position_of(int device, SimTime t) const {
  if (is_ap(device)) return config_.ap_positions[static_cast<size_t>(device)];
  return stations_[static_cast<size_t>(sta_index(device))].walk.position_at(t);
}

double Simulation::path_loss_to_ap(const Station& sta, int ap, SimTime t) const {
  const double d = distance(sta.walk.position_at(t),
                            config_.ap_positions[static_cast<size_t>(ap)]);
  return path_loss_db(d, channel_plan_.frequency_of(ap), config_.radio.min_distance_m);
}

LinkEval Simulation::evaluate_link(int tx, int rx) {
  const int ap = is_ap(tx) ? tx : rx;
  const SimTime now = engine_.now();
  const double d = distance(position_of(tx, now), position_of(rx, now));
  const double snr = config_.radio.snr_db(d, channel_plan_.frequency_of(ap));
  const McsSelection sel = select_mcs(config_.radio.mcs, snr);
  return LinkEval{sel.link_up, snr, sel.entry};
}

int Simulation::ampdu_limit(int device, AccessCategory) {
  if (is_ap(device)) return controllers_[static_cast<size_t>(device)].limit_bytes();
  const Station& sta = stations_[static_cast<size_t>(sta_index(device))];
  if (config_.mac.policy_applies_to_sta_uplink) {
    return controllers_[static_cast<size_t>(sta.ap)].limit_bytes();
  }
  return config_.mac.sta_uplink_limit_bytes;
}

void Simulation::setup_topology(SimulationOptions options) {
  const int aps = ap_count();
  const int n = config_.traffic.n;
  const int sta_count = 2 * n;
  const int devices = aps + sta_count;

  channel_plan_ = ChannelPlan::sequential(aps, config_.first_channel);

  // Stations: N real-time (UDP) stations first, then N TCP stations. The
  // walks are started in index order so the draw sequence depends only on
  // the seed.
  stations_.resize(static_cast<size_t>(sta_count));
  for (int s = 0; s < sta_count; ++s) {
    Station& sta = stations_[static_cast<size_t>(s)];
    sta.device = aps + s;
    sta.is_udp = s < n;
    const Vec2* fixed = nullptr;
    if (!config_.mobility.static_positions.empty()) {
      fixed = &config_.mobility.static_positions[static_cast<size_t>(s)];
    }
    sta.walk.start(engine_, mobility_rng_, config_.arena, config_.mobility.speed_mps,
                   config_.mobility.pause, fixed);
  }

  for (int d = 0; d < devices; ++d) {
    for (AccessCategory ac : {AccessCategory::kVoice, AccessCategory::kBestEffort}) {
      Edcaf e;
      e.device = d;
      e.ac = ac;
      e.queue = AcQueue(ac, static_cast<size_t>(config_.mac.queue_capacity));
      edcafs_.push_back(std::move(e));
    }
  }

  Medium::Params medium_params;
  medium_params.edca = config_.mac.edca;
  medium_params.ber = config_.radio.ber;
  medium_params.mcs = &config_.radio.mcs;
  medium_params.retry_limit = config_.mac.retry_limit;
  medium_params.linkdown_recheck = config_.mac.linkdown_recheck;

  MediumHooks hooks;
  hooks.evaluate_link = [this](int tx, int rx) { return evaluate_link(tx, rx); };
  hooks.ampdu_limit = [this](int device, AccessCategory ac) { return ampdu_limit(device, ac); };
  hooks.on_delivered = [this](const Mpdu& m, int tx, int rx, SimTime t) {
    on_delivered(m, tx, rx, t);
  };
  hooks.on_dropped = [this](const Mpdu& m, DropReason r) { on_dropped(m, r); };
  if (options.collect_exchange_trace) {
    hooks.on_exchange = [this](const ExchangeRecord& rec) { exchange_trace_.push_back(rec); };
  }

  media_.reserve(static_cast<size_t>(aps));
  for (int ap = 0; ap < aps; ++ap) {
    media_.push_back(std::make_unique<Medium>(ap, channel_plan_.frequency_of(ap), engine_,
                                              backoff_rng_, error_rng_, medium_params, hooks));
  }

  udp_occupancy_.assign(static_cast<size_t>(aps), 0);
  initial_associations();

  // Controllers start only after associations exist: the Disable baseline
  // reacts to the initial occupancy at t = 0.
  controllers_.reserve(static_cast<size_t>(aps));
  for (int ap = 0; ap < aps; ++ap) {
    controllers_.emplace_back(ap, config_.controller.policy, config_.budget(),
                              udp_occupancy_[static_cast<size_t>(ap)] > 0);
  }

  // AP EDCAFs contend on their own channel.
  for (int ap = 0; ap < aps; ++ap) {
    media_[static_cast<size_t>(ap)]->attach(&edcaf(ap, AccessCategory::kVoice));
    media_[static_cast<size_t>(ap)]->attach(&edcaf(ap, AccessCategory::kBestEffort));
  }

  // Flow records: [0, N) UDP, [N, 2N) TCP data, [2N, 3N) TCP acks.
  flows_.resize(static_cast<size_t>(3 * n));
  for (int i = 0; i < n; ++i) {
    flows_[static_cast<size_t>(i)] = FlowRecord{};
    flows_[static_cast<size_t>(i)].flow = i;
    flows_[static_cast<size_t>(i)].kind = FlowKind::kUdp;
    flows_[static_cast<size_t>(i)].sta = i;

    flows_[static_cast<size_t>(n + i)].flow = n + i;
    flows_[static_cast<size_t>(n + i)].kind = FlowKind::kTcpData;
    flows_[static_cast<size_t>(n + i)].sta = n + i;

    flows_[static_cast<size_t>(2 * n + i)].flow = 2 * n + i;
    flows_[static_cast<size_t>(2 * n + i)].kind = FlowKind::kTcpAck;
    flows_[static_cast<size_t>(2 * n + i)].sta = n + i;
  }

  // TCP downloads towards the TCP stations.
  udp_seq_.assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const int sta_idx = n + i;
    const int sta_device = aps + sta_idx;
    TcpFlow::Hooks tcp_hooks;
    tcp_hooks.deliver_data_to_ap = [this, sta_idx, sta_device](Mpdu m) {
      // Late binding: the wired segment reaches whichever AP currently
      // serves the station.
      const int ap = stations_[static_cast<size_t>(sta_idx)].ap;
      m.destination = sta_device;
      m.enqueue_time = engine_.now();
      enqueue_mac(ap, AccessCategory::kBestEffort, std::move(m));
    };
    tcp_hooks.enqueue_ack_at_sta = [this, sta_idx, sta_device](Mpdu m) {
      m.destination = stations_[static_cast<size_t>(sta_idx)].ap;
      m.enqueue_time = engine_.now();
      enqueue_mac(sta_device, AccessCategory::kBestEffort, std::move(m));
    };
    tcp_flows_.push_back(std::make_unique<TcpFlow>(config_.traffic.n + i, 2 * n + i, sta_device,
                                                   config_.traffic.tcp, engine_,
                                                   std::move(tcp_hooks)));
    TcpFlow* flow = tcp_flows_.back().get();
    engine_.schedule(0, [flow] { flow->start(); });
  }

  // Real-time sources with a random start offset inside one period.
  for (int i = 0; i < n; ++i) start_udp_flow(i);

  controller_tick_chain(config_.controller.interval);

  const SimTime assoc = config_.mobility.association_interval;
  engine_.schedule(assoc, [this] { evaluate_associations(); });

  if (options_.collect_time_series) {
    const int sta_count = 2 * config_.traffic.n;
    const auto n_bins = static_cast<size_t>(config_.duration / bin_width_);
    bins_.assign(static_cast<size_t>(sta_count), std::vector<BinAcc>(n_bins));
    time_series_chain(bin_width_);
  }
}

void Simulation::initial_associations() {
  for (auto& sta : stations_) {
    int best = 0;
    double best_loss = path_loss_to_ap(sta, 0, 0);
    for (int ap = 1; ap < ap_count(); ++ap) {
      const double loss = path_loss_to_ap(sta, ap, 0);
      if (loss < best_loss) {
        best = ap;
        best_loss = loss;
      }
    }
    sta.ap = best;
    if (sta.is_udp) ++udp_occupancy_[static_cast<size_t>(best)];
    media_[static_cast<size_t>(best)]->attach(&edcaf(sta.device, AccessCategory::kVoice));
    media_[static_cast<size_t>(best)]->attach(&edcaf(sta.device, AccessCategory::kBestEffort));
  }
}

void Simulation::evaluate_associations() {
  const SimTime now = engine_.now();
  for (size_t i = 0; i < stations_.size(); ++i) {
    Station& sta = stations_[i];
    int best = 0;
    double best_loss = path_loss_to_ap(sta, 0, now);
    for (int ap = 1; ap < ap_count(); ++ap) {
      const double loss = path_loss_to_ap(sta, ap, now);
      if (loss < best_loss) {
        best = ap;
        best_loss = loss;
      }
    }
    if (best != sta.ap &&
        path_loss_to_ap(sta, sta.ap, now) - best_loss > config_.mobility.hysteresis_db) {
      handover(static_cast<int>(i), sta.ap, best);
    }
  }
  engine_.schedule(now + config_.mobility.association_interval,
                   [this] { evaluate_associations(); });
}

void Simulation::handover(int sta_idx, int from_ap, int to_ap) {
  Station& sta = stations_[static_cast<size_t>(sta_idx)];
  Medium& from = *media_[static_cast<size_t>(from_ap)];
  Medium& to = *media_[static_cast<size_t>(to_ap)];

  sta.ap = to_ap;
  ++handovers_;

  for (AccessCategory ac : {AccessCategory::kVoice, AccessCategory::kBestEffort}) {
    Edcaf& sta_edcaf = edcaf(sta.device, ac);
    // Uplink frames were addressed to the old AP; they follow the station.
    for (Mpdu& frame : sta_edcaf.queue.frames()) {
      if (frame.destination == from_ap) frame.destination = to_ap;
    }
    from.detach(&sta_edcaf);
    to.attach(&sta_edcaf);

    // Downlink frames queued at the old AP move to the new one (the
    // handover itself loses nothing).
    Edcaf& from_ap_edcaf = edcaf(from_ap, ac);
    Edcaf& to_ap_edcaf = edcaf(to_ap, ac);
    auto& source = from_ap_edcaf.queue.frames();
    bool moved = false;
    for (auto it = source.begin(); it != source.end();) {
      if (it->destination == sta.device) {
        to_ap_edcaf.queue.frames().push_back(std::move(*it));
        it = source.erase(it);
        moved = true;
      } else {
        ++it;
      }
    }
    if (moved) {
      from.on_queue_changed(&from_ap_edcaf);
      to.on_enqueue(&to_ap_edcaf);
    }
  }

  if (sta.is_udp) {
    set_occupancy(from_ap, -1);
    set_occupancy(to_ap, +1);
  }
}

void Simulation::set_occupancy(int ap, int delta) {
  int& count = udp_occupancy_[static_cast<size_t>(ap)];
  const bool was_occupied = count > 0;
  count += delta;
  const bool occupied = count > 0;
  if (occupied != was_occupied) {
    controllers_[static_cast<size_t>(ap)].on_occupancy_change(occupied);
  }
}

void Simulation::start_udp_flow(int sta_idx) {
  const auto interval =
      static_cast<SimTime>(std::llround(1e9 / config_.traffic.udp.packets_per_second));
  const auto offset =
      static_cast<SimTime>(traffic_rng_.uniform_double() * static_cast<double>(interval));
  engine_.schedule(offset, [this, sta_idx] { udp_tick(sta_idx); });
}

void Simulation::udp_tick(int sta_idx) {
  const Station& sta = stations_[static_cast<size_t>(sta_idx)];
  const SimTime now = engine_.now();

  Mpdu frame;
  frame.flow = sta_idx;
  frame.app_seq = udp_seq_[static_cast<size_t>(sta_idx)]++;
  frame.payload_bytes = config_.traffic.udp.payload_bytes;
  frame.ac = AccessCategory::kVoice;
  frame.enqueue_time = now;
  if (config_.traffic.udp.uplink) {
    frame.destination = sta.ap;
    enqueue_mac(sta.device, AccessCategory::kVoice, std::move(frame));
  } else {
    frame.destination = sta.device;
    enqueue_mac(sta.ap, AccessCategory::kVoice, std::move(frame));
  }

  const auto interval =
      static_cast<SimTime>(std::llround(1e9 / config_.traffic.udp.packets_per_second));
  engine_.schedule(now + interval, [this, sta_idx] { udp_tick(sta_idx); });
}

void Simulation::enqueue_mac(int device, AccessCategory ac, Mpdu frame) {
  FlowRecord& rec = flows_[static_cast<size_t>(frame.flow)];
  ++rec.generated;
  Edcaf& e = edcaf(device, ac);
  if (!e.queue.push_tail(std::move(frame))) {
    ++rec.dropped_queue;
    return;
  }
  e.medium->on_enqueue(&e);
}

void Simulation::on_delivered(const Mpdu& frame, int tx, int rx, SimTime deliver_time) {
  FlowRecord& rec = flows_[static_cast<size_t>(frame.flow)];
  rec.delivered_payload_bytes += static_cast<std::uint64_t>(frame.payload_bytes);

  switch (rec.kind) {
    case FlowKind::kUdp: {
      rec.record_delivery(frame.enqueue_time, deliver_time);
      const int ap = is_ap(tx) ? tx : rx;
      controllers_[static_cast<size_t>(ap)].observe_delay(deliver_time - frame.enqueue_time);
      if (options_.collect_time_series) {
        const auto bin = static_cast<size_t>(
            std::min(deliver_time / bin_width_, config_.duration / bin_width_ - 1));
        auto& acc = bins_[static_cast<size_t>(rec.sta)][bin];
        acc.delay_sum_ms += to_millis(deliver_time - frame.enqueue_time);
        ++acc.delay_count;
      }
      break;
    }
    case FlowKind::kTcpData: {
      ++rec.delivered;
      TcpFlow& flow = *tcp_flows_[static_cast<size_t>(rec.sta - config_.traffic.n)];
      const std::uint64_t before = flow.unique_segments_delivered();
      flow.on_segment_delivered(frame.app_seq);
      if (options_.collect_time_series) {
        const auto bin = static_cast<size_t>(
            std::min(deliver_time / bin_width_, config_.duration / bin_width_ - 1));
        bins_[static_cast<size_t>(rec.sta)][bin].tcp_unique +=
            flow.unique_segments_delivered() - before;
      }
      break;
    }
    case FlowKind::kTcpAck: {
      ++rec.delivered;
      tcp_flows_[static_cast<size_t>(rec.sta - config_.traffic.n)]->on_ack_reaches_ap(
          frame.app_seq);
      break;
    }
  }
}

void Simulation::on_dropped(const Mpdu& frame, DropReason reason) {
  FlowRecord& rec = flows_[static_cast<size_t>(frame.flow)];
  if (reason == DropReason::kRetryLimit) {
    ++rec.dropped_retry;
  } else {
    ++rec.dropped_queue;
  }
}

void Simulation::controller_tick_chain(SimTime at) {
  engine_.schedule(at, [this] {
    const SimTime now = engine_.now();
    for (auto& controller : controllers_) controller.on_period_tick(now);
    const SimTime next = now + config_.controller.interval;
    if (next <= config_.duration) controller_tick_chain(next);
  });
}

void Simulation::time_series_chain(SimTime at) {
  engine_.schedule(at, [this] {
    const SimTime now = engine_.now();
    for (size_t i = 0; i < stations_.size(); ++i) {
      const Station& sta = stations_[i];
      const double d = distance(sta.walk.position_at(now),
                                config_.ap_positions[static_cast<size_t>(sta.ap)]);
      series_.push_back({to_seconds(now), static_cast<int>(i), "distance_m", d});
    }
    const SimTime next = now + bin_width_;
    if (next <= config_.duration) time_series_chain(next);
  });
}

SimulationResult Simulation::run() {
  engine_.run_until(config_.duration);
  SimulationResult result;
  finalize(result);
  return result;
}

void Simulation::finalize(SimulationResult& result) {
  // Residuals: frames still queued anywhere plus frames on the air.
  for (auto& e : edcafs_) {
    for (const Mpdu& frame : e.queue.frames()) {
      ++flows_[static_cast<size_t>(frame.flow)].residual_end;
    }
  }
  for (const auto& medium : media_) {
    if (const Ampdu* ampdu = medium->in_flight_ampdu()) {
      for (const Mpdu& frame : ampdu->subframes) {
        ++flows_[static_cast<size_t>(frame.flow)].residual_end;
      }
    }
  }

  RunReport& report = result.report;
  report.scenario = config_.name;
  report.seed = seed_;
  report.policy = policy_name(config_.controller.policy);
  report.n_sta = 2 * config_.traffic.n;

  const double duration_s = to_seconds(config_.duration);
  std::uint64_t tcp_unique = 0;
  for (const auto& flow : tcp_flows_) tcp_unique += flow->unique_segments_delivered();
  report.tcp_throughput_bps =
      static_cast<double>(tcp_unique) * 8.0 * config_.traffic.tcp.mss_bytes / duration_s;

  std::uint64_t udp_generated = 0;
  std::uint64_t udp_delivered = 0;
  double delay_sum = 0.0;
  double per_sta_delay_sum = 0.0;
  int per_sta_delay_count = 0;
  double jitter_sum = 0.0;
  int jitter_count = 0;
  for (const auto& rec : flows_) {
    if (rec.kind != FlowKind::kUdp) continue;
    udp_generated += rec.generated;
    udp_delivered += rec.delivered;
    delay_sum += rec.delay_sum_ms;
    if (rec.delivered > 0) {
      per_sta_delay_sum += rec.mean_delay_ms();
      ++per_sta_delay_count;
    }
    if (rec.jitter_updates > 0) {
      jitter_sum += rec.mean_jitter_ms();
      ++jitter_count;
    }
  }
  report.udp_generated = udp_generated;
  report.udp_delivered = udp_delivered;
  if (config_.metrics.udp_delay_scope == "per_sta") {
    report.udp_delay_ms = per_sta_delay_count ? per_sta_delay_sum / per_sta_delay_count : 0.0;
  } else {
    report.udp_delay_ms =
        udp_delivered ? delay_sum / static_cast<double>(udp_delivered) : 0.0;
  }
  report.udp_jitter_ms = jitter_count ? jitter_sum / jitter_count : 0.0;
  report.udp_loss_rate =
      udp_generated ? 1.0 - static_cast<double>(udp_delivered) / static_cast<double>(udp_generated)
                    : 0.0;

  result.flows = flows_;
  for (const auto& controller : controllers_) {
    result.controller_trace.insert(result.controller_trace.end(), controller.trace().begin(),
                                   controller.trace().end());
  }
  std::stable_sort(result.controller_trace.begin(), result.controller_trace.end(),
                   [](const ControllerTraceEntry& a, const ControllerTraceEntry& b) {
                     if (a.time != b.time) return a.time < b.time;
                     return a.ap < b.ap;
                   });
  result.exchange_trace = std::move(exchange_trace_);
  result.duration = config_.duration;
  result.handovers = handovers_;
  for (const auto& medium : media_) result.medium_busy.push_back(medium->busy_time());

  if (options_.collect_time_series) {
    result.time_series = std::move(series_);
    for (size_t s = 0; s < bins_.size(); ++s) {
      const bool is_udp_sta = static_cast<int>(s) < config_.traffic.n;
      for (size_t b = 0; b < bins_[s].size(); ++b) {
        const BinAcc& acc = bins_[s][b];
        const double t = to_seconds(static_cast<SimTime>(b + 1) * bin_width_);
        if (is_udp_sta && acc.delay_count > 0) {
          result.time_series.push_back({t, static_cast<int>(s), "udp_delay_ms",
                                        acc.delay_sum_ms / acc.delay_count});
        }
        if (!is_udp_sta) {
          const double mbps = static_cast<double>(acc.tcp_unique) * 8.0 *
                              config_.traffic.tcp.mss_bytes / to_seconds(bin_width_) / 1e6;
          result.time_series.push_back({t, static_cast<int>(s), "tcp_throughput_mbps", mbps});
        }
      }
    }
    std::stable_sort(result.time_series.begin(), result.time_series.end(),
                     [](const TimeSeriesPoint& a, const TimeSeriesPoint& b) {
                       if (a.time_s != b.time_s) return a.time_s < b.time_s;
                       if (a.sta != b.sta) return a.sta < b.sta;
                       return a.metric < b.metric;
                     });
  }
}

std::string controller_trace_csv(const std::vector<ControllerTraceEntry>& trace) {
  std::string out = "time_s,ap_id,decision,max_delay_ms,limit_bytes\n";
  for (const auto& e : trace) {
    out += format_double(to_seconds(e.time)) + "," + std::to_string(e.ap) + "," +
           decision_name(e.decision) + "," + format_double(to_millis(e.max_delay)) + "," +
           std::to_string(e.limit_bytes) + "\n";
  }
  return out;
}

std::string time_series_csv(const std::vector<TimeSeriesPoint>& series) {
  std::string out = "time_s,sta_id,metric,value\n";
  for (const auto& p : series) {
    out += format_double(p.time_s) + "," + std::to_string(p.sta) + "," + p.metric + "," +
           format_double(p.value) + "\n";
  }
  return out;
}

}  // namespace wlansim
