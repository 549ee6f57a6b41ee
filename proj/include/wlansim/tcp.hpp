#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>

#include "wlansim/event_queue.hpp"
#include "wlansim/mac_frames.hpp"
#include "wlansim/sim_time.hpp"

namespace wlansim {

struct TcpParams {
  int mss_bytes = 1'460;     // application payload per segment
  int packet_bytes = 1'500;  // on-air packet size of a data segment
  int ack_bytes = 40;
  SimTime wired_latency = milliseconds(10);  // server <-> AP one-way
  double initial_cwnd = 2.0;
  double initial_ssthresh = 1e9;
  SimTime rto_initial = seconds(1);
  SimTime rto_min = seconds(1);
  SimTime rto_max = seconds(60);
};

// New Reno window rules, kept as pure helpers.
inline double cwnd_after_ack(double cwnd, double ssthresh) {
  return cwnd < ssthresh ? cwnd + 1.0 : cwnd + 1.0 / cwnd;
}

struct WindowCut {
  double ssthresh;
  double cwnd;
};

inline WindowCut fast_retransmit_cut(double cwnd) {
  const double ssthresh = std::max(cwnd / 2.0, 2.0);
  return {ssthresh, ssthresh + 3.0};  // window inflation for the 3 dup acks
}

inline WindowCut timeout_cut(double cwnd) {
  return {std::max(cwnd / 2.0, 2.0), 1.0};
}

inline SimTime backed_off_rto(SimTime rto, SimTime rto_max) {
  return std::min(rto * 2, rto_max);
}

// One bulk TCP download: a wired server behind the infrastructure pushes an
// unbounded file to a Wi-Fi station. The server runs New Reno (slow start,
// congestion avoidance, fast retransmit/recovery with partial-ACK
// retransmission, RTO with exponential backoff); the receiver acks every
// segment cumulatively. Loss happens only in the WLAN (queue drops or retry
// exhaustion); the wired segment adds fixed latency and no loss.
class TcpFlow {
 public:
  struct Hooks {
    // Wired arrival at the infrastructure edge: enqueue on the station's
    // current AP (downlink data).
    std::function<void(Mpdu)> deliver_data_to_ap;
    // Receiver side: enqueue an ACK on the station's uplink queue.
    std::function<void(Mpdu)> enqueue_ack_at_sta;
  };

  TcpFlow(int data_flow, int ack_flow, int sta_device, TcpParams params, EventQueue& engine,
          Hooks hooks);

  void start();

  // MAC delivery callbacks.
  void on_segment_delivered(std::uint64_t seq);  // data at the station
  void on_ack_reaches_ap(std::uint64_t ack);     // ack decoded at the AP

  std::uint64_t unique_segments_delivered() const { return unique_delivered_; }
  double cwnd() const { return cwnd_; }

 private:
  void server_on_ack(std::uint64_t ack);
  void send_new_segments();
  void transmit_segment(std::uint64_t seq, bool retransmission);
  void arm_rto();
  void on_rto();
  void update_rtt(SimTime sample);

  int data_flow_;
  int ack_flow_;
  int sta_device_;
  TcpParams params_;
  EventQueue& engine_;
  Hooks hooks_;

  // Sender.
  double cwnd_;
  double ssthresh_;
  std::uint64_t send_next_ = 0;   // next sequence to (re)transmit
  std::uint64_t high_water_ = 0;  // highest sequence ever sent + 1
  std::uint64_t snd_una_ = 0;
  int dup_acks_ = 0;
  bool in_recovery_ = false;
  std::uint64_t recovery_point_ = 0;
  std::map<std::uint64_t, SimTime> send_time_;
  std::set<std::uint64_t> retransmitted_;
  std::uint64_t flight_ = 0;

  // RTO state (RFC 6298 smoothing).
  bool have_rtt_ = false;
  double srtt_ns_ = 0.0;
  double rttvar_ns_ = 0.0;
  SimTime rto_;
  EventHandle rto_event_;

  // Receiver.
  std::uint64_t rcv_next_ = 0;
  std::set<std::uint64_t> out_of_order_;
  std::uint64_t unique_delivered_ = 0;
};

}  // namespace wlansim
