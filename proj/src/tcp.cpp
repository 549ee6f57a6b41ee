#include "wlansim/tcp.hpp"

#include <algorithm>
#include <cmath>

namespace wlansim {

TcpFlow::TcpFlow(int data_flow, int ack_flow, int sta_device, TcpParams params,
                 EventQueue& engine, Hooks hooks)
    : data_flow_(data_flow),
      ack_flow_(ack_flow),
      sta_device_(sta_device),
      params_(params),
      engine_(engine),
      hooks_(std::move(hooks)),
      cwnd_(params.initial_cwnd),
      ssthresh_(params.initial_ssthresh),
      rto_(params.rto_initial) {}

void TcpFlow::start() { send_new_segments(); }

void TcpFlow::send_new_segments() {
  // Keep at most cwnd segments in flight (fractional cwnd truncates).
  while (static_cast<double>(flight_) + 1.0 <= cwnd_ + 1e-9) {
    const std::uint64_t seq = send_next_++;
    transmit_segment(seq, seq < high_water_);
    ++flight_;
  }
}

void TcpFlow::transmit_segment(std::uint64_t seq, bool retransmission) {
  const SimTime now = engine_.now();
  if (retransmission) retransmitted_.insert(seq);
  send_time_[seq] = now;
  high_water_ = std::max(high_water_, seq + 1);

  Mpdu segment;
  segment.flow = data_flow_;
  segment.app_seq = seq;
  segment.payload_bytes = params_.packet_bytes;
  segment.ac = AccessCategory::kBestEffort;
  // Destination is resolved at wired arrival: the packet goes to whichever
  // AP the station is associated with by then.
  engine_.schedule(now + params_.wired_latency,
                   [this, segment] { hooks_.deliver_data_to_ap(segment); });
  if (!rto_event_.valid()) arm_rto();
}

void TcpFlow::on_segment_delivered(std::uint64_t seq) {
  if (seq == rcv_next_) {
    ++rcv_next_;
    ++unique_delivered_;
    while (!out_of_order_.empty() && *out_of_order_.begin() == rcv_next_) {
      out_of_order_.erase(out_of_order_.begin());
      ++rcv_next_;
    }
  } else if (seq > rcv_next_) {
    if (out_of_order_.insert(seq).second) ++unique_delivered_;
  }
  // Cumulative ACK for every received segment (no delayed ACK).
  Mpdu ack;
  ack.flow = ack_flow_;
  ack.app_seq = rcv_next_;
  ack.payload_bytes = params_.ack_bytes;
  ack.ac = AccessCategory::kBestEffort;
  hooks_.enqueue_ack_at_sta(ack);
}

void TcpFlow::on_ack_reaches_ap(std::uint64_t ack) {
  engine_.schedule(engine_.now() + params_.wired_latency, [this, ack] { server_on_ack(ack); });
}

void TcpFlow::update_rtt(SimTime sample) {
  const double r = static_cast<double>(sample);
  if (!have_rtt_) {
    srtt_ns_ = r;
    rttvar_ns_ = r / 2.0;
    have_rtt_ = true;
  } else {
    rttvar_ns_ = 0.75 * rttvar_ns_ + 0.25 * std::abs(srtt_ns_ - r);
    srtt_ns_ = 0.875 * srtt_ns_ + 0.125 * r;
  }
  const auto rto = static_cast<SimTime>(srtt_ns_ + 4.0 * rttvar_ns_);
  rto_ = std::clamp(rto, params_.rto_min, params_.rto_max);
}

void TcpFlow::server_on_ack(std::uint64_t ack) {
  const SimTime now = engine_.now();
  if (ack > snd_una_) {
    const std::uint64_t newly_acked = ack - snd_una_;

    // RTT sample from the newest acked segment that was never retransmitted
    // (Karn's rule).
    SimTime sample = -1;
    for (auto it = send_time_.begin(); it != send_time_.end() && it->first < ack;) {
      if (!retransmitted_.count(it->first)) sample = now - it->second;
      retransmitted_.erase(it->first);
      it = send_time_.erase(it);
    }
    if (sample >= 0) update_rtt(sample);

    flight_ -= std::min<std::uint64_t>(newly_acked, flight_);
    snd_una_ = ack;
    send_next_ = std::max(send_next_, ack);

    if (in_recovery_) {
      if (ack >= recovery_point_) {
        // Full ACK: leave recovery with the deflated window.
        cwnd_ = ssthresh_;
        in_recovery_ = false;
        dup_acks_ = 0;
      } else {
        // Partial ACK: the next hole is lost too, retransmit it at once.
        transmit_segment(snd_una_, true);
        cwnd_ = std::max(ssthresh_, cwnd_ - static_cast<double>(newly_acked) + 1.0);
      }
    } else {
      dup_acks_ = 0;
      cwnd_ = cwnd_after_ack(cwnd_, ssthresh_);
    }
    arm_rto();
    send_new_segments();
    return;
  }

  if (flight_ == 0) return;
  // Duplicate ACK.
  if (in_recovery_) {
    cwnd_ += 1.0;  // window inflation
    send_new_segments();
    return;
  }
  if (++dup_acks_ == 3) {
    const WindowCut cut = fast_retransmit_cut(cwnd_);
    ssthresh_ = cut.ssthresh;
    cwnd_ = cut.cwnd;
    in_recovery_ = true;
    recovery_point_ = high_water_;
    transmit_segment(snd_una_, true);
  }
}

void TcpFlow::arm_rto() {
  if (rto_event_.valid()) {
    engine_.cancel(rto_event_);
    rto_event_ = {};
  }
  if (flight_ == 0) return;
  rto_event_ = engine_.schedule(engine_.now() + rto_, [this] { on_rto(); });
}

void TcpFlow::on_rto() {
  rto_event_ = {};
  const WindowCut cut = timeout_cut(cwnd_);
  ssthresh_ = cut.ssthresh;
  cwnd_ = cut.cwnd;
  dup_acks_ = 0;
  in_recovery_ = false;
  rto_ = backed_off_rto(rto_, params_.rto_max);
  // Everything outstanding is presumed lost: slow-start again from the
  // earliest hole.
  flight_ = 0;
  send_next_ = snd_una_;
  send_new_segments();
  arm_rto();
}

}  // namespace wlansim
