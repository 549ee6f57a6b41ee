#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <vector>

#include "wlansim/sim_time.hpp"

namespace wlansim {

enum class AccessCategory { kVoice = 0, kBestEffort = 1 };

inline const char* ac_name(AccessCategory ac) {
  return ac == AccessCategory::kVoice ? "VO" : "BE";
}

constexpr int kMacHeaderBytes = 34;     // MAC header + FCS
constexpr int kMpduDelimiterBytes = 4;  // A-MPDU subframe delimiter
constexpr int kMaxSubframes = 64;

constexpr int kMinAmpduBytes = 1'600;
constexpr int kMaxAmpduBytes = 65'535;

// Control frame sizes and rate (legacy OFDM 6 Mbit/s).
constexpr int kRtsBytes = 20;
constexpr int kCtsBytes = 14;
constexpr int kBlockAckBytes = 32;

struct Mpdu {
  int flow = -1;
  std::uint64_t app_seq = 0;  // segment / packet number within the flow
  int payload_bytes = 0;
  AccessCategory ac = AccessCategory::kBestEffort;
  int destination = -1;  // device id of the WLAN receiver
  SimTime enqueue_time = 0;
  int retries = 0;

  int mpdu_bytes() const { return payload_bytes + kMacHeaderBytes; }
};

// On-air cost of one subframe: delimiter + MPDU, padded to 4-byte alignment.
constexpr int subframe_bytes(int mpdu_bytes) {
  return (kMpduDelimiterBytes + mpdu_bytes + 3) / 4 * 4;
}

struct Ampdu {
  std::vector<Mpdu> subframes;
  int total_bytes = 0;
  int destination = -1;
};

struct EdcaAcParams {
  int aifsn = 3;
  int cw_min = 15;
  int cw_max = 1023;
};

struct EdcaParams {
  EdcaAcParams voice{2, 3, 7};
  EdcaAcParams best_effort{3, 15, 1023};
  SimTime slot = microseconds(9);
  SimTime sifs = microseconds(16);

  const EdcaAcParams& of(AccessCategory ac) const {
    return ac == AccessCategory::kVoice ? voice : best_effort;
  }
  SimTime aifs(AccessCategory ac) const { return sifs + of(ac).aifsn * slot; }
};

// Medium access offset for a drawn backoff: AIFS + backoff slots.
inline SimTime contention_delay(const EdcaParams& edca, AccessCategory ac, int backoff_slots) {
  return edca.aifs(ac) + static_cast<SimTime>(backoff_slots) * edca.slot;
}

// Binary exponential backoff: the window doubles on failure up to cw_max.
inline int next_cw(const EdcaAcParams& params, int cw) {
  return std::min(params.cw_max, 2 * cw + 1);
}

// Per-AC transmit queue. Frames for several destinations share the FIFO;
// capacity is enforced on tail pushes only. Head pushes are MAC
// retransmissions returning in-flight frames, which never drop.
class AcQueue {
 public:
  AcQueue() = default;
  AcQueue(AccessCategory ac, std::size_t capacity) : ac_(ac), capacity_(capacity) {}

  bool push_tail(Mpdu frame);  // false: queue full, frame dropped
  void push_head(Mpdu frame) { frames_.push_front(std::move(frame)); }

  bool empty() const { return frames_.empty(); }
  std::size_t size() const { return frames_.size(); }
  const Mpdu& front() const { return frames_.front(); }
  std::deque<Mpdu>& frames() { return frames_; }
  AccessCategory ac() const { return ac_; }
  std::uint64_t tail_drops() const { return tail_drops_; }

 private:
  AccessCategory ac_ = AccessCategory::kBestEffort;
  std::size_t capacity_ = 500;
  std::deque<Mpdu> frames_;
  std::uint64_t tail_drops_ = 0;
};

// Greedy FIFO packing of queued frames for `destination` until the next
// subframe would exceed limit_bytes or 64 subframes. A lone frame is never
// blocked: the head frame is always taken even if it alone exceeds the
// limit. Selected frames are removed from the queue.
Ampdu build_ampdu(AcQueue& queue, int limit_bytes, int destination);

// Restores extracted frames to the queue head in their original order
// (failed RTS: nothing was transmitted).
void requeue_front(AcQueue& queue, Ampdu&& ampdu);

}  // namespace wlansim
