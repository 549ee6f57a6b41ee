#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "wlansim/event_queue.hpp"
#include "wlansim/mac_frames.hpp"
#include "wlansim/phy.hpp"
#include "wlansim/rng.hpp"

namespace wlansim {

class Medium;

// One EDCA function: the (device, access category) pair that contends for
// the medium. Owns its transmit queue and backoff state.
struct Edcaf {
  int device = -1;
  AccessCategory ac = AccessCategory::kBestEffort;
  AcQueue queue;
  int cw = 0;
  int backoff_slots = 0;
  SimTime arm_time = 0;        // AIFS countdown reference for mid-idle arms
  bool pending = false;        // armed in contention
  bool in_flight = false;      // frames currently on the air
  Medium* medium = nullptr;    // current BSS attachment
};

struct LinkEval {
  bool up = false;
  double snr_db = 0.0;
  const McsEntry* mcs = nullptr;
};

enum class DropReason { kQueueFull, kRetryLimit };

struct ExchangeRecord {
  enum class Kind { kData, kRtsFailed, kCollision };
  SimTime start = 0;
  SimTime end = 0;
  int ap = -1;
  int tx_device = -1;
  int rx_device = -1;
  AccessCategory ac = AccessCategory::kBestEffort;
  Kind kind = Kind::kData;
  int subframes = 0;
  int total_bytes = 0;
  int delivered = 0;
  int mcs_index = -1;
};

struct MediumHooks {
  // Link evaluated lazily from current positions at each transmission attempt.
  std::function<LinkEval(int tx_device, int rx_device)> evaluate_link;
  // Current A-MPDU cap for this transmitter (the controller's actuator).
  std::function<int(int tx_device, AccessCategory ac)> ampdu_limit;
  std::function<void(const Mpdu&, int tx_device, int rx_device, SimTime deliver_time)>
      on_delivered;
  std::function<void(const Mpdu&, DropReason)> on_dropped;
  std::function<void(const ExchangeRecord&)> on_exchange;  // optional trace
};

// One BSS: an AP and its associated stations on a dedicated 20 MHz channel.
// Implements slotted EDCA contention (AIFS + binary exponential backoff with
// freeze/resume), RTS/CTS + A-MPDU + block-ack exchanges, per-MPDU error
// draws and head-of-line retransmission.
//
// Collision model: stations whose backoff expires in the same slot all lose
// (RTS collision), double their contention window and redraw. When both ACs
// of one device expire together the higher-priority AC transmits and the
// loser doubles (internal virtual collision).
class Medium {
 public:
  struct Params {
    EdcaParams edca;
    BerModel ber;
    const McsTable* mcs = nullptr;
    int retry_limit = 7;
    SimTime linkdown_recheck = milliseconds(100);
  };

  Medium(int ap_device, double frequency_hz, EventQueue& engine, RngStream& backoff_rng,
         RngStream& error_rng, Params params, MediumHooks hooks);

  void attach(Edcaf* e);
  void detach(Edcaf* e);

  // Must be called after pushing frames into an attached edcaf's queue.
  void on_enqueue(Edcaf* e);

  // Re-syncs contention state after external queue edits (handover flush).
  void on_queue_changed(Edcaf* e);

  int ap_device() const { return ap_device_; }
  double frequency_hz() const { return frequency_hz_; }
  SimTime busy_time() const { return busy_ns_; }

  // Frames on the air right now (at most one exchange per channel); used for
  // end-of-run conservation accounting.
  const Ampdu* in_flight_ampdu() const {
    return pending_ ? &pending_->ampdu : nullptr;
  }

 private:
  struct PendingExchange {
    Edcaf* e = nullptr;
    Ampdu ampdu;
    std::vector<bool> failed;
    SimTime start = 0;
    SimTime data_end = 0;
    int mcs_index = -1;
  };

  SimTime effective_origin(const Edcaf* e) const;
  SimTime access_time(const Edcaf* e) const;
  void arm(Edcaf* e);
  void reschedule_access();
  void on_access(std::uint64_t epoch);
  void start_exchange(Edcaf* e);
  void complete_exchange();
  void begin_busy(SimTime duration);
  void bump_cw(Edcaf* e);
  void redraw_backoff(Edcaf* e);

  std::optional<PendingExchange> pending_;

  int ap_device_;
  double frequency_hz_;
  EventQueue& engine_;
  RngStream& backoff_rng_;
  RngStream& error_rng_;
  Params params_;
  MediumHooks hooks_;

  std::vector<Edcaf*> contenders_;
  SimTime busy_until_ = 0;
  SimTime busy_ns_ = 0;
  std::uint64_t access_epoch_ = 0;

  SimTime rts_dur_;
  SimTime cts_dur_;
  SimTime back_dur_;
  SimTime cts_timeout_;
};

}  // namespace wlansim
