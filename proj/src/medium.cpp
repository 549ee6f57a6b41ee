#include "wlansim/medium.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace wlansim {

Medium::Medium(int ap_device, double frequency_hz, EventQueue& engine, RngStream& backoff_rng,
               RngStream& error_rng, Params params, MediumHooks hooks)
    : ap_device_(ap_device),
      frequency_hz_(frequency_hz),
      engine_(engine),
      backoff_rng_(backoff_rng),
      error_rng_(error_rng),
      params_(std::move(params)),
      hooks_(std::move(hooks)),
      rts_dur_(legacy_tx_duration(kRtsBytes)),
      cts_dur_(legacy_tx_duration(kCtsBytes)),
      back_dur_(legacy_tx_duration(kBlockAckBytes)),
      cts_timeout_(params_.edca.sifs + cts_dur_ + params_.edca.slot) {
  if (!params_.mcs) throw std::invalid_argument("medium requires an MCS table");
}

void Medium::attach(Edcaf* e) {
  e->medium = this;
  e->pending = false;
  e->cw = params_.edca.of(e->ac).cw_min;
  contenders_.push_back(e);
  if (!e->queue.empty() && !e->in_flight) arm(e);
  reschedule_access();
}

void Medium::detach(Edcaf* e) {
  contenders_.erase(std::remove(contenders_.begin(), contenders_.end(), e), contenders_.end());
  e->medium = nullptr;
  e->pending = false;
  reschedule_access();
}

void Medium::on_enqueue(Edcaf* e) {
  if (e->pending || e->in_flight) return;
  arm(e);
  reschedule_access();
}

void Medium::on_queue_changed(Edcaf* e) {
  if (e->pending && e->queue.empty()) {
    e->pending = false;
    reschedule_access();
  } else if (!e->pending && !e->in_flight && !e->queue.empty()) {
    arm(e);
    reschedule_access();
  }
}

void Medium::arm(Edcaf* e) {
  e->pending = true;
  e->arm_time = engine_.now();
  redraw_backoff(e);
}

void Medium::redraw_backoff(Edcaf* e) {
  e->backoff_slots = static_cast<int>(backoff_rng_.uniform_int(0, e->cw));
}

void Medium::bump_cw(Edcaf* e) { e->cw = next_cw(params_.edca.of(e->ac), e->cw); }

SimTime Medium::effective_origin(const Edcaf* e) const {
  // AIFS counts from the later of the arm instant and the last busy end.
  return std::max(e->arm_time, busy_until_);
}

SimTime Medium::access_time(const Edcaf* e) const {
  return effective_origin(e) + contention_delay(params_.edca, e->ac, e->backoff_slots);
}

void Medium::reschedule_access() {
  ++access_epoch_;
  SimTime earliest = -1;
  for (const Edcaf* e : contenders_) {
    if (!e->pending) continue;
    const SimTime t = access_time(e);
    if (earliest < 0 || t < earliest) earliest = t;
  }
  if (earliest < 0) return;
  const std::uint64_t epoch = access_epoch_;
  engine_.schedule(earliest, [this, epoch] { on_access(epoch); });
}

void Medium::on_access(std::uint64_t epoch) {
  if (epoch != access_epoch_) return;  // superseded
  const SimTime now = engine_.now();

  // Winners transmit; everyone else freezes, keeping the idle slots already
  // counted down in this idle period.
  std::vector<Edcaf*> winners;
  for (Edcaf* e : contenders_) {
    if (!e->pending) continue;
    if (access_time(e) == now) {
      winners.push_back(e);
    } else {
      const SimTime elapsed = now - effective_origin(e) - params_.edca.aifs(e->ac);
      if (elapsed > 0) {
        const int consumed =
            static_cast<int>(std::min<SimTime>(elapsed / params_.edca.slot, e->backoff_slots));
        e->backoff_slots -= consumed;
        // Anchor the remaining count at this instant so it is not re-counted.
        e->arm_time = now - params_.edca.aifs(e->ac);
      }
    }
  }
  if (winners.empty()) return;

  // Internal virtual collision: when both ACs of one device expire in the
  // same slot the high-priority AC represents the device, the other doubles.
  std::vector<Edcaf*> reps;
  for (Edcaf* e : winners) {
    auto it = std::find_if(reps.begin(), reps.end(),
                           [&](Edcaf* r) { return r->device == e->device; });
    if (it == reps.end()) {
      reps.push_back(e);
    } else if (static_cast<int>(e->ac) < static_cast<int>((*it)->ac)) {
      bump_cw(*it);
      redraw_backoff(*it);
      *it = e;
    } else {
      bump_cw(e);
      redraw_backoff(e);
    }
  }

  if (reps.size() == 1) {
    start_exchange(reps.front());
    return;
  }

  // Slotted collision: simultaneous RTS frames, nothing decodable. All
  // parties double their windows and redraw; the medium is lost for an RTS
  // plus the CTS timeout.
  for (Edcaf* e : reps) {
    bump_cw(e);
    redraw_backoff(e);
  }
  const SimTime start = now;
  begin_busy(rts_dur_ + cts_timeout_);
  if (hooks_.on_exchange) {
    ExchangeRecord rec;
    rec.start = start;
    rec.end = busy_until_;
    rec.ap = ap_device_;
    rec.kind = ExchangeRecord::Kind::kCollision;
    hooks_.on_exchange(rec);
  }
}

void Medium::start_exchange(Edcaf* e) {
  const SimTime now = engine_.now();
  const int destination = e->queue.front().destination;
  const LinkEval link = hooks_.evaluate_link(e->device, destination);

  if (!link.up) {
    // SNR below the lowest MCS threshold: defer until the link recovers.
    // No contention-window penalty; the station re-enters contention later.
    e->pending = false;
    Edcaf* edcaf = e;
    Medium* self = this;
    engine_.schedule(now + params_.linkdown_recheck, [self, edcaf] {
      if (edcaf->medium == self && !edcaf->pending && !edcaf->in_flight &&
          !edcaf->queue.empty()) {
        self->on_enqueue(edcaf);
      }
    });
    reschedule_access();
    return;
  }

  const int limit = hooks_.ampdu_limit(e->device, e->ac);
  Ampdu ampdu = build_ampdu(e->queue, limit, destination);

  const double p_rts = mpdu_error_prob(link.snr_db, params_.mcs->at(0), kRtsBytes, params_.ber);
  if (error_rng_.uniform_double() < p_rts) {
    // RTS lost: whole exchange fails, frames were never on the air.
    requeue_front(e->queue, std::move(ampdu));
    bump_cw(e);
    arm(e);
    const SimTime start = now;
    begin_busy(rts_dur_ + cts_timeout_);
    if (hooks_.on_exchange) {
      ExchangeRecord rec;
      rec.start = start;
      rec.end = busy_until_;
      rec.ap = ap_device_;
      rec.tx_device = e->device;
      rec.rx_device = destination;
      rec.ac = e->ac;
      rec.kind = ExchangeRecord::Kind::kRtsFailed;
      hooks_.on_exchange(rec);
    }
    return;
  }

  // RTS / SIFS / CTS / SIFS / data / SIFS / block-ack
  const SimTime sifs = params_.edca.sifs;
  const SimTime data_dur = vht_tx_duration(ampdu.total_bytes, *link.mcs);
  const SimTime data_end = now + rts_dur_ + sifs + cts_dur_ + sifs + data_dur;
  const SimTime busy_end = data_end + sifs + back_dur_;

  std::vector<bool> failed(ampdu.subframes.size());
  for (size_t i = 0; i < ampdu.subframes.size(); ++i) {
    const double p =
        mpdu_error_prob(link.snr_db, *link.mcs, ampdu.subframes[i].mpdu_bytes(), params_.ber);
    failed[i] = error_rng_.uniform_double() < p;
  }

  e->pending = false;
  e->in_flight = true;
  pending_ = PendingExchange{e, std::move(ampdu), std::move(failed), now, data_end,
                             link.mcs->index};
  begin_busy(busy_end - now);
  engine_.schedule(busy_end, [this] { complete_exchange(); });
}

void Medium::complete_exchange() {
  PendingExchange ex = std::move(*pending_);
  pending_.reset();
  Edcaf* e = ex.e;
  Ampdu& ampdu = ex.ampdu;
  const std::vector<bool>& failed = ex.failed;
  const SimTime start = ex.start;
  const SimTime data_end = ex.data_end;
  const int mcs_index = ex.mcs_index;
  e->in_flight = false;

  ExchangeRecord rec;
  rec.start = start;
  rec.end = engine_.now();
  rec.ap = ap_device_;
  rec.tx_device = e->device;
  rec.rx_device = ampdu.destination;
  rec.ac = e->ac;
  rec.kind = ExchangeRecord::Kind::kData;
  rec.subframes = static_cast<int>(ampdu.subframes.size());
  rec.total_bytes = ampdu.total_bytes;
  rec.mcs_index = mcs_index;

  std::vector<Mpdu> requeue;
  for (size_t i = 0; i < ampdu.subframes.size(); ++i) {
    Mpdu& frame = ampdu.subframes[i];
    if (!failed[i]) {
      ++rec.delivered;
      hooks_.on_delivered(frame, e->device, ampdu.destination, data_end);
    } else if (frame.retries + 1 > params_.retry_limit) {
      hooks_.on_dropped(frame, DropReason::kRetryLimit);
    } else {
      ++frame.retries;
      requeue.push_back(std::move(frame));
    }
  }
  // Failed subframes return to the queue head in their original order.
  for (auto it = requeue.rbegin(); it != requeue.rend(); ++it) {
    e->queue.push_head(std::move(*it));
  }

  if (hooks_.on_exchange) hooks_.on_exchange(rec);

  // Block ack received: the exchange counts as a success for contention.
  e->cw = params_.edca.of(e->ac).cw_min;
  if (e->medium == this) {
    if (!e->queue.empty()) arm(e);
    reschedule_access();
  } else if (e->medium && !e->queue.empty()) {
    // Handed over mid-exchange; contend on the new medium.
    e->medium->on_enqueue(e);
  }
}

void Medium::begin_busy(SimTime duration) {
  busy_until_ = engine_.now() + duration;
  busy_ns_ += duration;
  ++access_epoch_;  // invalidate any scheduled access
  Medium* self = this;
  const std::uint64_t epoch = access_epoch_;
  engine_.schedule(busy_until_, [self, epoch] {
    if (epoch == self->access_epoch_) self->reschedule_access();
  });
}

}  // namespace wlansim
