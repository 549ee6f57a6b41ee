#include "wlansim/mac_frames.hpp"

#include <algorithm>

namespace wlansim {

bool AcQueue::push_tail(Mpdu frame) {
  if (frames_.size() >= capacity_) {
    ++tail_drops_;
    return false;
  }
  frames_.push_back(std::move(frame));
  return true;
}

Ampdu build_ampdu(AcQueue& queue, int limit_bytes, int destination) {
  Ampdu ampdu;
  ampdu.destination = destination;
  auto& frames = queue.frames();
  for (auto it = frames.begin(); it != frames.end();) {
    if (it->destination != destination) {
      ++it;
      continue;
    }
    const int cost = subframe_bytes(it->mpdu_bytes());
    const bool first = ampdu.subframes.empty();
    if (!first && (ampdu.total_bytes + cost > limit_bytes ||
                   ampdu.subframes.size() >= kMaxSubframes)) {
      break;
    }
    ampdu.total_bytes += cost;
    ampdu.subframes.push_back(std::move(*it));
    it = frames.erase(it);
  }
  return ampdu;
}

void requeue_front(AcQueue& queue, Ampdu&& ampdu) {
  for (auto it = ampdu.subframes.rbegin(); it != ampdu.subframes.rend(); ++it) {
    queue.push_head(std::move(*it));
  }
  ampdu.subframes.clear();
}

}  // namespace wlansim
