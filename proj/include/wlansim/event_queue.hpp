#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "wlansim/sim_time.hpp"

namespace wlansim {

struct EventHandle {
  std::uint64_t id = 0;
  bool valid() const { return id != 0; }
};

// Time-ordered event queue with a FIFO tie rule: events scheduled for the
// same instant dispatch in scheduling order. Cancellation is lazy (the heap
// entry stays, the action is discarded).
class EventQueue {
 public:
  using Action = std::function<void()>;

  SimTime now() const { return now_; }
  std::uint64_t dispatched() const { return dispatched_; }
  bool empty() const { return actions_.empty(); }

  // Scheduling in the past is a programming error; throws std::logic_error.
  EventHandle schedule(SimTime at, Action action);

  void cancel(EventHandle handle) { actions_.erase(handle.id); }

  // Dispatches every event with fire_at <= end, then advances the clock to
  // end. Events scheduled while running are dispatched too if they fall
  // within the horizon.
  void run_until(SimTime end);

 private:
  struct Entry {
    SimTime at;
    std::uint64_t seq;
    bool operator>(const Entry& other) const {
      if (at != other.at) return at > other.at;
      return seq > other.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  std::unordered_map<std::uint64_t, Action> actions_;
  SimTime now_ = 0;
  std::uint64_t next_seq_ = 1;
  std::uint64_t dispatched_ = 0;
};

}  // namespace wlansim
