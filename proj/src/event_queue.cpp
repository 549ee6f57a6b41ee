#include "wlansim/event_queue.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace wlansim {

EventHandle EventQueue::schedule(SimTime at, Action action) {
  if (at < now_) {
    throw std::logic_error("event scheduled in the past: t=" + std::to_string(at) +
                           " ns, clock=" + std::to_string(now_) + " ns");
  }
  const std::uint64_t id = next_seq_++;
  heap_.push(Entry{at, id});
  actions_.emplace(id, std::move(action));
  return EventHandle{id};
}

void EventQueue::run_until(SimTime end) {
  while (!heap_.empty() && heap_.top().at <= end) {
    const Entry entry = heap_.top();
    heap_.pop();
    auto it = actions_.find(entry.seq);
    if (it == actions_.end()) continue;  // cancelled
    Action action = std::move(it->second);
    actions_.erase(it);
    now_ = entry.at;
    ++dispatched_;
    action();
  }
  now_ = end;
}

}  // namespace wlansim
