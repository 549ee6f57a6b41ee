#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "wlansim/mac_frames.hpp"
#include "wlansim/sim_time.hpp"

namespace wlansim {

// Adaptation methods for the per-AP maximum A-MPDU size.
//
// Every period the controller compares the worst real-time delay observed at
// the AP against the delay budget and moves the limit down (delay above
// budget) or up (below). The methods differ in how aggressively they move:
//
//   Method1  linear down / linear up, fixed step (default 3000 bytes)
//   Method2  geometric down / up (default factors 0.618 / 1.618)
//   Method3  drastic down to the minimum / linear up (default 6000 bytes)
//   Method4  linear down (default 6000 bytes) / drastic up to the maximum
//
// Baselines: Disable switches aggregation off while any real-time station is
// associated (event-driven, not periodic); AlwaysOn and NoAggregation pin
// the limit at the range extremes.
struct Method1 {
  int step_bytes = 3'000;
};
struct Method2 {
  double down_factor = 0.618;
  double up_factor = 1.618;
};
struct Method3 {
  int up_step_bytes = 6'000;
};
struct Method4 {
  int down_step_bytes = 6'000;
};
struct Disable {};
struct AlwaysOn {};
struct NoAggregation {};

using TuningPolicy =
    std::variant<Method1, Method2, Method3, Method4, Disable, AlwaysOn, NoAggregation>;

std::string policy_name(const TuningPolicy& policy);
bool policy_is_periodic(const TuningPolicy& policy);  // the four tuning methods
void validate_policy(const TuningPolicy& policy);     // throws on bad parameters

enum class PeriodDecision { kAbove, kBelow };

inline const char* decision_name(PeriodDecision d) {
  return d == PeriodDecision::kAbove ? "above" : "below";
}

// Real-time delay samples observed at one AP during the current monitoring
// period. Only the worst sample drives the control decision.
struct DelayWindow {
  SimTime max_delay = 0;
  std::uint64_t samples = 0;

  void add(SimTime delay) {
    if (samples == 0 || delay > max_delay) max_delay = delay;
    ++samples;
  }
  void clear() { *this = {}; }
};

// Above iff the worst delay strictly exceeds the budget. An empty window
// counts as Below so an idle AP drifts back to maximum aggregation.
PeriodDecision classify_period(const DelayWindow& window, SimTime budget);

// Applies one control step. Results are clamped to [1600, 65535]; Method2
// rounds half-up to integer bytes before clamping.
int adjust_limit(const TuningPolicy& policy, int current_bytes, PeriodDecision decision);

// Limit for each policy before any monitoring period has elapsed.
int initial_limit(const TuningPolicy& policy, bool realtime_occupied);

// The Disable baseline: no aggregation while >= 1 real-time station is
// associated, full aggregation otherwise.
int disable_limit(bool realtime_occupied);

struct ControllerTraceEntry {
  SimTime time = 0;
  int ap = 0;
  PeriodDecision decision = PeriodDecision::kBelow;
  SimTime max_delay = 0;
  int limit_bytes = 0;
};

// Per-AP controller state: collects delay samples, applies the policy every
// monitoring period, and keeps an append-only trace of its decisions.
class ApController {
 public:
  ApController() = default;
  ApController(int ap, TuningPolicy policy, SimTime budget, bool realtime_occupied)
      : ap_(ap),
        policy_(std::move(policy)),
        budget_(budget),
        limit_(initial_limit(policy_, realtime_occupied)) {}

  int limit_bytes() const { return limit_; }
  const TuningPolicy& policy() const { return policy_; }
  const std::vector<ControllerTraceEntry>& trace() const { return trace_; }

  void observe_delay(SimTime delay) { window_.add(delay); }

  // Periodic adjustment; fires every monitoring period for every policy
  // (fixed policies just log their constant limit).
  void on_period_tick(SimTime now);

  // Event-driven hook for the Disable baseline; other policies ignore it.
  void on_occupancy_change(bool realtime_occupied);

 private:
  int ap_ = 0;
  TuningPolicy policy_ = AlwaysOn{};
  SimTime budget_ = 0;
  int limit_ = kMaxAmpduBytes;
  DelayWindow window_;
  std::vector<ControllerTraceEntry> trace_;
};

}  // namespace wlansim
