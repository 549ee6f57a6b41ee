#include "wlansim/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wlansim {

namespace {

int clamp_limit(long long bytes) {
  return static_cast<int>(std::clamp<long long>(bytes, kMinAmpduBytes, kMaxAmpduBytes));
}

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

}  // namespace

std::string policy_name(const TuningPolicy& policy) {
  struct Visitor {
    std::string operator()(const Method1&) const { return "method1"; }
    std::string operator()(const Method2&) const { return "method2"; }
    std::string operator()(const Method3&) const { return "method3"; }
    std::string operator()(const Method4&) const { return "method4"; }
    std::string operator()(const Disable&) const { return "disable"; }
    std::string operator()(const AlwaysOn&) const { return "always_on"; }
    std::string operator()(const NoAggregation&) const { return "no_aggregation"; }
  };
  return std::visit(Visitor{}, policy);
}

bool policy_is_periodic(const TuningPolicy& policy) {
  return std::holds_alternative<Method1>(policy) || std::holds_alternative<Method2>(policy) ||
         std::holds_alternative<Method3>(policy) || std::holds_alternative<Method4>(policy);
}

void validate_policy(const TuningPolicy& policy) {
  if (const auto* m1 = std::get_if<Method1>(&policy)) {
    if (m1->step_bytes <= 0) throw std::invalid_argument("method1 step must be positive");
  } else if (const auto* m2 = std::get_if<Method2>(&policy)) {
    if (!(m2->down_factor > 0.0 && m2->down_factor < 1.0))
      throw std::invalid_argument("method2 down factor must be in (0, 1)");
    if (!(m2->up_factor > 1.0))
      throw std::invalid_argument("method2 up factor must be greater than 1");
  } else if (const auto* m3 = std::get_if<Method3>(&policy)) {
    if (m3->up_step_bytes <= 0) throw std::invalid_argument("method3 step must be positive");
  } else if (const auto* m4 = std::get_if<Method4>(&policy)) {
    if (m4->down_step_bytes <= 0) throw std::invalid_argument("method4 step must be positive");
  }
}

PeriodDecision classify_period(const DelayWindow& window, SimTime budget) {
  if (window.samples == 0) return PeriodDecision::kBelow;
  // Delay exactly equal to the budget counts as Below.
  return window.max_delay > budget ? PeriodDecision::kAbove : PeriodDecision::kBelow;
}

int adjust_limit(const TuningPolicy& policy, int current_bytes, PeriodDecision decision) {
  const bool above = decision == PeriodDecision::kAbove;
  struct Visitor {
    int current;
    bool above;

    long long operator()(const Method1& m) const {
      return above ? current - static_cast<long long>(m.step_bytes)
                   : current + static_cast<long long>(m.step_bytes);
    }
    long long operator()(const Method2& m) const {
      return round_half_up(current * (above ? m.down_factor : m.up_factor));
    }
    long long operator()(const Method3& m) const {
      return above ? kMinAmpduBytes : current + static_cast<long long>(m.up_step_bytes);
    }
    long long operator()(const Method4& m) const {
      return above ? current - static_cast<long long>(m.down_step_bytes) : kMaxAmpduBytes;
    }
    long long operator()(const Disable&) const { return current; }
    long long operator()(const AlwaysOn&) const { return kMaxAmpduBytes; }
    long long operator()(const NoAggregation&) const { return kMinAmpduBytes; }
  };
  return clamp_limit(std::visit(Visitor{current_bytes, above}, policy));
}

int disable_limit(bool realtime_occupied) {
  return realtime_occupied ? kMinAmpduBytes : kMaxAmpduBytes;
}

int initial_limit(const TuningPolicy& policy, bool realtime_occupied) {
  // Every tuning method starts from the maximum A-MPDU value.
  if (std::holds_alternative<NoAggregation>(policy)) return kMinAmpduBytes;
  if (std::holds_alternative<Disable>(policy)) return disable_limit(realtime_occupied);
  return kMaxAmpduBytes;
}

void ApController::on_period_tick(SimTime now) {
  const PeriodDecision decision = classify_period(window_, budget_);
  limit_ = adjust_limit(policy_, limit_, decision);
  trace_.push_back({now, ap_, decision, window_.samples ? window_.max_delay : 0, limit_});
  window_.clear();
}

void ApController::on_occupancy_change(bool realtime_occupied) {
  if (std::holds_alternative<Disable>(policy_)) {
    limit_ = disable_limit(realtime_occupied);
  }
}

}  // namespace wlansim
