#pragma once

#include <cstdint>

namespace wlansim {

// Virtual time in integer nanoseconds since simulation start. Integer ticks
// keep event tie-breaking exact and runs bit-reproducible across platforms.
using SimTime = std::int64_t;

constexpr SimTime kNanosecond = 1;
constexpr SimTime kMicrosecond = 1'000;
constexpr SimTime kMillisecond = 1'000'000;
constexpr SimTime kSecond = 1'000'000'000;

constexpr SimTime microseconds(std::int64_t us) { return us * kMicrosecond; }
constexpr SimTime milliseconds(std::int64_t ms) { return ms * kMillisecond; }
constexpr SimTime seconds(std::int64_t s) { return s * kSecond; }

constexpr double to_seconds(SimTime t) { return static_cast<double>(t) / 1e9; }
constexpr double to_millis(SimTime t) { return static_cast<double>(t) / 1e6; }

}  // namespace wlansim
