#pragma once

#include <cstdint>

namespace wlansim {

// Named random streams, one per stochastic subsystem. Keeping the streams
// separate means e.g. a change in the traffic model cannot perturb the
// mobility draws, so experiments that differ only in policy share identical
// walks for equal seeds.
enum class StreamId : std::uint64_t {
  kMobility = 0,
  kBackoff = 1,
  kChannelError = 2,
  kTrafficOffsets = 3,
};

// xoshiro256++ with a splitmix64-expanded (seed, stream_id) state.
// Hand-rolled draws (no std::*_distribution) so sequences are identical on
// every standard library implementation.
class RngStream {
 public:
  RngStream() : RngStream(0, StreamId::kMobility) {}

  RngStream(std::uint64_t seed, StreamId stream) {
    // Distinct stream ids land in unrelated splitmix trajectories.
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(stream) + 1));
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const auto wide = static_cast<unsigned __int128>(next_u64()) * range;
    return lo + static_cast<std::int64_t>(wide >> 64);
  }

  // Uniform double in [0, 1) with 53-bit resolution.
  double uniform_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
};

}  // namespace wlansim
