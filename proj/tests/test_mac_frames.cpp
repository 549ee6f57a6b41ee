#include <vector>

#include "doctest.h"
#include "wlansim/mac_frames.hpp"
#include "wlansim/phy.hpp"

using namespace wlansim;

namespace {

Mpdu make_frame(int payload, int dest, int flow = 0, std::uint64_t seq = 0) {
  Mpdu m;
  m.flow = flow;
  m.app_seq = seq;
  m.payload_bytes = payload;
  m.destination = dest;
  return m;
}

// Brute-force packing oracle: the largest n such that n equal subframes fit.
int max_subframes_oracle(int mpdu_bytes, int limit) {
  const int cost = subframe_bytes(mpdu_bytes);
  int n = 1;  // a lone frame is never blocked
  while (n < kMaxSubframes && (n + 1) * cost <= limit) ++n;
  return n;
}

}  // namespace

TEST_CASE("subframe cost: delimiter plus MPDU, 4-byte aligned") {
  CHECK(subframe_bytes(1534) == 1540);  // 4 + 1534 = 1538 -> 1540
  CHECK(subframe_bytes(94) == 100);     // 4 + 94 = 98 -> 100
  CHECK(subframe_bytes(74) == 80);
  CHECK(subframe_bytes(96) == 100);
}

TEST_CASE("A-MPDU packing of full-size TCP segments") {
  AcQueue queue(AccessCategory::kBestEffort, 500);
  for (int i = 0; i < 50; ++i) queue.push_tail(make_frame(1500, 7, 0, i));

  SUBCASE("at the 65535 limit 42 segments fit") {
    Ampdu a = build_ampdu(queue, kMaxAmpduBytes, 7);
    CHECK(static_cast<int>(a.subframes.size()) == max_subframes_oracle(1534, kMaxAmpduBytes));
    CHECK(a.subframes.size() == 42);
    CHECK(a.total_bytes <= kMaxAmpduBytes);
    CHECK(queue.size() == 8);
    // FIFO order preserved.
    for (size_t i = 0; i < a.subframes.size(); ++i) CHECK(a.subframes[i].app_seq == i);
  }
  SUBCASE("at the 1600 limit exactly one segment goes out") {
    Ampdu a = build_ampdu(queue, kMinAmpduBytes, 7);
    CHECK(a.subframes.size() == 1);
    CHECK(static_cast<int>(a.subframes.size()) == max_subframes_oracle(1534, kMinAmpduBytes));
  }
}

TEST_CASE("a lone frame is never blocked by the limit") {
  AcQueue queue(AccessCategory::kVoice, 500);
  queue.push_tail(make_frame(60, 3));
  Ampdu a = build_ampdu(queue, kMinAmpduBytes, 3);
  CHECK(a.subframes.size() == 1);

  // Even when the single MPDU alone exceeds the limit.
  AcQueue q2(AccessCategory::kBestEffort, 500);
  q2.push_tail(make_frame(3000, 3));
  Ampdu b = build_ampdu(q2, kMinAmpduBytes, 3);
  CHECK(b.subframes.size() == 1);
  CHECK(b.total_bytes > kMinAmpduBytes);
}

TEST_CASE("subframe count caps at 64") {
  AcQueue queue(AccessCategory::kBestEffort, 500);
  for (int i = 0; i < 200; ++i) queue.push_tail(make_frame(40, 1, 0, i));  // 80 B subframes
  Ampdu a = build_ampdu(queue, kMaxAmpduBytes, 1);
  CHECK(a.subframes.size() == kMaxSubframes);
  CHECK(a.total_bytes == 64 * subframe_bytes(74));
}

TEST_CASE("packing skips frames for other destinations") {
  AcQueue queue(AccessCategory::kBestEffort, 500);
  queue.push_tail(make_frame(1500, 1, 0, 0));
  queue.push_tail(make_frame(1500, 2, 1, 0));
  queue.push_tail(make_frame(1500, 1, 0, 1));
  Ampdu a = build_ampdu(queue, kMaxAmpduBytes, 1);
  CHECK(a.subframes.size() == 2);
  CHECK(a.subframes[0].app_seq == 0);
  CHECK(a.subframes[1].app_seq == 1);
  REQUIRE(queue.size() == 1);
  CHECK(queue.front().destination == 2);
}

TEST_CASE("requeue_front restores frames at the head in order") {
  AcQueue queue(AccessCategory::kBestEffort, 500);
  queue.push_tail(make_frame(100, 1, 0, 10));
  Ampdu a;
  a.destination = 1;
  a.subframes.push_back(make_frame(100, 1, 0, 3));
  a.subframes.push_back(make_frame(100, 1, 0, 4));
  requeue_front(queue, std::move(a));
  REQUIRE(queue.size() == 3);
  CHECK(queue.frames()[0].app_seq == 3);
  CHECK(queue.frames()[1].app_seq == 4);
  CHECK(queue.frames()[2].app_seq == 10);

  // A retransmission re-packed next goes to the front of the aggregate.
  Ampdu next = build_ampdu(queue, kMaxAmpduBytes, 1);
  CHECK(next.subframes.front().app_seq == 3);
}

TEST_CASE("queue capacity: tail pushes drop, head pushes do not") {
  AcQueue queue(AccessCategory::kBestEffort, 2);
  CHECK(queue.push_tail(make_frame(100, 1)));
  CHECK(queue.push_tail(make_frame(100, 1)));
  CHECK_FALSE(queue.push_tail(make_frame(100, 1)));
  CHECK(queue.tail_drops() == 1);
  queue.push_head(make_frame(100, 1));  // retransmissions never drop
  CHECK(queue.size() == 3);
}

TEST_CASE("VHT airtime oracle") {
  const McsTable table = McsTable::vht20();
  // 40 us preamble + 4 us * ceil((16 + 8B + 6) / N_DBPS), evaluated by hand.
  CHECK(vht_tx_duration(65535, table.at(7)) == microseconds(8108));
  CHECK(vht_tx_duration(60, table.at(0)) == microseconds(120));

  SUBCASE("non-decreasing in size at fixed MCS") {
    for (int b = 100; b < 4000; b += 37) {
      CHECK(vht_tx_duration(b + 13, table.at(4)) >= vht_tx_duration(b, table.at(4)));
    }
  }
}

TEST_CASE("legacy control frame airtime at 6 Mbit/s") {
  CHECK(legacy_tx_duration(kRtsBytes) == microseconds(52));
  CHECK(legacy_tx_duration(kCtsBytes) == microseconds(44));
  CHECK(legacy_tx_duration(kBlockAckBytes) == microseconds(68));
}

TEST_CASE("EDCA access timing") {
  const EdcaParams edca;
  SUBCASE("zero backoff means access after exactly AIFS") {
    CHECK(contention_delay(edca, AccessCategory::kVoice, 0) == microseconds(34));
    CHECK(contention_delay(edca, AccessCategory::kBestEffort, 0) == microseconds(43));
  }
  SUBCASE("with equal draws the voice AC wins") {
    for (int b = 0; b < 4; ++b) {
      CHECK(contention_delay(edca, AccessCategory::kVoice, b) <
            contention_delay(edca, AccessCategory::kBestEffort, b));
    }
  }
  SUBCASE("k consecutive failures: cw = min(cw_max, (cw_min+1)*2^k - 1)") {
    for (AccessCategory ac : {AccessCategory::kVoice, AccessCategory::kBestEffort}) {
      const EdcaAcParams& p = edca.of(ac);
      int cw = p.cw_min;
      for (int k = 1; k <= 10; ++k) {
        cw = next_cw(p, cw);
        const long long closed_form = std::min<long long>(p.cw_max, ((p.cw_min + 1LL) << k) - 1);
        CHECK(cw == closed_form);
      }
    }
  }
}
