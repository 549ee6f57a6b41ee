#include <map>
#include <memory>
#include <set>
#include <vector>

#include "doctest.h"
#include "wlansim/tcp.hpp"

using namespace wlansim;

TEST_CASE("New Reno window rules") {
  SUBCASE("slow start: +1 per new ACK") { CHECK(cwnd_after_ack(2, 64) == doctest::Approx(3.0)); }
  SUBCASE("congestion avoidance: +1/cwnd per new ACK") {
    CHECK(cwnd_after_ack(10, 10) == doctest::Approx(10.1));
  }
  SUBCASE("fast retransmit: halve and inflate by 3") {
    const WindowCut cut = fast_retransmit_cut(16);
    CHECK(cut.ssthresh == doctest::Approx(8.0));
    CHECK(cut.cwnd == doctest::Approx(11.0));
  }
  SUBCASE("timeout: ssthresh = max(cwnd/2, 2), cwnd = 1") {
    CHECK(timeout_cut(20).ssthresh == doctest::Approx(10.0));
    CHECK(timeout_cut(20).cwnd == doctest::Approx(1.0));
    CHECK(timeout_cut(1).ssthresh == doctest::Approx(2.0));
    CHECK(timeout_cut(1).cwnd == doctest::Approx(1.0));
  }
  SUBCASE("RTO doubles up to the 60 s cap") {
    SimTime rto = seconds(1);
    for (int i = 0; i < 3; ++i) rto = backed_off_rto(rto, seconds(60));
    CHECK(rto == seconds(8));
    for (int i = 0; i < 10; ++i) rto = backed_off_rto(rto, seconds(60));
    CHECK(rto == seconds(60));
  }
}

namespace {

// Loopback harness: a perfect 1 ms "WLAN" between AP and station, with a
// hook to blackhole chosen sequences.
struct Harness {
  EventQueue engine;
  TcpParams params;
  std::unique_ptr<TcpFlow> flow;
  std::set<std::uint64_t> blackhole;        // data seqs dropped once
  std::uint64_t mac_delivered = 0;
  std::uint64_t flight_high_water = 0;

  explicit Harness(TcpParams p = {}) : params(p) {
    params.initial_ssthresh = 64;  // keep slow start bounded in the harness
    TcpFlow::Hooks hooks;
    hooks.deliver_data_to_ap = [this](Mpdu m) {
      // "WLAN" leg: 1 ms, in-order, lossless except blackholed seqs.
      if (blackhole.erase(m.app_seq)) return;
      engine.schedule(engine.now() + milliseconds(1), [this, m] {
        ++mac_delivered;
        flow->on_segment_delivered(m.app_seq);
      });
    };
    hooks.enqueue_ack_at_sta = [this](Mpdu m) {
      engine.schedule(engine.now() + milliseconds(1),
                      [this, m] { flow->on_ack_reaches_ap(m.app_seq); });
    };
    flow = std::make_unique<TcpFlow>(0, 1, 0, params, engine, std::move(hooks));
  }
};

}  // namespace

TEST_CASE("lossless path: slow start grows and delivery is gapless") {
  Harness h;
  h.flow->start();
  h.engine.run_until(milliseconds(500));
  // RTT = 2*10 ms wired + 2 ms loop; ~20 round trips in 500 ms.
  CHECK(h.flow->unique_segments_delivered() > 100);  // exponential growth kicked in
  CHECK(h.flow->cwnd() > 10.0);
  CHECK(h.flow->unique_segments_delivered() == h.mac_delivered);  // no duplicates needed
}

TEST_CASE("a single hole triggers fast retransmit and recovery") {
  Harness h;
  h.blackhole.insert(20);
  h.flow->start();
  h.engine.run_until(seconds(2));
  // The hole is repaired by fast retransmit (well before any 1 s RTO) and
  // the transfer keeps going.
  CHECK(h.flow->unique_segments_delivered() > 200);
  // ssthresh cut happened: cwnd restarted from roughly half, not from 1.
  CHECK(h.flow->cwnd() > 2.0);
}

TEST_CASE("total blackout triggers RTO and slow-start recovery") {
  Harness h;
  for (std::uint64_t s = 2; s < 2000; ++s) h.blackhole.insert(s);  // eat first copies
  h.flow->start();
  // Before the 1 s initial RTO the transfer is stalled on the eaten segments.
  h.engine.run_until(milliseconds(900));
  const auto delivered_before = h.flow->unique_segments_delivered();
  CHECK(delivered_before <= 4);
  // The RTO retransmission (second copies pass) restarts the flow.
  h.engine.run_until(seconds(4));
  CHECK(h.flow->unique_segments_delivered() > delivered_before + 50);
}

TEST_CASE("in-flight data never exceeds cwnd") {
  // Count outstanding-at-send against cwnd via a tap on the data hook.
  EventQueue engine;
  TcpParams params;
  std::unique_ptr<TcpFlow> flow;
  std::uint64_t outstanding = 0;
  bool violated = false;

  TcpFlow::Hooks hooks;
  hooks.deliver_data_to_ap = [&](Mpdu m) {
    ++outstanding;
    if (static_cast<double>(outstanding) > flow->cwnd() + 1e-9) violated = true;
    engine.schedule(engine.now() + milliseconds(1), [&, m] {
      --outstanding;
      flow->on_segment_delivered(m.app_seq);
    });
  };
  hooks.enqueue_ack_at_sta = [&](Mpdu m) {
    engine.schedule(engine.now() + milliseconds(1),
                    [&, m] { flow->on_ack_reaches_ap(m.app_seq); });
  };
  flow = std::make_unique<TcpFlow>(0, 1, 0, params, engine, std::move(hooks));
  flow->start();
  engine.run_until(seconds(1));
  CHECK_FALSE(violated);
}
