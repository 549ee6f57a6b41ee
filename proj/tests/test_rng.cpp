#include <set>
#include <vector>

#include "doctest.h"
#include "wlansim/rng.hpp"

using namespace wlansim;

TEST_CASE("identical (seed, stream) reproduces identical draws") {
  RngStream a(42, StreamId::kBackoff);
  RngStream b(42, StreamId::kBackoff);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams diverge") {
  RngStream a(42, StreamId::kBackoff);
  RngStream b(42, StreamId::kMobility);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    if (a.next_u64() == b.next_u64()) ++equal;
  }
  CHECK(equal == 0);
}

TEST_CASE("distinct seeds diverge") {
  RngStream a(1, StreamId::kChannelError);
  RngStream b(2, StreamId::kChannelError);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    if (a.next_u64() == b.next_u64()) ++equal;
  }
  CHECK(equal == 0);
}

TEST_CASE("uniform_int covers the inclusive range") {
  RngStream r(7, StreamId::kBackoff);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.uniform_int(0, 7);
    CHECK(v >= 0);
    CHECK(v <= 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 8);  // all values of a small range appear
}

TEST_CASE("uniform_double stays in [0, 1)") {
  RngStream r(11, StreamId::kTrafficOffsets);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double v = r.uniform_double();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    sum += v;
  }
  CHECK(sum / 10000 == doctest::Approx(0.5).epsilon(0.05));
}
