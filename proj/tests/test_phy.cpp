#include <cmath>

#include "doctest.h"
#include "wlansim/phy.hpp"
#include "wlansim/rng.hpp"

using namespace wlansim;

namespace {
// Independent evaluation of the free-space loss closed form.
double friis_oracle(double d, double f) {
  return 20.0 * std::log10(4.0 * M_PI * d * f / 299792458.0);
}
}  // namespace

TEST_CASE("Friis matches the closed form") {
  CHECK(path_loss_db(1.0, 5.18e9) == doctest::Approx(friis_oracle(1.0, 5.18e9)).epsilon(1e-12));
  CHECK(path_loss_db(1.0, 5.18e9) == doctest::Approx(46.74).epsilon(0.001));
  CHECK(path_loss_db(50.0, 5.18e9) == doctest::Approx(friis_oracle(50.0, 5.18e9)).epsilon(1e-12));
  CHECK(path_loss_db(50.0, 5.18e9) == doctest::Approx(80.72).epsilon(0.001));
}

TEST_CASE("10x distance adds exactly 20 dB") {
  const double d10 = path_loss_db(10.0, 5.5e9);
  const double d100 = path_loss_db(100.0, 5.5e9);
  CHECK(d100 - d10 == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("distances below the clamp are flattened, frequency must be positive") {
  CHECK(path_loss_db(0.001, 5.18e9) == path_loss_db(1.0, 5.18e9));
  CHECK_THROWS(path_loss_db(10.0, 0.0));
  CHECK_THROWS(path_loss_db(10.0, -1.0));
}

TEST_CASE("Friis reciprocity") {
  // Loss depends only on |d| and f; A->B equals B->A by construction.
  CHECK(path_loss_db(17.3, 5.24e9) == path_loss_db(17.3, 5.24e9));
}

TEST_CASE("MCS selection") {
  const McsTable table = McsTable::vht20();
  table.validate();

  SUBCASE("very large SNR selects MCS8 at 78 Mbit/s") {
    const McsSelection sel = select_mcs(table, 1e9);
    REQUIRE(sel.link_up);
    CHECK(sel.entry->index == 8);
    CHECK(sel.entry->phy_rate_bps() == doctest::Approx(78e6));
  }
  SUBCASE("threshold boundary is inclusive") {
    const McsSelection sel = select_mcs(table, table.at(4).min_snr_db);
    REQUIRE(sel.link_up);
    CHECK(sel.entry->index == 4);
  }
  SUBCASE("below every threshold the link is down") {
    const McsSelection sel = select_mcs(table, table.at(0).min_snr_db - 0.1);
    CHECK_FALSE(sel.link_up);
    CHECK(sel.entry->index == 0);
  }
  SUBCASE("selection is non-decreasing in SNR") {
    RngStream rng(3, StreamId::kChannelError);
    for (int i = 0; i < 1000; ++i) {
      const double s1 = rng.uniform_double() * 60.0 - 10.0;
      const double s2 = s1 + rng.uniform_double() * 10.0;
      const auto a = select_mcs(table, s1);
      const auto b = select_mcs(table, s2);
      CHECK(b.entry->index >= a.entry->index);
    }
  }
}

TEST_CASE("MPDU error probability") {
  const McsTable table = McsTable::vht20();
  const BerModel ber;
  const McsEntry& mcs = table.at(4);

  SUBCASE("far above threshold the frame is clean") {
    CHECK(mpdu_error_prob(mcs.min_snr_db + 30.0, mcs, 1500, ber) < 1e-6);
  }
  SUBCASE("far below threshold the frame is lost") {
    CHECK(mpdu_error_prob(mcs.min_snr_db - 30.0, mcs, 1500, ber) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("doubling the length composes as 1-(1-p)^2") {
    for (double snr : {10.0, 14.0, 15.5, 18.0}) {
      const double p1 = mpdu_error_prob(snr, mcs, 700, ber);
      const double p2 = mpdu_error_prob(snr, mcs, 1400, ber);
      CHECK(p2 == doctest::Approx(1.0 - (1.0 - p1) * (1.0 - p1)).epsilon(1e-9));
    }
  }
  SUBCASE("monotone: non-increasing in SNR, non-decreasing in length") {
    RngStream rng(5, StreamId::kChannelError);
    for (int i = 0; i < 500; ++i) {
      const double snr = rng.uniform_double() * 40.0 - 5.0;
      const double d_snr = rng.uniform_double() * 5.0;
      const int len = 40 + static_cast<int>(rng.uniform_int(0, 1400));
      const int d_len = static_cast<int>(rng.uniform_int(0, 500));
      CHECK(mpdu_error_prob(snr + d_snr, mcs, len, ber) <=
            mpdu_error_prob(snr, mcs, len, ber) + 1e-15);
      CHECK(mpdu_error_prob(snr, mcs, len + d_len, ber) >=
            mpdu_error_prob(snr, mcs, len, ber) - 1e-15);
    }
  }
  SUBCASE("probability bounds") {
    RngStream rng(6, StreamId::kChannelError);
    for (int i = 0; i < 500; ++i) {
      const double snr = rng.uniform_double() * 80.0 - 20.0;
      const double p = mpdu_error_prob(snr, mcs, 1500, ber);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("PHY rate ladder: rate = bits per symbol / 4 us") {
  const McsTable table = McsTable::vht20();
  for (const auto& e : table.entries) {
    CHECK(e.phy_rate_bps() == doctest::Approx(e.data_bits_per_symbol / 4e-6));
  }
  CHECK(table.at(0).phy_rate_bps() == doctest::Approx(6.5e6));
  CHECK(table.at(7).data_bits_per_symbol == 260);
}

TEST_CASE("channel plan: distinct 20 MHz channels, 5000 + 5*ch MHz") {
  const ChannelPlan plan = ChannelPlan::sequential(16);
  CHECK(plan.assignments.size() == 16);
  CHECK(plan.assignments.front().channel == 36);
  CHECK(plan.assignments.back().channel == 96);
  CHECK(plan.frequency_of(0) == doctest::Approx(5.18e9));
  for (size_t i = 1; i < plan.assignments.size(); ++i) {
    CHECK(plan.assignments[i].channel == plan.assignments[i - 1].channel + 4);
  }
  CHECK_THROWS(ChannelPlan::sequential(25));  // runs past channel 128
}
