#include "wlansim/phy.hpp"

#include <cmath>
#include <stdexcept>

namespace wlansim {

namespace {
constexpr double kSpeedOfLight = 299'792'458.0;
constexpr int kServiceBits = 16;
constexpr int kTailBits = 6;
}  // namespace

McsTable McsTable::vht20() {
  McsTable t;
  t.entries = {
      {0, "BPSK 1/2", 26, 2.0},    {1, "QPSK 1/2", 52, 5.0},
      {2, "QPSK 3/4", 78, 9.0},    {3, "16-QAM 1/2", 104, 11.0},
      {4, "16-QAM 3/4", 156, 15.0}, {5, "64-QAM 2/3", 208, 18.0},
      {6, "64-QAM 3/4", 234, 20.0}, {7, "64-QAM 5/6", 260, 25.0},
      {8, "256-QAM 3/4", 312, 29.0},
  };
  return t;
}

void McsTable::validate() const {
  if (entries.empty()) throw std::invalid_argument("MCS table is empty");
  for (size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].data_bits_per_symbol <= entries[i - 1].data_bits_per_symbol ||
        entries[i].min_snr_db <= entries[i - 1].min_snr_db) {
      throw std::invalid_argument("MCS table must be strictly increasing in rate and SNR");
    }
  }
}

McsSelection select_mcs(const McsTable& table, double snr_db) {
  McsSelection sel;
  sel.entry = &table.entries.front();
  for (const auto& e : table.entries) {
    if (e.min_snr_db <= snr_db) {
      sel.entry = &e;
      sel.link_up = true;
    }
  }
  return sel;
}

double path_loss_db(double distance_m, double frequency_hz, double min_distance_m) {
  if (frequency_hz <= 0.0) throw std::invalid_argument("non-positive carrier frequency");
  const double d = std::max(distance_m, min_distance_m);
  return 20.0 * std::log10(4.0 * M_PI * d * frequency_hz / kSpeedOfLight);
}

double BerModel::bit_error_rate(double snr_db, const McsEntry& mcs) const {
  const double center = mcs.min_snr_db - center_offset_db;
  return 0.5 / (1.0 + std::exp((snr_db - center) / scale_db));
}

double mpdu_error_prob(double snr_db, const McsEntry& mcs, int length_bytes,
                       const BerModel& ber) {
  if (length_bytes <= 0) throw std::invalid_argument("non-positive MPDU length");
  const double p_bit = ber.bit_error_rate(snr_db, mcs);
  const double bits = 8.0 * length_bytes;
  // 1 - (1-p)^n, numerically stable for tiny p.
  return -std::expm1(bits * std::log1p(-p_bit));
}

SimTime vht_tx_duration(int total_bytes, const McsEntry& mcs) {
  const std::int64_t bits = kServiceBits + 8LL * total_bytes + kTailBits;
  const std::int64_t symbols = (bits + mcs.data_bits_per_symbol - 1) / mcs.data_bits_per_symbol;
  return microseconds(40 + 4 * symbols);
}

SimTime legacy_tx_duration(int bytes) {
  const std::int64_t bits = kServiceBits + 8LL * bytes + kTailBits;
  const std::int64_t symbols = (bits + 23) / 24;
  return microseconds(20 + 4 * symbols);
}

ChannelPlan ChannelPlan::sequential(int ap_count, int first_channel) {
  ChannelPlan plan;
  for (int ap = 0; ap < ap_count; ++ap) {
    const int channel = first_channel + 4 * ap;
    if (channel < 36 || channel > 128) {
      throw std::invalid_argument("channel " + std::to_string(channel) +
                                  " outside the 36..128 plan");
    }
    plan.assignments.push_back({ap, channel, channel_frequency_hz(channel)});
  }
  return plan;
}

}  // namespace wlansim
