#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlansim/sim_time.hpp"

namespace wlansim {

// One VHT MCS (20 MHz, 1 spatial stream, long guard interval).
struct McsEntry {
  int index = 0;
  std::string label;
  int data_bits_per_symbol = 0;  // N_DBPS for a 4 us OFDM symbol
  double min_snr_db = 0.0;       // lowest SNR at which this MCS is selected
  double phy_rate_bps() const { return data_bits_per_symbol / 4e-6; }
};

struct McsTable {
  std::vector<McsEntry> entries;

  // VHT MCS 0..8, 20 MHz, 1 SS, long GI (6.5 .. 78 Mbit/s).
  // SNR thresholds are configurable; these are conventional values for the
  // per-MCS sensitivity ladder.
  static McsTable vht20();

  const McsEntry& at(int index) const { return entries.at(static_cast<size_t>(index)); }
  void validate() const;  // throws on empty / non-monotone tables
};

struct McsSelection {
  const McsEntry* entry = nullptr;
  bool link_up = false;  // false: SNR below the MCS0 threshold, defer data
};

// Highest-index entry whose min_snr_db <= snr_db (inclusive boundary).
McsSelection select_mcs(const McsTable& table, double snr_db);

// Free-space Friis loss, 20*log10(4*pi*d*f/c). Distances below min_distance_m
// are clamped (singularity at d -> 0). Throws on non-positive frequency.
double path_loss_db(double distance_m, double frequency_hz, double min_distance_m = 1.0);

// Per-MCS bit error rate: logistic curve of SNR centered center_offset_db
// below the selection threshold. scale_db is the logistic scale; the 10-90%
// transition spans about 4.4 * scale_db.
struct BerModel {
  double center_offset_db = 3.0;
  double scale_db = 0.25;

  double bit_error_rate(double snr_db, const McsEntry& mcs) const;
};

// p = 1 - (1 - ber)^(8*length_bytes)
double mpdu_error_prob(double snr_db, const McsEntry& mcs, int length_bytes,
                       const BerModel& ber);

// VHT PPDU airtime: 40 us preamble + 4 us symbols over (SERVICE + payload +
// tail) bits.
SimTime vht_tx_duration(int total_bytes, const McsEntry& mcs);

// Legacy (non-HT) OFDM at 6 Mbit/s for control frames: 20 us preamble,
// 24 data bits per 4 us symbol.
SimTime legacy_tx_duration(int bytes);

// Radio/link-budget parameters shared by every device in a scenario.
struct RadioParams {
  double tx_power_dbm = 16.0;
  double noise_floor_dbm = -94.0;  // -174 dBm/Hz + 10log10(20 MHz) + 7 dB NF
  double min_distance_m = 1.0;
  BerModel ber;
  McsTable mcs = McsTable::vht20();

  double snr_db(double distance_m, double frequency_hz) const {
    return tx_power_dbm - path_loss_db(distance_m, frequency_hz, min_distance_m) -
           noise_floor_dbm;
  }
};

// 20 MHz channel numbers in 36..128 (step 4), one distinct channel per AP so
// contention is intra-BSS only.
struct ChannelPlan {
  struct Assignment {
    int ap = 0;
    int channel = 0;
    double frequency_hz = 0.0;
  };
  std::vector<Assignment> assignments;

  static ChannelPlan sequential(int ap_count, int first_channel = 36);
  double frequency_of(int ap) const { return assignments.at(static_cast<size_t>(ap)).frequency_hz; }
};

constexpr double channel_frequency_hz(int channel) {
  return (5000.0 + 5.0 * channel) * 1e6;
}

}  // namespace wlansim
